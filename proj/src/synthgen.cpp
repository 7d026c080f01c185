#include "gloss/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "gloss/rng.hpp"

namespace gloss {

namespace {

// Substream labels: each randomised stage draws from its own stream so that
// changing one stage (e.g. the implant count) never shifts another.
constexpr std::uint64_t kCentersStream = 1;
constexpr std::uint64_t kAssignmentStream = 2;
constexpr std::uint64_t kNoiseStream = 3;
constexpr std::uint64_t kImplantStream = 4;

/// First `count` entries of a uniformly random permutation of [0, n).
IndexVector sample_distinct(Index n, Index count, Rng& rng) {
    IndexVector ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), Index(0));
    for (Index i = 0; i < count; ++i) {
        const Index j =
            i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
    }
    ids.resize(static_cast<std::size_t>(count));
    return ids;
}

/// Implant subspace size: uniform on [2, max(2, floor(0.1 * d))].
Subspace draw_subspace(Index d, Index max_size, Rng& rng) {
    const Index hi = std::max<Index>(2, max_size);
    const Index size = 2 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(hi - 2 + 1)));
    return Subspace{sample_distinct(d, size, rng)};
}

} // namespace

void SynthConfig::validate() const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (dims < 2) throw std::invalid_argument("dims must be >= 2");
    if (n_clusters < 2) throw std::invalid_argument("n_clusters must be >= 2");
    if (!(sigma2 > 0)) throw std::invalid_argument("sigma2 must be > 0");
    if (mu_upper < 0) throw std::invalid_argument("mu_upper must be >= 0");
    if (n_outliers < 0) throw std::invalid_argument("n_outliers must be >= 0");
    if (n_outliers >= n) throw std::invalid_argument("n_outliers must be < n");
}

Mixture generate_mixture(const SynthConfig& cfg) {
    cfg.validate();
    const Scalar sigma = std::sqrt(cfg.sigma2);

    Mixture mix;
    mix.centers.resize(cfg.n_clusters, cfg.dims);
    Rng centers_rng(substream(cfg.seed, {kCentersStream}));
    for (Index c = 0; c < cfg.n_clusters; ++c)
        for (Index j = 0; j < cfg.dims; ++j) mix.centers(c, j) = centers_rng.uniform(0, cfg.mu_upper);

    mix.assignment.resize(static_cast<std::size_t>(cfg.n));
    Rng assign_rng(substream(cfg.seed, {kAssignmentStream}));
    for (auto& a : mix.assignment)
        a = static_cast<Index>(assign_rng.below(static_cast<std::uint64_t>(cfg.n_clusters)));

    Matrix values(cfg.n, cfg.dims);
    Rng noise_rng(substream(cfg.seed, {kNoiseStream}));
    for (Index i = 0; i < cfg.n; ++i) {
        const Index c = mix.assignment[static_cast<std::size_t>(i)];
        for (Index j = 0; j < cfg.dims; ++j) values(i, j) = noise_rng.normal(mix.centers(c, j), sigma);
    }
    mix.data = make_dataset(std::move(values));
    return mix;
}

Dataset implant_synthetic_outliers(const Mixture& mixture, const SynthConfig& cfg) {
    cfg.validate();
    if (mixture.data.n() != cfg.n || mixture.data.dims() != cfg.dims)
        throw std::invalid_argument("mixture does not match the configuration");
    const Scalar sigma = std::sqrt(cfg.sigma2);

    Dataset out = mixture.data;
    out.labels = BoolArray::Constant(cfg.n, false);

    Rng rng(substream(cfg.seed, {kImplantStream}));
    for (const Index o : sample_distinct(cfg.n, cfg.n_outliers, rng)) {
        const Subspace sub = draw_subspace(cfg.dims, cfg.dims / 10, rng);
        // Foreign cluster: uniform over the clusters other than the point's own.
        const Index own = mixture.assignment[static_cast<std::size_t>(o)];
        Index r = static_cast<Index>(rng.below(static_cast<std::uint64_t>(cfg.n_clusters - 1)));
        if (r >= own) ++r;
        for (const Index j : sub.features())
            out.values(o, j) = rng.normal(mixture.centers(r, j), sigma);
        (*out.labels)(o) = true;
    }
    return out;
}

Dataset generate_synthetic(const SynthConfig& cfg) {
    return implant_synthetic_outliers(generate_mixture(cfg), cfg);
}

Dataset implant_benchmark_outliers(const Dataset& data, Scalar fraction, std::uint64_t seed) {
    if (!data.class_col) throw std::invalid_argument("implantation requires a class column");
    if (!(fraction > 0 && fraction <= 1))
        throw std::invalid_argument("implant fraction must be in (0, 1]");
    const Index n = data.n();
    const Index d = data.dims();

    // Donor candidates per point: everyone of a different class.
    std::unordered_map<std::string, IndexVector> by_class;
    for (Index i = 0; i < n; ++i) by_class[(*data.class_col)[static_cast<std::size_t>(i)]].push_back(i);
    if (by_class.size() < 2) throw std::invalid_argument("implantation requires at least two classes");

    const Index count = static_cast<Index>(std::floor(fraction * static_cast<Scalar>(n)));

    Dataset out = data;
    out.labels = BoolArray::Constant(n, false);
    // Donor values are read from `data`, not `out`: an earlier implant never
    // propagates its new values when its row is later drawn as a donor.
    Rng rng(substream(seed, {kImplantStream}));
    for (const Index o : sample_distinct(n, count, rng)) {
        const Subspace sub = draw_subspace(d, d / 10, rng);
        IndexVector donors;
        donors.reserve(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i)
            if ((*data.class_col)[static_cast<std::size_t>(i)] !=
                (*data.class_col)[static_cast<std::size_t>(o)])
                donors.push_back(i);
        const Index donor =
            donors[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(donors.size())))];
        for (const Index j : sub.features()) out.values(o, j) = data.values(donor, j);
        (*out.labels)(o) = true;
    }
    return out;
}

BoolArray minority_class_labels(const Dataset& data) {
    if (!data.class_col) throw std::invalid_argument("minority labelling requires a class column");
    std::vector<std::string> seen_order;
    std::unordered_map<std::string, Index> counts;
    for (const auto& c : *data.class_col) {
        if (counts.find(c) == counts.end()) seen_order.push_back(c);
        ++counts[c];
    }
    std::string minority = seen_order.front();
    for (const auto& c : seen_order)
        if (counts[c] < counts[minority]) minority = c; // ties keep the earlier class

    BoolArray labels(data.n());
    for (Index i = 0; i < data.n(); ++i)
        labels(i) = (*data.class_col)[static_cast<std::size_t>(i)] == minority;
    return labels;
}

void write_synth_sidecar(const SynthConfig& cfg, const std::string& path) {
    nlohmann::json j;
    j["n"] = cfg.n;
    j["dims"] = cfg.dims;
    j["n_clusters"] = cfg.n_clusters;
    j["mu_upper"] = cfg.mu_upper;
    j["sigma2"] = cfg.sigma2;
    j["n_outliers"] = cfg.n_outliers;
    j["seed"] = cfg.seed;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(1) << '\n';
}

} // namespace gloss
