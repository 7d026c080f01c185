#include "gloss/subspace_search.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "gloss/csv_io.hpp"
#include "gloss/parallel.hpp"
#include "gloss/rng.hpp"

namespace gloss {

namespace {

/// Per-feature sort orders, computed once per search and shared by every
/// contrast evaluation. order[f] lists point ids by ascending (value, id);
/// sorted_values[f] is the matching value sequence (the full marginal).
struct RankIndex {
    std::vector<std::vector<Index>> order;
    std::vector<std::vector<Scalar>> sorted_values;
};

RankIndex build_ranks(const Matrix& values) {
    const Index n = values.rows();
    const Index d = values.cols();
    RankIndex ranks;
    ranks.order.resize(static_cast<std::size_t>(d));
    ranks.sorted_values.resize(static_cast<std::size_t>(d));
    parallel_for(static_cast<std::size_t>(d), [&](std::size_t f) {
        auto& ord = ranks.order[f];
        ord.resize(static_cast<std::size_t>(n));
        std::iota(ord.begin(), ord.end(), Index(0));
        const Index col = static_cast<Index>(f);
        std::sort(ord.begin(), ord.end(), [&](Index a, Index b) {
            if (values(a, col) != values(b, col)) return values(a, col) < values(b, col);
            return a < b;
        });
        auto& sv = ranks.sorted_values[f];
        sv.resize(static_cast<std::size_t>(n));
        for (std::size_t r = 0; r < sv.size(); ++r) sv[r] = values(ord[r], col);
    });
    return ranks;
}

/// Order-free identity of a subspace, used to label its RNG substream.
std::uint64_t subspace_label(const Subspace& sub) {
    std::uint64_t h = static_cast<std::uint64_t>(sub.size());
    for (const Index f : sub.features()) h = mix_seed(h, static_cast<std::uint64_t>(f));
    return h;
}

Scalar contrast_with_ranks(const Matrix& values, const Subspace& sub, const SearchParams& params,
                           const RankIndex& ranks) {
    const Index n = values.rows();
    const Index d = values.cols();
    if (d < 2) throw std::invalid_argument("contrast requires at least two features");
    if (params.mode == SearchMode::HiCS && sub.size() < 2)
        throw std::invalid_argument("contrast in paired mode requires at least two features in "
                                    "the candidate");
    if (!sub.valid_for(d)) throw std::invalid_argument("subspace " + sub.to_string() + " out of range");

    const Index cond_size = params.mode == SearchMode::HiCS ? sub.size() - 1 : d - 1;
    const Scalar keep_frac = std::pow(params.alpha, Scalar(1) / static_cast<Scalar>(cond_size));
    // "keep this fraction of points" as a window length, at least one point
    const Index w = std::clamp<Index>(
        static_cast<Index>(std::llround(keep_frac * static_cast<Scalar>(n))), 1, n);

    std::vector<char> keep(static_cast<std::size_t>(n));
    std::vector<Index> cond;
    cond.reserve(static_cast<std::size_t>(cond_size));
    std::vector<Scalar> slice;
    slice.reserve(static_cast<std::size_t>(w));

    Scalar total = 0;
    int successes = 0;
    for (int iter = 0; iter < params.monte_carlo_iters; ++iter) {
        // Iterations are labelled (seed, subspace, iteration), so the result
        // is identical whether candidates run sequentially or in parallel.
        Rng rng(substream(params.seed, {subspace_label(sub), static_cast<std::uint64_t>(iter)}));

        const Index f = sub[static_cast<Index>(rng.below(static_cast<std::uint64_t>(sub.size())))];
        cond.clear();
        if (params.mode == SearchMode::HiCS) {
            for (const Index z : sub.features())
                if (z != f) cond.push_back(z);
        } else {
            for (Index z = 0; z < d; ++z)
                if (z != f) cond.push_back(z);
        }

        bool have_slice = false;
        for (int attempt = 0; attempt < 10 && !have_slice; ++attempt) {
            std::fill(keep.begin(), keep.end(), char(1));
            for (const Index z : cond) {
                // Clearing the ranks OUTSIDE the window costs O(n - w) per
                // attribute, which is what makes wide conditioning sets
                // (keep_frac near 1) cheap.
                const auto& ord = ranks.order[static_cast<std::size_t>(z)];
                const Index start =
                    static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - w + 1)));
                for (Index r = 0; r < start; ++r) keep[static_cast<std::size_t>(ord[r])] = 0;
                for (Index r = start + w; r < n; ++r) keep[static_cast<std::size_t>(ord[r])] = 0;
            }
            slice.clear();
            for (const Index id : ranks.order[static_cast<std::size_t>(f)])
                if (keep[static_cast<std::size_t>(id)]) slice.push_back(values(id, f));
            have_slice = !slice.empty();
        }
        if (!have_slice) continue; // skipped iteration; the mean shrinks to the rest

        total += ks_statistic(ranks.sorted_values[static_cast<std::size_t>(f)], slice);
        ++successes;
    }
    return successes == 0 ? Scalar(0) : total / static_cast<Scalar>(successes);
}

bool better_candidate(const ContrastedSubspace& a, const ContrastedSubspace& b) {
    if (a.contrast != b.contrast) return a.contrast > b.contrast;
    return a.subspace < b.subspace;
}

} // namespace

SearchMode parse_search_mode(const std::string& name) {
    if (name == "hics") return SearchMode::HiCS;
    if (name == "gloss-global" || name == "global") return SearchMode::GlossGlobal;
    throw std::invalid_argument("unknown search mode: " + name);
}

void SearchParams::validate() const {
    if (monte_carlo_iters < 1) throw std::invalid_argument("monte_carlo_iters must be >= 1");
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must be in (0, 1)");
    if (candidate_cutoff < 1) throw std::invalid_argument("candidate_cutoff must be >= 1");
    if (max_subspaces < 1) throw std::invalid_argument("max_subspaces must be >= 1");
    if (level_cap < 1) throw std::invalid_argument("level_cap must be >= 1");
}

Scalar ks_statistic(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    const Scalar na = static_cast<Scalar>(a.size());
    const Scalar nb = static_cast<Scalar>(b.size());
    std::size_t i = 0, j = 0;
    Scalar best = 0;
    while (i < a.size() && j < b.size()) {
        const Scalar x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        best = std::max(best,
                        std::abs(static_cast<Scalar>(i) / na - static_cast<Scalar>(j) / nb));
    }
    // Once one sample is exhausted its ECDF is 1; the gap can only shrink as
    // the other catches up, so the remaining tail never raises the supremum
    // beyond the value at the crossing just handled.
    if (i < a.size()) best = std::max(best, std::abs(1 - static_cast<Scalar>(j) / nb));
    if (j < b.size()) best = std::max(best, std::abs(static_cast<Scalar>(i) / na - 1));
    return best;
}

Scalar contrast(const Dataset& data, const Subspace& sub, const SearchParams& params) {
    params.validate();
    return contrast_with_ranks(data.values, sub, params, build_ranks(data.values));
}

std::vector<ContrastedSubspace> search_subspaces(const Dataset& data, const SearchParams& params) {
    params.validate();
    const Index d = data.dims();
    if (d < 2) throw std::invalid_argument("subspace search requires at least two features");
    const RankIndex ranks = build_ranks(data.values);

    std::vector<Subspace> level;
    if (params.mode == SearchMode::HiCS) {
        for (Index i = 0; i < d; ++i)
            for (Index j = i + 1; j < d; ++j) level.push_back(Subspace{{i, j}});
    } else {
        for (Index i = 0; i < d; ++i) level.push_back(Subspace{{i}});
    }
    Index level_size = params.mode == SearchMode::HiCS ? 2 : 1;

    std::vector<ContrastedSubspace> pool;
    while (!level.empty() && level_size <= params.level_cap) {
        std::vector<ContrastedSubspace> scored;
        scored.reserve(level.size());
        for (auto& s : level) scored.push_back({std::move(s), 0});
        parallel_for(scored.size(), [&](std::size_t c) {
            scored[c].contrast =
                contrast_with_ranks(data.values, scored[c].subspace, params, ranks);
        });
        std::sort(scored.begin(), scored.end(), better_candidate);
        const std::size_t kept =
            std::min(scored.size(), static_cast<std::size_t>(params.candidate_cutoff));

        level.clear();
        for (std::size_t c = 0; c < kept; ++c) {
            const IndexVector& f = scored[c].subspace.features();
            for (Index next = f.back() + 1; next < d; ++next) {
                IndexVector ext = f;
                ext.push_back(next);
                level.push_back(Subspace{std::move(ext)});
            }
        }
        ++level_size;
        // Everything scored competes in the final ranking, not only the kept
        // candidates that seed the next level.
        pool.insert(pool.end(), std::make_move_iterator(scored.begin()),
                    std::make_move_iterator(scored.end()));
    }

    std::sort(pool.begin(), pool.end(), better_candidate);
    if (pool.size() > static_cast<std::size_t>(params.max_subspaces))
        pool.erase(pool.begin() + params.max_subspaces, pool.end());
    return pool;
}

void write_contrast_csv(const std::vector<ContrastedSubspace>& ranked, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "subspace,contrast\n";
    for (const auto& cs : ranked)
        out << cs.subspace.to_string() << ',' << format_value(cs.contrast) << '\n';
}

} // namespace gloss
