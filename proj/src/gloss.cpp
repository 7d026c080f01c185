#include "gloss/gloss.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "gloss/csv_io.hpp"
#include "gloss/parallel.hpp"

namespace gloss {

namespace {

Scalar factor_from_pdists(Scalar own, Scalar neighbor_mean) {
    if (neighbor_mean == 0) return own == 0 ? Scalar(0) : kLargeFactor;
    return own / neighbor_mean - 1;
}

} // namespace

Index ScoreMatrix::best_subspace(Index point) const {
    Index best = 0;
    for (Index c = 1; c < per_subspace.cols(); ++c)
        if (per_subspace(point, c) > per_subspace(point, best)) best = c;
    return best;
}

Scalar extended_standard_distance(Index d, const Subspace& sub,
                                  std::span<const Neighbor> global_nn, const Dataset& data,
                                  DistanceMetric metric) {
    if (global_nn.empty())
        throw std::invalid_argument("extended_standard_distance: empty neighbourhood");
    Scalar acc = 0;
    for (const auto& e : global_nn) {
        const Scalar dist = distance_in_subspace(data.values, d, e.id, sub.features(), metric);
        acc += dist * dist;
    }
    return std::sqrt(acc / static_cast<Scalar>(global_nn.size()));
}

Scalar pglof(Index d, const Subspace& sub, const NeighborhoodTable& table, const Dataset& data,
             const LoopParams& params) {
    const auto nb = table.of(d);
    const Scalar own =
        params.lambda * extended_standard_distance(d, sub, nb, data, params.metric);
    Scalar mean = 0;
    for (const auto& e : nb)
        mean += params.lambda *
                extended_standard_distance(e.id, sub, table.of(e.id), data, params.metric);
    mean /= static_cast<Scalar>(nb.size());
    return factor_from_pdists(own, mean);
}

ScoreMatrix gloss(const Dataset& data, const LoopParams& params,
                  const std::optional<std::vector<Subspace>>& subspaces,
                  const std::optional<SearchParams>& search_cfg) {
    std::vector<Subspace> subs;
    if (subspaces) {
        if (subspaces->empty()) throw std::invalid_argument("gloss: empty subspace list");
        subs = *subspaces;
    } else if (search_cfg) {
        for (auto& cs : search_subspaces(data, *search_cfg)) subs.push_back(std::move(cs.subspace));
        if (subs.empty()) throw std::invalid_argument("gloss: subspace search found nothing");
    } else {
        throw std::invalid_argument("gloss: need either subspaces or a search configuration");
    }
    for (const auto& s : subs)
        if (!s.valid_for(data.dims()))
            throw std::invalid_argument("subspace " + s.to_string() + " out of range");

    // The single global neighbourhood table every subspace score reuses.
    const auto table = knn_table(data, params.k, params.metric);
    const Index n = data.n();

    ScoreMatrix result;
    result.subspaces = std::move(subs);
    result.per_subspace.resize(n, static_cast<Index>(result.subspaces.size()));

    std::vector<Scalar> pdists(static_cast<std::size_t>(n));
    std::vector<Scalar> factors(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < result.subspaces.size(); ++c) {
        const Subspace& sub = result.subspaces[c];
        parallel_for(n, [&](Index i) {
            pdists[static_cast<std::size_t>(i)] =
                params.lambda *
                extended_standard_distance(i, sub, table.of(i), data, params.metric);
        });
        parallel_for(n, [&](Index i) {
            const auto nb = table.of(i);
            Scalar mean = 0;
            for (const auto& e : nb) mean += pdists[static_cast<std::size_t>(e.id)];
            mean /= static_cast<Scalar>(nb.size());
            factors[static_cast<std::size_t>(i)] =
                factor_from_pdists(pdists[static_cast<std::size_t>(i)], mean);
        });
        // Normalisation is per subspace, so columns are comparable even when
        // factor spreads differ across subspaces.
        result.per_subspace.col(static_cast<Index>(c)) =
            factor_probabilities(factors, nplof(factors, params.lambda));
    }

    result.aggregate = result.per_subspace.rowwise().maxCoeff();
    return result;
}

Vector aggregate_max(const ScoreMatrix& m) { return m.per_subspace.rowwise().maxCoeff(); }

void write_gloss_csv(const Dataset& data, const ScoreMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "point_id,aggregate_score,best_subspace\n";
    for (Index i = 0; i < data.n(); ++i)
        out << data.row_ids[static_cast<std::size_t>(i)] << ',' << format_value(m.aggregate(i))
            << ',' << m.subspaces[static_cast<std::size_t>(m.best_subspace(i))].to_string()
            << '\n';
}

void write_score_matrix_csv(const Dataset& data, const ScoreMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "point_id";
    for (const auto& s : m.subspaces) out << ',' << s.to_string();
    out << '\n';
    for (Index i = 0; i < data.n(); ++i) {
        out << data.row_ids[static_cast<std::size_t>(i)];
        for (Index c = 0; c < m.per_subspace.cols(); ++c)
            out << ',' << format_value(m.per_subspace(i, c));
        out << '\n';
    }
}

} // namespace gloss
