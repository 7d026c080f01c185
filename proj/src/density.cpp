#include "gloss/density.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gloss/parallel.hpp"

namespace gloss {

namespace {

/// lambda * sqrt(mean squared distance to the point's own neighbour list).
/// The table already stores those distances, so no vectors are re-touched.
Scalar own_pdist(const NeighborhoodTable& table, Index i, Scalar lambda) {
    const auto nb = table.of(i);
    Scalar acc = 0;
    for (const auto& e : nb) acc += e.distance * e.distance;
    return lambda * std::sqrt(acc / static_cast<Scalar>(nb.size()));
}

Scalar plof_from_pdists(Scalar own, Scalar neighbor_mean) {
    if (neighbor_mean == 0) return own == 0 ? Scalar(0) : kLargeFactor;
    return own / neighbor_mean - 1;
}

std::vector<Scalar> plof_values(const Dataset& data, const NeighborhoodTable& table,
                                const LoopParams& params) {
    const Index n = data.n();
    std::vector<Scalar> pdists(static_cast<std::size_t>(n));
    parallel_for(n, [&](Index i) {
        pdists[static_cast<std::size_t>(i)] = own_pdist(table, i, params.lambda);
    });

    std::vector<Scalar> plofs(static_cast<std::size_t>(n));
    parallel_for(n, [&](Index i) {
        const auto nb = table.of(i);
        Scalar mean = 0;
        for (const auto& e : nb) mean += pdists[static_cast<std::size_t>(e.id)];
        mean /= static_cast<Scalar>(nb.size());
        plofs[static_cast<std::size_t>(i)] =
            plof_from_pdists(pdists[static_cast<std::size_t>(i)], mean);
    });
    return plofs;
}

} // namespace

Scalar standard_distance(const RowVector& d, const Matrix& S, DistanceMetric metric) {
    if (S.rows() == 0) throw std::invalid_argument("standard_distance: empty reference set");
    Scalar acc = 0;
    for (Index r = 0; r < S.rows(); ++r) {
        const Scalar dist = distance(d, S.row(r), metric);
        acc += dist * dist;
    }
    return std::sqrt(acc / static_cast<Scalar>(S.rows()));
}

Scalar pdist(Scalar lambda, const RowVector& d, const Matrix& S, DistanceMetric metric) {
    return lambda * standard_distance(d, S, metric);
}

Scalar plof(Index d, const NeighborhoodTable& table, const Dataset& /*data*/,
            const LoopParams& params) {
    const auto nb = table.of(d);
    Scalar mean = 0;
    for (const auto& e : nb) mean += own_pdist(table, e.id, params.lambda);
    mean /= static_cast<Scalar>(nb.size());
    return plof_from_pdists(own_pdist(table, d, params.lambda), mean);
}

Scalar nplof(const std::vector<Scalar>& values, Scalar lambda) {
    if (values.empty()) throw std::invalid_argument("nplof: empty input");
    Scalar acc = 0;
    for (const Scalar v : values) acc += v * v;
    return lambda * std::sqrt(acc / static_cast<Scalar>(values.size()));
}

Vector factor_probabilities(const std::vector<Scalar>& factors, Scalar norm) {
    Vector out(static_cast<Index>(factors.size()));
    if (norm == 0) {
        out.setZero();
        return out;
    }
    const Scalar denom = norm * std::sqrt(Scalar(2));
    for (std::size_t i = 0; i < factors.size(); ++i)
        out(static_cast<Index>(i)) = std::max(Scalar(0), std::erf(factors[i] / denom));
    return out;
}

Vector loop_scores(const Dataset& data, const LoopParams& params) {
    const auto table = knn_table(data, params.k, params.metric);
    const auto plofs = plof_values(data, table, params);
    return factor_probabilities(plofs, nplof(plofs, params.lambda));
}

Vector local_loop_scores(const Dataset& data, const std::vector<Subspace>& subspaces,
                         const LoopParams& params) {
    if (subspaces.empty()) throw std::invalid_argument("local_loop_scores: no subspaces");
    Vector best = Vector::Constant(data.n(), 0);
    for (const auto& sub : subspaces) {
        if (!sub.valid_for(data.dims()))
            throw std::invalid_argument("subspace " + sub.to_string() + " out of range");
        const Vector scores = loop_scores(project(data, sub), params);
        best = best.cwiseMax(scores);
    }
    return best;
}

Vector lof_scores(const Dataset& data, Index k, DistanceMetric metric) {
    const auto table = knn_table(data, k, metric);
    const Index n = data.n();
    constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

    // k-distance of each point = distance to the last (furthest) neighbour.
    std::vector<Scalar> kdist(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) kdist[static_cast<std::size_t>(i)] = table.of(i).back().distance;

    std::vector<Scalar> lrd(static_cast<std::size_t>(n));
    parallel_for(n, [&](Index i) {
        const auto nb = table.of(i);
        Scalar reach_sum = 0;
        for (const auto& e : nb)
            reach_sum += std::max(kdist[static_cast<std::size_t>(e.id)], e.distance);
        lrd[static_cast<std::size_t>(i)] =
            reach_sum == 0 ? kInf : static_cast<Scalar>(nb.size()) / reach_sum;
    });

    Vector out(n);
    parallel_for(n, [&](Index i) {
        if (lrd[static_cast<std::size_t>(i)] == kInf) {
            out(i) = 1;
            return;
        }
        const auto nb = table.of(i);
        Scalar ratio_sum = 0;
        for (const auto& e : nb) ratio_sum += lrd[static_cast<std::size_t>(e.id)];
        out(i) = ratio_sum / lrd[static_cast<std::size_t>(i)] / static_cast<Scalar>(nb.size());
    });
    return out;
}

} // namespace gloss
