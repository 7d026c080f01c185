#ifndef GLOSS_NEIGHBORS_HPP_
#define GLOSS_NEIGHBORS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gloss/dataset.hpp"
#include "gloss/types.hpp"

namespace gloss {

enum class DistanceMetric { Euclidean, Manhattan };

DistanceMetric parse_metric(const std::string& name);
std::string metric_name(DistanceMetric metric);

/// Pointwise metric over equal-length vectors. Plain sequential loop, so the
/// result is reproducible across build configurations.
Scalar distance(const RowVector& a, const RowVector& b, DistanceMetric metric);

/// Same metric restricted to the subspace columns of two dataset rows.
Scalar distance_in_subspace(const Matrix& values, Index a, Index b,
                            const IndexVector& features, DistanceMetric metric);

struct Neighbor {
    Index id;
    Scalar distance;
};

/**
 * Exact k-nearest-neighbour lists for every point, self excluded, each list
 * sorted by (distance, id). Lists all have length exactly min(k, n-1).
 */
class NeighborhoodTable {
public:
    NeighborhoodTable(Index n, Index k, bool clamped, std::vector<Neighbor> flat)
        : n_(n), k_(k), clamped_(clamped), flat_(std::move(flat)) {}

    Index n() const { return n_; }
    Index k() const { return k_; }

    /// True when the requested k was >= n and had to be clamped to n-1.
    bool k_was_clamped() const { return clamped_; }

    std::span<const Neighbor> of(Index point) const {
        return {flat_.data() + point * k_, static_cast<std::size_t>(k_)};
    }

private:
    Index n_;
    Index k_;
    bool clamped_;
    std::vector<Neighbor> flat_;
};

/**
 * Brute-force O(n^2 d) exact kNN over the full feature set of `data`.
 * Ties in distance are broken by lower row index. k >= n clamps to n-1
 * (reported through NeighborhoodTable::k_was_clamped). Requires n >= 2.
 */
NeighborhoodTable knn_table(const Dataset& data, Index k, DistanceMetric metric);

/// Debug dump: "point_id,rank,neighbor_id,distance".
void write_table_csv(const Dataset& data, const NeighborhoodTable& table, const std::string& path);

/// Number of knn_table builds since the last reset. Lets callers verify the
/// one-global-table property of the scoring pipelines.
std::uint64_t knn_build_count();
void reset_knn_build_count();

} // namespace gloss

#endif // GLOSS_NEIGHBORS_HPP_
