#ifndef GLOSS_GLOSS_HPP_
#define GLOSS_GLOSS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "gloss/dataset.hpp"
#include "gloss/density.hpp"
#include "gloss/neighbors.hpp"
#include "gloss/subspace_search.hpp"
#include "gloss/types.hpp"

namespace gloss {

/**
 * Per-point, per-subspace outlier probabilities plus the row-wise maximum,
 * which ranks points by their strongest deviation in any evaluated subspace.
 */
struct ScoreMatrix {
    Matrix per_subspace;             // n x |subspaces|, entries in [0, 1]
    Vector aggregate;                // row-wise max
    std::vector<Subspace> subspaces; // evaluated column order

    /// Column index attaining the row maximum, lowest index on ties.
    Index best_subspace(Index point) const;
};

/**
 * Root-mean-square distance from a point to its global neighbours, measured
 * inside the subspace: neighbours are selected over all features, distances
 * use only the subspace columns.
 */
Scalar extended_standard_distance(Index d, const Subspace& sub, std::span<const Neighbor> global_nn,
                                  const Dataset& data, DistanceMetric metric);

/**
 * Probabilistic global-local outlier factor of one (point, subspace) pair.
 * Numerator: the point's set distance to its global neighbourhood projected
 * onto the subspace. Denominator: mean of each neighbour's set distance to
 * its own global neighbourhood, also projected. Degenerate 0/0 and x/0 cases
 * follow the plof conventions.
 */
Scalar pglof(Index d, const Subspace& sub, const NeighborhoodTable& table, const Dataset& data,
             const LoopParams& params);

/**
 * Full scoring pass: one global kNN table, then an outlier probability for
 * every (point, subspace) pair against that table. When no subspaces are
 * given they are discovered first with search_subspaces (requires
 * search_cfg). Probability normalisation is per subspace.
 */
ScoreMatrix gloss(const Dataset& data, const LoopParams& params,
                  const std::optional<std::vector<Subspace>>& subspaces,
                  const std::optional<SearchParams>& search_cfg);

/// Row-wise maximum of the per-subspace probabilities.
Vector aggregate_max(const ScoreMatrix& m);

/// "point_id,aggregate_score,best_subspace" with the argmax column
/// serialised as "i|j|k".
void write_gloss_csv(const Dataset& data, const ScoreMatrix& m, const std::string& path);

/// Optional full matrix: "point_id,<sub1>,<sub2>,..." one column per subspace.
void write_score_matrix_csv(const Dataset& data, const ScoreMatrix& m, const std::string& path);

} // namespace gloss

#endif // GLOSS_GLOSS_HPP_
