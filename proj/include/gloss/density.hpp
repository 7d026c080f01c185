#ifndef GLOSS_DENSITY_HPP_
#define GLOSS_DENSITY_HPP_

#include <vector>

#include "gloss/dataset.hpp"
#include "gloss/neighbors.hpp"
#include "gloss/types.hpp"

namespace gloss {

struct LoopParams {
    Index k = 20;
    Scalar lambda = 3.0;
    DistanceMetric metric = DistanceMetric::Euclidean;
};

/// PLOF value used when a positive set distance meets a zero reference mean;
/// it saturates the outlier probability at 1.
inline constexpr Scalar kLargeFactor = 1e12;

/// Root-mean-square distance from a point to a non-empty reference set
/// (one reference point per row of S).
Scalar standard_distance(const RowVector& d, const Matrix& S, DistanceMetric metric);

/// Probabilistic set distance: lambda times the standard distance.
Scalar pdist(Scalar lambda, const RowVector& d, const Matrix& S, DistanceMetric metric);

/**
 * Probabilistic local outlier factor of one point: the ratio of its set
 * distance to the mean set distance of its k neighbours, minus one. The
 * expectation is the arithmetic mean over the neighbour list. 0/0 yields 0
 * (coincident points are maximally inlying); positive/0 yields kLargeFactor.
 */
Scalar plof(Index d, const NeighborhoodTable& table, const Dataset& data, const LoopParams& params);

/// lambda * sqrt(mean(values^2)): the zero-mean deviation used to normalise
/// factors into probabilities. Empty input is an error; all-zero input gives 0.
Scalar nplof(const std::vector<Scalar>& plof_values, Scalar lambda);

/// Shared normalisation step: max{0, erf(v / (norm * sqrt(2)))} per entry;
/// a zero norm maps every score to 0.
Vector factor_probabilities(const std::vector<Scalar>& factors, Scalar norm);

/// Local outlier probabilities per point, all in [0, 1]. Requires n >= 2;
/// k >= n falls back to the clamped n-1 neighbourhoods.
Vector loop_scores(const Dataset& data, const LoopParams& params);

/**
 * LoOP run independently inside each subspace (neighbourhoods rebuilt in the
 * projection), max-aggregated per point. One kNN build per subspace.
 */
Vector local_loop_scores(const Dataset& data, const std::vector<Subspace>& subspaces,
                         const LoopParams& params);

/**
 * Classical LOF factors (reachability distance / local reachability density)
 * for baseline comparisons; values near 1 for inliers. A point whose
 * reachability distances are all zero gets infinite density and, by the usual
 * duplicate convention, factor 1.
 */
Vector lof_scores(const Dataset& data, Index k, DistanceMetric metric);

} // namespace gloss

#endif // GLOSS_DENSITY_HPP_
