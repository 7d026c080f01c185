#ifndef GLOSS_SUBSPACE_SEARCH_HPP_
#define GLOSS_SUBSPACE_SEARCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gloss/dataset.hpp"
#include "gloss/types.hpp"

namespace gloss {

enum class SearchMode {
    HiCS,        // condition each candidate feature on the rest of the candidate
    GlossGlobal, // condition each candidate feature on the rest of the full space
};

SearchMode parse_search_mode(const std::string& name);

struct SearchParams {
    int monte_carlo_iters = 50;   // M
    Scalar alpha = 0.1;           // expected slice fraction
    int candidate_cutoff = 400;   // candidates kept per level
    int max_subspaces = 100;      // result cap
    int level_cap = 5;            // largest subspace size explored
    SearchMode mode = SearchMode::GlossGlobal;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ContrastedSubspace {
    Subspace subspace;
    Scalar contrast; // in [0, 1]
};

/**
 * Two-sample Kolmogorov-Smirnov statistic: sup |ECDF_a - ECDF_b|. Both
 * samples must be non-empty and sorted ascending.
 */
Scalar ks_statistic(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

/**
 * Monte-Carlo contrast of a subspace: over M iterations, a randomly chosen
 * comparison feature's full marginal is tested against the same marginal
 * restricted to a random slice. The slice restricts every conditioning
 * attribute (the rest of the candidate in HiCS mode, the rest of the whole
 * feature space in GlossGlobal mode) to a random contiguous rank interval
 * keeping fraction alpha^(1/|conditioning|) of points. Empty slices are
 * redrawn up to 10 times, then the iteration is skipped and the mean is
 * taken over the iterations that produced a slice.
 *
 * Iteration i of subspace F draws from the substream (seed, hash(F), i), so
 * results do not depend on evaluation order.
 */
Scalar contrast(const Dataset& data, const Subspace& sub, const SearchParams& params);

/**
 * Apriori-style bottom-up search for high-contrast subspaces. Levels start
 * at all feature pairs (HiCS) or all single features (GlossGlobal); the top
 * candidate_cutoff candidates of a level are each extended by every feature
 * beyond their last index to form the next level. Returns the global top
 * max_subspaces by contrast, ties by lexicographic feature order.
 */
std::vector<ContrastedSubspace> search_subspaces(const Dataset& data, const SearchParams& params);

/// Contrast report CSV: "subspace,contrast".
void write_contrast_csv(const std::vector<ContrastedSubspace>& ranked, const std::string& path);

} // namespace gloss

#endif // GLOSS_SUBSPACE_SEARCH_HPP_
