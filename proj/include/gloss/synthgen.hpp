#ifndef GLOSS_SYNTHGEN_HPP_
#define GLOSS_SYNTHGEN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gloss/dataset.hpp"
#include "gloss/types.hpp"

namespace gloss {

/**
 * Mixture-of-Gaussians benchmark generator. Cluster centers are drawn
 * per dimension from [0, mu_upper]; every point joins a uniformly random
 * cluster and samples each coordinate independently around that center.
 */
struct SynthConfig {
    Index n = 1000;
    Index dims = 10;
    Index n_clusters = 3;
    Scalar mu_upper = 3.0;
    Scalar sigma2 = 1.0; // per-dimension cluster variance
    Index n_outliers = 50;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Mixture {
    Dataset data;
    IndexVector assignment; // cluster id per point
    Matrix centers;         // n_clusters x dims
};

/// Draws the mixture only; no outliers, no labels.
Mixture generate_mixture(const SynthConfig& cfg);

/**
 * Marks n_outliers distinct points and resamples each on a random subspace
 * from a random foreign cluster's distribution. Subspace sizes are uniform
 * on [2, max(2, floor(0.1 * dims))]. Only the chosen cells change; labels
 * become true for exactly the chosen points.
 */
Dataset implant_synthetic_outliers(const Mixture& mixture, const SynthConfig& cfg);

/// generate_mixture followed by implant_synthetic_outliers.
Dataset generate_synthetic(const SynthConfig& cfg);

/**
 * Benchmark protocol: floor(fraction * n) points are turned into outliers by
 * copying a random subspace (same size rule as above) from a uniformly
 * chosen donor of a different class. Donor values are read from the dataset
 * as given, so an already-implanted point may donate its original values.
 */
Dataset implant_benchmark_outliers(const Dataset& data, Scalar fraction, std::uint64_t seed);

/// Labels true exactly for the least-frequent class; ties broken by
/// first-seen class order.
BoolArray minority_class_labels(const Dataset& data);

/// JSON provenance sidecar describing a generated dataset.
void write_synth_sidecar(const SynthConfig& cfg, const std::string& path);

} // namespace gloss

#endif // GLOSS_SYNTHGEN_HPP_
