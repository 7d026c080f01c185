#ifndef GLOSS_DATASET_HPP_
#define GLOSS_DATASET_HPP_

#include <optional>
#include <string>
#include <vector>

#include "gloss/types.hpp"

namespace gloss {

/**
 * An ordered, duplicate-free set of feature indices; the unit of projection.
 * Indices are kept strictly increasing regardless of construction order.
 */
class Subspace {
public:
    explicit Subspace(IndexVector features);

    static Subspace full(Index d);

    const IndexVector& features() const { return features_; }
    Index size() const { return static_cast<Index>(features_.size()); }
    Index operator[](Index i) const { return features_[static_cast<std::size_t>(i)]; }

    /// All indices valid for a dataset with d features?
    bool valid_for(Index d) const { return features_.back() < d; }

    /// "i|j|k" serialisation used in CSV outputs.
    std::string to_string() const;

    bool operator==(const Subspace& other) const { return features_ == other.features_; }
    bool operator<(const Subspace& other) const { return features_ < other.features_; }

private:
    IndexVector features_;
};

/**
 * Dense dataset: one row per point, one column per feature. Immutable after
 * construction by convention; all detection code takes it by const reference
 * and may be run from several threads at once.
 */
struct Dataset {
    Matrix values;                                   // n x d, all finite
    std::vector<std::string> row_ids;                // n unique ids
    std::optional<BoolArray> labels;                 // true = outlier
    std::optional<std::vector<std::string>> class_col;

    Index n() const { return values.rows(); }
    Index dims() const { return values.cols(); }

    /// Throws std::invalid_argument if any invariant is broken.
    void validate() const;
};

/// Dataset with values only and row ids 0..n-1.
Dataset make_dataset(Matrix values);

/// Copy restricted to the subspace columns; row order, ids and labels kept.
Dataset project(const Dataset& data, const Subspace& sub);

/**
 * Per-column z-scoring with the population (1/n) variance convention.
 * Constant columns map to all-zeros. Requires n >= 2. Idempotent to 1e-12.
 */
Dataset standardize(const Dataset& data);

} // namespace gloss

#endif // GLOSS_DATASET_HPP_
