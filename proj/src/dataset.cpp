#include "gloss/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace gloss {

Subspace::Subspace(IndexVector features) : features_(std::move(features)) {
    if (features_.empty()) throw std::invalid_argument("subspace must not be empty");
    std::sort(features_.begin(), features_.end());
    if (std::adjacent_find(features_.begin(), features_.end()) != features_.end())
        throw std::invalid_argument("subspace contains duplicate feature indices");
    if (features_.front() < 0) throw std::invalid_argument("negative feature index in subspace");
}

Subspace Subspace::full(Index d) {
    IndexVector f(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) f[static_cast<std::size_t>(i)] = i;
    return Subspace(std::move(f));
}

std::string Subspace::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (i > 0) out += '|';
        out += std::to_string(features_[i]);
    }
    return out;
}

void Dataset::validate() const {
    const Index rows = n();
    const Index cols = dims();
    if (rows < 1 || cols < 1) throw std::invalid_argument("dataset must have n >= 1 and d >= 1");
    if (!values.allFinite()) throw std::invalid_argument("dataset contains a non-finite value");
    if (static_cast<Index>(row_ids.size()) != rows)
        throw std::invalid_argument("row_ids length does not match row count");
    if (labels && labels->size() != rows)
        throw std::invalid_argument("labels length does not match row count");
    if (class_col && static_cast<Index>(class_col->size()) != rows)
        throw std::invalid_argument("class column length does not match row count");
    std::unordered_set<std::string> seen;
    seen.reserve(row_ids.size());
    for (const auto& id : row_ids) {
        if (!seen.insert(id).second) throw std::invalid_argument("duplicate row id: " + id);
    }
}

Dataset make_dataset(Matrix values) {
    Dataset d;
    d.row_ids.reserve(static_cast<std::size_t>(values.rows()));
    for (Index i = 0; i < values.rows(); ++i) d.row_ids.push_back(std::to_string(i));
    d.values = std::move(values);
    return d;
}

Dataset project(const Dataset& data, const Subspace& sub) {
    if (!sub.valid_for(data.dims()))
        throw std::invalid_argument("subspace index out of range for dataset with " +
                                    std::to_string(data.dims()) + " features");
    Dataset out;
    out.values = data.values(Eigen::all, sub.features());
    out.row_ids = data.row_ids;
    out.labels = data.labels;
    out.class_col = data.class_col;
    return out;
}

Dataset standardize(const Dataset& data) {
    const Index n = data.n();
    if (n < 2) throw std::invalid_argument("standardize requires at least 2 rows");
    Dataset out = data;
    for (Index j = 0; j < data.dims(); ++j) {
        const Scalar mean = data.values.col(j).mean();
        const Scalar var = (data.values.col(j).array() - mean).square().sum() / static_cast<Scalar>(n);
        const Scalar sd = std::sqrt(var);
        // columns that are constant up to rounding noise collapse to zero
        if (sd <= 1e-12 * std::max<Scalar>(1.0, std::abs(mean))) {
            out.values.col(j).setZero();
        } else {
            out.values.col(j) = (data.values.col(j).array() - mean) / sd;
        }
    }
    return out;
}

} // namespace gloss
