#ifndef GLOSS_TYPES_HPP_
#define GLOSS_TYPES_HPP_

#include <Eigen/Dense>

namespace gloss {

using Scalar = double;
using Index = Eigen::Index;

using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;
using IndexVector = std::vector<Index>;

} // namespace gloss

#endif // GLOSS_TYPES_HPP_
