#ifndef CGEO_TYPES_HPP
#define CGEO_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <limits>

namespace cgeo {

using Index = Eigen::Index;
using Scalar = double;

/// Dense symmetric distance / Gromov-product tables.
using MetricMatrix = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;

inline constexpr Scalar kMetricTol = 1e-9;
inline constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

/// Input that fails schema or value validation (CLI exit code 2).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A mathematically required precondition does not hold on the given
/// data, e.g. a cover radius does not exist (CLI exit code 3).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cgeo

#endif
