#pragma once

#include <initializer_list>
#include <string_view>

#include <Eigen/Dense>

namespace tikflow {

/// Points of the state space R^n. Dimension is a runtime property.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Absolute membership tolerance used when nothing else is specified.
inline constexpr double kMembershipTol = 1e-9;

Vector vec(std::initializer_list<double> coords);

bool all_finite(const Vector& x);

/// Throws ParameterError when `x` is empty or has a non-finite coordinate.
void require_finite(const Vector& x, std::string_view what);

/// Throws ParameterError when dimensions differ.
void require_same_dim(const Vector& a, const Vector& b, std::string_view what);

}  // namespace tikflow
