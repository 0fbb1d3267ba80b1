#pragma once

#include <Eigen/Core>

namespace mzmirror {

/// Composite trapezoidal rule over uniformly spaced samples.
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::DenseBase<Derived>& samples, double spacing) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = samples.size();
  if (n < 2) return Scalar(0);
  const Scalar interior = samples.sum();
  return Scalar(spacing) * (interior - Scalar(0.5) * (samples(0) + samples(n - 1)));
}

}  // namespace mzmirror
