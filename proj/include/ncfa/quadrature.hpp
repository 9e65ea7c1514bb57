#pragma once

#include <Eigen/Dense>

namespace ncfa::quadrature {

struct Rule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

//! n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on the
//! Legendre recurrence; accurate to ~1e-15 for n up to a few thousand).
Rule gauss_legendre(int n);

//! Same rule mapped to [a, b].
Rule gauss_legendre(int n, double a, double b);

}  // namespace ncfa::quadrature
