#include "ncfa/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ncfa::quadrature {

Rule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Asymptotic root estimate, then Newton on the recurrence.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = -p1 / pp;
      z += dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

Rule gauss_legendre(int n, double a, double b) {
  Rule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  rule.nodes = (rule.nodes.array() * hw + mid).matrix();
  rule.weights *= hw;
  return rule;
}

}  // namespace ncfa::quadrature
