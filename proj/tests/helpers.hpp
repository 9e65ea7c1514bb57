#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "ncfa/groups.hpp"

namespace ncfa::test {

//! Two-sample Kolmogorov-Smirnov distance sup |F1 - F2|.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    const double fa = static_cast<double>(i) / a.size();
    const double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

inline std::vector<double> conjugacy_angles(const groups::SampleSet& s) {
  std::vector<double> out(s.count());
  for (Eigen::Index i = 0; i < s.count(); ++i)
    out[i] = s.group == GroupId::Torus ? s.elements(i, 0)
                                       : groups::conjugacy_angle(s.quaternion(i));
  return out;
}

//! Mean of chi_n over a sample set.
inline double mean_character(const groups::SampleSet& s, int n) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.count(); ++i)
    acc += groups::character_su2(n, groups::conjugacy_angle(s.quaternion(i)));
  return acc / static_cast<double>(s.count());
}

//! sum_k exp(-t k^2) exp(i k theta) evaluated through the Poisson-summation
//! route sqrt(pi/t) sum_j exp(-(theta - 2 pi j)^2 / (4t)): the classical
//! wrapped-Gaussian oracle for circle synthesis, independent of any
//! coefficient machinery.
inline double wrapped_gaussian(double theta, double t) {
  double acc = 0.0;
  for (int j = -64; j <= 64; ++j) {
    const double x = theta - 2.0 * M_PI * j;
    acc += std::exp(-x * x / (4.0 * t));
  }
  return std::sqrt(M_PI / t) * acc;
}

}  // namespace ncfa::test
