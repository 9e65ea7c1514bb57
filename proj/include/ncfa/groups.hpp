#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>

#include "ncfa/dual.hpp"

namespace ncfa::groups {

//! Unit quaternion (w, x, y, z); su2 elements directly, so3 elements after
//! identifying q ~ -q (canonical sign: w >= 0, ties broken by the first
//! nonzero imaginary coordinate).
using Quaternion = Eigen::Vector4d;

Quaternion quat_multiply(const Quaternion& a, const Quaternion& b);
Quaternion quat_inverse(const Quaternion& q);
Quaternion quat_normalized(const Quaternion& q);
Quaternion canonicalize_so3(const Quaternion& q);

//! Conjugacy angle arccos(clamp(w)) in [0, pi].
double conjugacy_angle(const Quaternion& q);

//! Class representative (cos theta, sin theta, 0, 0).
Quaternion class_representative(double theta);

//! i.i.d. group elements, one per row: 4 columns (quaternion) for su2/so3,
//! torus_dim columns (angles in [0, 2pi)) for the torus.
struct SampleSet {
  GroupId group = GroupId::SU2;
  int torus_dim = 0;
  Eigen::MatrixXd elements;
  std::uint64_t seed = 0;
  std::string generator_id;

  Eigen::Index count() const { return elements.rows(); }
  Quaternion quaternion(Eigen::Index i) const { return elements.row(i).transpose(); }
};

//! chi_n(theta) = sin((n+1) theta) / sin(theta) with the removable
//! singularities chi_n(0) = n+1 and chi_n(pi) = (-1)^n (n+1).
double character_su2(int n, double theta);

//! All of chi_0..chi_{n_max} at cos(theta), by the three-term recurrence.
//! out must hold n_max + 1 values.
void characters_su2(double cos_theta, int n_max, double* out);

//! Weyl character at a conjugacy angle (su2/so3) or the real-part
//! convention cos(k . theta) on the torus.
double character(const dual::RootSystemData& rs, const dual::Irrep& irrep,
                 double theta);
double character(const dual::RootSystemData& rs, const dual::Irrep& irrep,
                 const Eigen::VectorXd& theta);

//! e^{i k . theta}.
std::complex<double> torus_character(const Eigen::VectorXi& k,
                                     const Eigen::VectorXd& theta);

//! Defining 2x2 representation of a unit quaternion.
Eigen::Matrix2cd su2_defining_matrix(const Quaternion& q);

//! n-th symmetric power of the defining representation in the monomial
//! basis with binomial normalization; unitary, trace = chi_n(theta(q)).
Eigen::MatrixXcd rep_matrix(const dual::Irrep& irrep, const Quaternion& q,
                            long long dim_cap = 64);

//! Haar samples: uniform unit quaternions (su2), the same with sign
//! canonicalization (so3), or uniform angles (torus).
SampleSet haar_sample(GroupId group, int torus_dim, std::size_t count,
                      std::uint64_t seed);

//! Normalized class-function integral: (2/pi) int_0^pi f sin^2 (su2/so3)
//! or (1/2pi) int_0^{2pi} f (torus:1), Gauss-Legendre with npoints nodes.
double weyl_quadrature(const dual::RootSystemData& rs,
                       const std::function<double(double)>& f, int npoints);

}  // namespace ncfa::groups
