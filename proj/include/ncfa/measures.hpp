#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "ncfa/groups.hpp"

namespace ncfa::measures {

//! Laplace exponent of a subordinator.  Only the closed forms used by the
//! built-in families are provided: f(u) = u (Brownian, sigma = sqrt(2)
//! convention), f(u) = log(1 + beta^2 u), f(u) = b^alpha u^{alpha/2}.
struct BernsteinFunction {
  enum class Kind { Linear, Laplace, Stable };
  Kind kind = Kind::Linear;
  double beta = 0.0;   // Laplace
  double b = 0.0;      // Stable
  double alpha = 0.0;  // Stable, in (0, 2)
  double time = 1.0;   // subordination time t > 0

  static BernsteinFunction linear(double t);
  static BernsteinFunction laplace(double beta, double t = 1.0);
  static BernsteinFunction stable(double b, double alpha, double t = 1.0);

  double operator()(double u) const;
};

//! Analytic description of a central probability measure through its
//! scalar Fourier multiplier c_lambda.
struct CentralMeasureSpec {
  enum class Family { Dirac, Haar, Gaussian, Cid, Custom };
  Family family = Family::Haar;
  GroupId group = GroupId::SU2;
  int torus_dim = 0;
  double sigma_sq = 0.0;            // Gaussian: c = exp(-sigma^2 kappa / 2)
  BernsteinFunction bernstein;      // Cid: c = exp(-t f(kappa))
  // Custom: explicit table sorted by (norm, lex); entries absent from the
  // table have multiplier 0.
  std::vector<std::pair<Eigen::VectorXi, double>> table;

  static CentralMeasureSpec dirac(GroupId g, int torus_dim = 0);
  static CentralMeasureSpec haar(GroupId g, int torus_dim = 0);
  static CentralMeasureSpec gaussian(double sigma_sq, GroupId g, int torus_dim = 0);
  static CentralMeasureSpec cid(const BernsteinFunction& f, GroupId g, int torus_dim = 0);
  static CentralMeasureSpec custom(std::vector<std::pair<Eigen::VectorXi, double>> table,
                                   GroupId g, int torus_dim = 0);

  //! Heat time t in c = exp(-t kappa); defined for Gaussian and
  //! Brownian-subordinated (linear) specs.
  double heat_time() const;
  bool has_density() const { return family != Family::Dirac; }
};

//! The family's scalar multiplier c_lambda at one dual point.
double multiplier(const CentralMeasureSpec& spec, const dual::Irrep& irrep);

//! Dual points needed so the absolute spectral tail sum d^2 |c| beyond the
//! cutoff is below tail_tol; capped at max_cutoff for families with
//! polynomial decay (the cap is then the cutoff).
std::vector<dual::Irrep> irreps_for_spec(const CentralMeasureSpec& spec,
                                         const dual::RootSystemData& rs,
                                         double tail_tol = 1e-12,
                                         double max_cutoff = 512.0);

//! Pushforward density of the measure to the conjugacy angle:
//! (2/pi) sin^2(theta) f(theta) on [0, pi] for su2/so3 (so3 uses the
//! double-cover angle), f(theta)/(2pi) on [0, 2pi) for torus:1.
double conjugacy_density(const CentralMeasureSpec& spec,
                         const dual::RootSystemData& rs, double theta);
Eigen::VectorXd conjugacy_density(const CentralMeasureSpec& spec,
                                  const dual::RootSystemData& rs,
                                  const Eigen::VectorXd& thetas);

//! Monte Carlo sampler for central densities: inverse CDF of the angle
//! density on a 4096-point grid (monotone cubic interpolation), then a
//! uniform axis on S^2 for su2/so3.
groups::SampleSet sample_central(const CentralMeasureSpec& spec,
                                 const dual::RootSystemData& rs,
                                 std::size_t count, std::uint64_t seed);

//! Elementwise group product y_i = x_i * e_i.
groups::SampleSet noise_multiply(const groups::SampleSet& xs,
                                 const groups::SampleSet& es);

}  // namespace ncfa::measures
