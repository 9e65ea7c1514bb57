#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "ncfa/measures.hpp"

namespace ncfa::spectra {

using Complex = std::complex<double>;

//! One Fourier coefficient block: either a scalar c (meaning c * I, the
//! stored form for central measures) or a full d x d matrix.
class CoeffBlock {
 public:
  static CoeffBlock scalar(Complex c) { return CoeffBlock(c); }
  static CoeffBlock matrix(Eigen::MatrixXcd m) { return CoeffBlock(std::move(m)); }

  bool is_scalar() const { return std::holds_alternative<Complex>(value_); }
  Complex scalar_value() const { return std::get<Complex>(value_); }
  const Eigen::MatrixXcd& matrix_value() const {
    return std::get<Eigen::MatrixXcd>(value_);
  }

  Complex trace(long long dim) const;
  double frobenius_norm_sq(long long dim) const;
  double operator_norm(long long dim) const;

 private:
  explicit CoeffBlock(Complex c) : value_(c) {}
  explicit CoeffBlock(Eigen::MatrixXcd m) : value_(std::move(m)) {}
  std::variant<Complex, Eigen::MatrixXcd> value_;
};

//! Truncated Fourier transform of a measure: one block per dual point with
//! |lambda| <= cutoff_norm, kept in sorted dual order so reductions are
//! deterministic.
struct SpectralCoeffs {
  GroupId group = GroupId::SU2;
  int torus_dim = 0;
  std::string normalization = kNormalizationNote;
  double cutoff_norm = 0.0;
  bool truncated = false;  // set when a convolution had to intersect cutoffs
  std::vector<dual::Irrep> irreps;
  std::vector<CoeffBlock> blocks;

  std::size_t size() const { return blocks.size(); }
  const CoeffBlock* find(const Eigen::VectorXi& lambda) const;
  bool has_matrix_blocks() const;
  //! Probability contract: trivial block 1, operator norms <= 1 + tol.
  bool is_probability(double tol = 1e-9) const;
};

enum class TransformMode { TraceOnly, FullMatrix };

//! Analytic transform of a central measure on the given dual points.
SpectralCoeffs transform_central(const measures::CentralMeasureSpec& spec,
                                 const dual::RootSystemData& rs,
                                 const std::vector<dual::Irrep>& irreps);

//! Convenience: dual points chosen by the spec's tail rule.
SpectralCoeffs transform_central(const measures::CentralMeasureSpec& spec,
                                 const dual::RootSystemData& rs,
                                 double tail_tol = 1e-12,
                                 double max_cutoff = 512.0);

//! Empirical characteristic function (1/n) sum_i pi(Y_i^{-1}).  TraceOnly
//! stores the averaged character as the block trace (scalar avg/d), which
//! is the central projection and all any central-noise pipeline needs;
//! FullMatrix averages rep_matrix and is kept for validation.
SpectralCoeffs empirical_transform(const groups::SampleSet& samples,
                                   const dual::RootSystemData& rs,
                                   const std::vector<dual::Irrep>& irreps,
                                   TransformMode mode);

//! Truncated Peter-Weyl series sum d tr(F(lambda) pi(.)) at a conjugacy
//! angle (scalar blocks only) or at a group element.  The imaginary
//! residue must stay below 1e-9 for real densities.
double synthesize(const SpectralCoeffs& coeffs, double theta);
double synthesize(const SpectralCoeffs& coeffs, const Eigen::VectorXd& theta);
double synthesize_element(const SpectralCoeffs& coeffs, const groups::Quaternion& q);

//! sum d |||F(lambda)|||^2 (scalar blocks contribute d^2 |c|^2).
double plancherel_norm_sq(const SpectralCoeffs& coeffs);

//! sum d tr(F G^*); requires matching group and cutoff.
Complex parseval(const SpectralCoeffs& f, const SpectralCoeffs& g);

//! Blockwise product in the transform's convention: the result block for
//! mu_1 * mu_2 is G(lambda) F(lambda) (second transform times first).
//! Mismatched cutoffs truncate to the intersection and set `truncated`.
SpectralCoeffs convolve(const SpectralCoeffs& f, const SpectralCoeffs& g);

}  // namespace ncfa::spectra
