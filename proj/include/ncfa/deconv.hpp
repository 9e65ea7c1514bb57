#pragma once

#include <optional>
#include <vector>

#include "ncfa/diagnostics.hpp"

namespace ncfa::deconv {

//! Spectral cutoff schedule: a fixed Casimir threshold T, or the plug-in
//! log rule T_n = scale (log n)^{1/beta} / (2 gamma)^{1/beta} driven by a
//! super-smooth fit of the noise.
struct CutoffRule {
  enum class Kind { Fixed, LogRule };
  Kind kind = Kind::Fixed;
  double value = 1.0;  // T for Fixed, scale for LogRule

  static CutoffRule fixed(double T);
  static CutoffRule log_rule(double scale);
};

struct DeconvConfig {
  dual::RootSystemData root_system;
  measures::CentralMeasureSpec signal;
  measures::CentralMeasureSpec noise;
  std::vector<std::size_t> n_values;
  CutoffRule cutoff;
  int eval_grid = 256;
  std::uint64_t seed = 0;
  //! Sobolev index used only for the reported reference slope -s/(2 beta).
  double sobolev_s = 2.0;
};

//! Uniform evaluation grid of conjugacy representatives: [0, pi] inclusive
//! for su2/so3, [0, 2pi) without the duplicate endpoint for torus:1.
Eigen::VectorXd eval_angles(const dual::RootSystemData& rs, int grid);

//! Spectral-cutoff deconvolution estimator evaluated at class
//! representatives: sum over kappa < T of d c_eps^{-1} times the empirical
//! character average of theta(Y_i^{-1} sigma).  Central noise only; no
//! representation matrices in the hot path.
Eigen::VectorXd estimate(const groups::SampleSet& samples_y,
                         const measures::CentralMeasureSpec& noise,
                         const dual::RootSystemData& rs, double T,
                         const Eigen::VectorXd& grid);

//! Weyl-weighted root-mean-square distance between estimate values and the
//! truth density on the same grid.
double l2_error(const Eigen::VectorXd& estimate_values,
                const measures::CentralMeasureSpec& truth,
                const dual::RootSystemData& rs, const Eigen::VectorXd& grid);

double cutoff_from_rule(const CutoffRule& rule, std::size_t n,
                        const std::optional<diagnostics::SuperSmoothFit>& noise_fit);

struct RunRow {
  std::size_t n = 0;
  double l2_error = 0.0;
  double naive_error = 0.0;  // noise ignored (c_eps replaced by 1)
  double cutoff_used = 0.0;
};

struct RateFit {
  double slope = 0.0;      // of log error against log log n
  double residual = 0.0;
  double theoretical_slope = 0.0;  // -s / (2 beta_hat), reported only
};

struct DeconvReport {
  std::vector<RunRow> rows;
  RateFit rate_fit;
};

DeconvReport run_experiment(const DeconvConfig& config);

}  // namespace ncfa::deconv
