#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncfa/spectra.hpp"

namespace ncfa::diagnostics {

enum class Verdict { Converges, Diverges, Smooth, NotSmooth, Inconclusive };
enum class Method { Analytic, Numeric };

std::string verdict_name(Verdict v);

//! One geometric shell |lambda| in (2^{j-1}, 2^j] (shell 0 is (0, 1]).
struct ShellRow {
  int index = 0;
  double lo = 0.0, hi = 0.0;
  double increment = 0.0;   // shell sum (L2 test) or unused (smoothness)
  double cumulative = 0.0;
};

struct DecayVerdict {
  Verdict verdict = Verdict::Inconclusive;
  Method method = Method::Numeric;
  std::vector<ShellRow> shells;
  double fitted_ratio = 0.0;      // geometric ratio across the last shells
  //! Smoothness evidence: row per shell, column k-1 holds
  //! max_{shell} |lambda|^k |||F(lambda)|||.
  Eigen::MatrixXd gk_table;
  std::string note;
};

//! Square-integrability criterion: convergence of sum d |||mu_hat|||^2,
//! decided analytically for built-in families or from the decay of
//! geometric-shell partial sums.
DecayVerdict l2_test(const measures::CentralMeasureSpec& spec,
                     const dual::RootSystemData& rs, double max_norm,
                     std::optional<Method> force = std::nullopt);
DecayVerdict l2_test(const spectra::SpectralCoeffs& coeffs);

//! sup |lambda|^s |||F(lambda)||| over stored entries.
double sugiura_seminorm(const spectra::SpectralCoeffs& coeffs, double s);

//! Rapid-decrease criterion: |lambda|^k |||F|||  -> 0 for every k <= max_k.
DecayVerdict smoothness_test(const measures::CentralMeasureSpec& spec,
                             const dual::RootSystemData& rs, int max_k,
                             double max_norm,
                             std::optional<Method> force = std::nullopt);
DecayVerdict smoothness_test(const spectra::SpectralCoeffs& coeffs, int max_k);

//! Heat-semigroup check at time t: the spectral trace sum d^2 e^{-t kappa},
//! the synthesized density at the identity, and the squared Hilbert-Schmidt
//! norm, computed through three separate code paths.  trace = density(e)
//! and hs(t) = trace(2t) must hold at matched cutoff.
struct TraceReport {
  double time = 0.0;
  double cutoff_norm = 0.0;
  double trace_spectral = 0.0;
  double density_at_e = 0.0;
  double hs_norm_sq = 0.0;
};
TraceReport trace_report(double t, const dual::RootSystemData& rs, double max_norm);

//! Fit of log c = log A + a2 log kappa - gamma kappa^beta over a kappa
//! range (golden section on beta, linear solve for the rest); a1 comes
//! from the mirrored fit of the inverse coefficients.
struct SuperSmoothFit {
  double beta_hat = 0.0;
  double gamma_hat = 0.0;
  double a1_hat = 0.0;
  double a2_hat = 0.0;
  double log_amplitude = 0.0;
  double residual = 0.0;   // max |log c - fitted| over the range
  bool supersmooth = false;
};

SuperSmoothFit supersmooth_fit(const std::vector<std::pair<double, double>>& kappa_c,
                               std::pair<double, double> fit_range);
SuperSmoothFit supersmooth_fit(const measures::CentralMeasureSpec& spec,
                               const dual::RootSystemData& rs,
                               std::optional<std::pair<double, double>> fit_range =
                                   std::nullopt,
                               double max_norm = 64.0);
SuperSmoothFit supersmooth_fit(const spectra::SpectralCoeffs& coeffs,
                               std::optional<std::pair<double, double>> fit_range =
                                   std::nullopt);

//! sum d (1 + kappa)^p |||F|||^2.
double sobolev_norm_sq(const spectra::SpectralCoeffs& coeffs, double p);

//! Verifies numerically that a super-smooth spec is smooth: the fitted
//! envelope K |lambda|^{m/2} (1+|lambda|^2)^{a2} exp(-gamma |lambda|^{2 beta})
//! dominates the block norms and the smoothness test returns Smooth.
struct SmoothChainReport {
  bool applicable = false;  // spec passed the super-smooth fit
  bool dominated = false;
  bool smooth = false;
  double envelope_constant = 0.0;  // K
  double max_ratio = 0.0;          // worst |||F||| / envelope
  SuperSmoothFit fit;
};
SmoothChainReport supersmooth_implies_smooth_check(
    const measures::CentralMeasureSpec& spec, const dual::RootSystemData& rs,
    double max_norm = 64.0);

}  // namespace ncfa::diagnostics
