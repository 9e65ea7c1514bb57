#include "ncfa/deconv.hpp"

#include <algorithm>
#include <cmath>

#include "ncfa/parallel.hpp"
#include "ncfa/rng.hpp"

namespace ncfa::deconv {

CutoffRule CutoffRule::fixed(double T) {
  if (!(T > 0.0)) throw std::invalid_argument("fixed cutoff must be > 0");
  return {Kind::Fixed, T};
}

CutoffRule CutoffRule::log_rule(double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("log-rule scale must be > 0");
  return {Kind::LogRule, scale};
}

Eigen::VectorXd eval_angles(const dual::RootSystemData& rs, int grid) {
  if (grid < 2) throw std::invalid_argument("grid must have >= 2 points");
  Eigen::VectorXd out(grid);
  if (rs.group == GroupId::Torus) {
    if (rs.torus_dim != 1)
      throw unsupported_error("deconvolution grids are implemented for torus:1");
    for (int i = 0; i < grid; ++i)
      out[i] = 2.0 * M_PI * static_cast<double>(i) / grid;
  } else {
    for (int i = 0; i < grid; ++i)
      out[i] = M_PI * static_cast<double>(i) / (grid - 1);
  }
  return out;
}

namespace {

//! Dual points admitted by the Casimir threshold kappa < T.
std::vector<dual::Irrep> irreps_below(const dual::RootSystemData& rs, double T) {
  // kappa is monotone in |lambda| for rank 1 and the torus, so enumerating
  // |lambda| <= sqrt(T) + 1 covers everything and we filter exactly.
  const double max_norm = std::sqrt(std::max(T, 1.0)) + 1.0;
  std::vector<dual::Irrep> out;
  for (auto& ir : dual::enumerate_irreps(rs, max_norm))
    if (ir.casimir < T) out.push_back(std::move(ir));
  if (out.empty())
    throw std::invalid_argument("cutoff admits no dual points");
  return out;
}

}  // namespace

Eigen::VectorXd estimate(const groups::SampleSet& samples_y,
                         const measures::CentralMeasureSpec& noise,
                         const dual::RootSystemData& rs, double T,
                         const Eigen::VectorXd& grid) {
  if (samples_y.count() == 0) throw std::invalid_argument("empty sample set");
  if (samples_y.group != rs.group ||
      (rs.group == GroupId::Torus && samples_y.torus_dim != rs.torus_dim))
    throw std::invalid_argument("sample set and root system disagree on the group");
  const auto irreps = irreps_below(rs, T);
  std::vector<double> inv_noise(irreps.size());
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    const double c = measures::multiplier(noise, irreps[i]);
    if (std::abs(c) <= 1e-300)
      throw std::invalid_argument(
          "noise multiplier vanishes below the cutoff; inversion impossible");
    inv_noise[i] = 1.0 / c;
  }
  const Eigen::Index n = samples_y.count();
  Eigen::VectorXd values(grid.size());

  if (rs.group == GroupId::Torus) {
    // One pass for the empirical coefficients, then synthesis on the grid.
    int k_max = 0;
    for (const auto& ir : irreps) k_max = std::max(k_max, std::abs(ir.lambda[0]));
    Eigen::VectorXcd emp(2 * k_max + 1);  // index k + k_max
    emp.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double theta = samples_y.elements(i, 0);
      const std::complex<double> w(std::cos(theta), -std::sin(theta));
      std::complex<double> p(1.0, 0.0);
      emp[k_max] += 1.0;
      for (int k = 1; k <= k_max; ++k) {
        p *= w;  // e^{-i k theta}
        emp[k_max + k] += p;
        emp[k_max - k] += std::conj(p);
      }
    }
    emp /= static_cast<double>(n);
    parallel_for(static_cast<std::size_t>(grid.size()), [&](std::size_t g) {
      std::complex<double> acc = 0.0;
      for (std::size_t i = 0; i < irreps.size(); ++i) {
        const int k = irreps[i].lambda[0];
        const std::complex<double> phase(std::cos(k * grid[g]),
                                         std::sin(k * grid[g]));
        acc += inv_noise[i] * emp[k_max + k] * phase;
      }
      values[g] = acc.real();
    });
    return values;
  }

  int n_max = 0;
  for (const auto& ir : irreps) n_max = std::max(n_max, ir.lambda[0]);
  parallel_for(static_cast<std::size_t>(grid.size()), [&](std::size_t g) {
    const double cg = std::cos(grid[g]);
    const double sg = std::sin(grid[g]);
    // Accumulate per-irrep character sums over the samples, then reduce in
    // sorted dual order so output bytes do not depend on the partition.
    std::vector<double> sums(n_max + 1, 0.0);
    std::vector<double> chi(n_max + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      // cos angle(Y_i^{-1} sigma) = <Y_i, sigma> for unit quaternions.
      const double c =
          std::clamp(samples_y.elements(i, 0) * cg + samples_y.elements(i, 1) * sg,
                     -1.0, 1.0);
      groups::characters_su2(c, n_max, chi.data());
      for (int k = 0; k <= n_max; ++k) sums[k] += chi[k];
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < irreps.size(); ++i)
      acc += static_cast<double>(irreps[i].dim) * inv_noise[i] *
             sums[irreps[i].lambda[0]] / static_cast<double>(n);
    values[g] = acc;
  });
  return values;
}

double l2_error(const Eigen::VectorXd& estimate_values,
                const measures::CentralMeasureSpec& truth,
                const dual::RootSystemData& rs, const Eigen::VectorXd& grid) {
  if (estimate_values.size() != grid.size())
    throw std::invalid_argument("estimate values and grid sizes differ");
  if (!truth.has_density())
    throw std::invalid_argument("truth spec admits no density");
  const Eigen::VectorXd truth_values = [&] {
    const auto coeffs = spectra::transform_central(truth, rs);
    Eigen::VectorXd v(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i)
      v[i] = rs.group == GroupId::Torus
                 ? spectra::synthesize(coeffs, Eigen::VectorXd::Constant(1, grid[i]))
                 : spectra::synthesize(coeffs, grid[i]);
    return v;
  }();

  double acc = 0.0;
  if (rs.group == GroupId::Torus) {
    // periodic grid: plain average against d theta / (2 pi)
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const double d = estimate_values[i] - truth_values[i];
      acc += d * d;
    }
    acc /= static_cast<double>(grid.size());
  } else {
    // Trapezoid with the sin^2 Weyl weight; the integrand extends to a
    // smooth even periodic function, so this is spectrally accurate.
    const double h = M_PI / static_cast<double>(grid.size() - 1);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const double d = estimate_values[i] - truth_values[i];
      const double s = std::sin(grid[i]);
      const double w = (i == 0 || i + 1 == grid.size()) ? 0.5 : 1.0;
      acc += w * d * d * s * s;
    }
    acc *= h * 2.0 / M_PI;
  }
  return std::sqrt(std::max(0.0, acc));
}

double cutoff_from_rule(const CutoffRule& rule, std::size_t n,
                        const std::optional<diagnostics::SuperSmoothFit>& noise_fit) {
  if (n < 2) throw std::invalid_argument("sample size must be >= 2");
  if (rule.kind == CutoffRule::Kind::Fixed) return rule.value;
  if (!noise_fit || !noise_fit->supersmooth)
    throw std::invalid_argument("log rule needs a super-smooth fit of the noise");
  const double beta = noise_fit->beta_hat;
  const double gamma = noise_fit->gamma_hat;
  const double T = rule.value * std::pow(std::log(static_cast<double>(n)), 1.0 / beta) /
                   std::pow(2.0 * gamma, 1.0 / beta);
  return std::max(T, 1e-6);  // always admit the trivial point
}

DeconvReport run_experiment(const DeconvConfig& config) {
  const auto& rs = config.root_system;
  DeconvReport report;
  std::optional<diagnostics::SuperSmoothFit> noise_fit;
  if (config.cutoff.kind == CutoffRule::Kind::LogRule)
    noise_fit = diagnostics::supersmooth_fit(config.noise, rs);
  const Eigen::VectorXd grid = eval_angles(rs, config.eval_grid);
  const auto naive = measures::CentralMeasureSpec::dirac(rs.group, rs.torus_dim);

  for (const std::size_t n : config.n_values) {
    const std::uint64_t seed_x = rng::splitmix64(config.seed + 2 * n);
    const std::uint64_t seed_e = rng::splitmix64(config.seed + 2 * n + 1);
    const auto xs = measures::sample_central(config.signal, rs, n, seed_x);
    const auto es = measures::sample_central(config.noise, rs, n, seed_e);
    const auto ys = measures::noise_multiply(xs, es);
    const double T = cutoff_from_rule(config.cutoff, n, noise_fit);
    RunRow row;
    row.n = n;
    row.cutoff_used = T;
    row.l2_error =
        l2_error(estimate(ys, config.noise, rs, T, grid), config.signal, rs, grid);
    row.naive_error =
        l2_error(estimate(ys, naive, rs, T, grid), config.signal, rs, grid);
    report.rows.push_back(row);
  }

  // Slope of log error against log log n.
  const auto& rows = report.rows;
  if (rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
      const double x = std::log(std::log(static_cast<double>(r.n)));
      const double y = std::log(std::max(r.l2_error, 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(rows.size());
    const double denom = m * sxx - sx * sx;
    report.rate_fit.slope = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
    const double intercept = (sy - report.rate_fit.slope * sx) / m;
    double ss = 0.0;
    for (const auto& r : rows) {
      const double x = std::log(std::log(static_cast<double>(r.n)));
      const double y = std::log(std::max(r.l2_error, 1e-300));
      const double e = y - (intercept + report.rate_fit.slope * x);
      ss += e * e;
    }
    report.rate_fit.residual = std::sqrt(ss / m);
  }
  if (noise_fit && noise_fit->beta_hat > 0.0)
    report.rate_fit.theoretical_slope =
        -config.sobolev_s / (2.0 * noise_fit->beta_hat);
  return report;
}

}  // namespace ncfa::deconv
