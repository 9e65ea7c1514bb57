#include "ncfa/measures.hpp"

#include <algorithm>
#include <cmath>

#include "ncfa/parallel.hpp"
#include "ncfa/rng.hpp"
#include "ncfa/spectra.hpp"

namespace ncfa::measures {

namespace {

void check_monotone_on_grid(const BernsteinFunction& f) {
  double prev = f(0.0);
  if (std::abs(prev) > 1e-12)
    throw std::invalid_argument("Bernstein function must vanish at 0");
  for (double u = 1e-6; u < 1e7; u *= 10.0) {
    const double v = f(u);
    if (v < prev - 1e-12)
      throw std::invalid_argument("Bernstein function must be nondecreasing");
    prev = v;
  }
}

}  // namespace

BernsteinFunction BernsteinFunction::linear(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("subordination time must be > 0");
  BernsteinFunction f;
  f.kind = Kind::Linear;
  f.time = t;
  check_monotone_on_grid(f);
  return f;
}

BernsteinFunction BernsteinFunction::laplace(double beta, double t) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("subordination time must be > 0");
  BernsteinFunction f;
  f.kind = Kind::Laplace;
  f.beta = beta;
  f.time = t;
  check_monotone_on_grid(f);
  return f;
}

BernsteinFunction BernsteinFunction::stable(double b, double alpha, double t) {
  if (!(b > 0.0)) throw std::invalid_argument("b must be > 0");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("alpha must lie in (0, 2)");
  if (!(t > 0.0)) throw std::invalid_argument("subordination time must be > 0");
  BernsteinFunction f;
  f.kind = Kind::Stable;
  f.b = b;
  f.alpha = alpha;
  f.time = t;
  check_monotone_on_grid(f);
  return f;
}

double BernsteinFunction::operator()(double u) const {
  switch (kind) {
    case Kind::Linear: return u;
    case Kind::Laplace: return std::log1p(beta * beta * u);
    case Kind::Stable: return std::pow(b, alpha) * std::pow(u, alpha / 2.0);
  }
  return 0.0;
}

CentralMeasureSpec CentralMeasureSpec::dirac(GroupId g, int torus_dim) {
  CentralMeasureSpec s;
  s.family = Family::Dirac;
  s.group = g;
  s.torus_dim = torus_dim;
  return s;
}

CentralMeasureSpec CentralMeasureSpec::haar(GroupId g, int torus_dim) {
  CentralMeasureSpec s;
  s.family = Family::Haar;
  s.group = g;
  s.torus_dim = torus_dim;
  return s;
}

CentralMeasureSpec CentralMeasureSpec::gaussian(double sigma_sq, GroupId g,
                                                int torus_dim) {
  if (!(sigma_sq > 0.0)) throw std::invalid_argument("sigma^2 must be > 0");
  CentralMeasureSpec s;
  s.family = Family::Gaussian;
  s.group = g;
  s.torus_dim = torus_dim;
  s.sigma_sq = sigma_sq;
  return s;
}

CentralMeasureSpec CentralMeasureSpec::cid(const BernsteinFunction& f, GroupId g,
                                           int torus_dim) {
  CentralMeasureSpec s;
  s.family = Family::Cid;
  s.group = g;
  s.torus_dim = torus_dim;
  s.bernstein = f;
  return s;
}

CentralMeasureSpec CentralMeasureSpec::custom(
    std::vector<std::pair<Eigen::VectorXi, double>> table, GroupId g, int torus_dim) {
  CentralMeasureSpec s;
  s.family = Family::Custom;
  s.group = g;
  s.torus_dim = torus_dim;
  s.table = std::move(table);
  std::sort(s.table.begin(), s.table.end(),
            [](const auto& a, const auto& b) { return dual::lambda_less(a.first, b.first); });
  bool has_trivial = false;
  for (const auto& [lambda, c] : s.table) {
    if (std::abs(c) > 1.0 + 1e-12)
      throw std::invalid_argument("custom multiplier exceeds 1 in modulus");
    if (lambda.isZero()) {
      has_trivial = true;
      if (std::abs(c - 1.0) > 1e-12)
        throw std::invalid_argument("custom multiplier at 0 must equal 1");
    }
  }
  if (!has_trivial)
    throw std::invalid_argument("custom table must contain the trivial point");
  return s;
}

double CentralMeasureSpec::heat_time() const {
  if (family == Family::Gaussian) return 0.5 * sigma_sq;
  if (family == Family::Cid && bernstein.kind == BernsteinFunction::Kind::Linear)
    return bernstein.time;
  throw std::invalid_argument("spec has no heat-semigroup time");
}

double multiplier(const CentralMeasureSpec& spec, const dual::Irrep& irrep) {
  switch (spec.family) {
    case CentralMeasureSpec::Family::Dirac:
      return 1.0;
    case CentralMeasureSpec::Family::Haar:
      return irrep.lambda.isZero() ? 1.0 : 0.0;
    case CentralMeasureSpec::Family::Gaussian:
      return std::exp(-0.5 * spec.sigma_sq * irrep.casimir);
    case CentralMeasureSpec::Family::Cid:
      return std::exp(-spec.bernstein.time * spec.bernstein(irrep.casimir));
    case CentralMeasureSpec::Family::Custom: {
      auto it = std::lower_bound(
          spec.table.begin(), spec.table.end(), irrep.lambda,
          [](const auto& entry, const Eigen::VectorXi& lam) {
            return dual::lambda_less(entry.first, lam);
          });
      if (it != spec.table.end() && it->first == irrep.lambda) return it->second;
      return 0.0;
    }
  }
  return 0.0;
}

std::vector<dual::Irrep> irreps_for_spec(const CentralMeasureSpec& spec,
                                         const dual::RootSystemData& rs,
                                         double tail_tol, double max_cutoff) {
  if (spec.family == CentralMeasureSpec::Family::Haar)
    return dual::enumerate_irreps(rs, 1.0);
  if (spec.family == CentralMeasureSpec::Family::Custom) {
    double cutoff = 1.0;
    for (const auto& [lambda, c] : spec.table)
      cutoff = std::max(cutoff, dual::weight_norm(rs, lambda));
    return dual::enumerate_irreps(rs, std::min(cutoff, max_cutoff));
  }
  // Walk shells of growing norm until d^2 |c| stays below tail_tol / 8 for
  // eight consecutive shells (superpolynomially decaying families), or the
  // cap is reached (Dirac, slow families).
  double cutoff = max_cutoff;
  int consecutive = 0;
  const double per_shell = tail_tol / 8.0;
  const double step = (rs.group == GroupId::Torus) ? 1.0 : 0.5;
  for (double r = step; r <= max_cutoff + 1e-9; r += step) {
    double shell_sum = 0.0;
    if (rs.group == GroupId::Torus) {
      // d = 1; shell population of radius-r ring is bounded by the surface.
      const double ring = std::max(1.0, 8.0 * std::pow(r, rs.torus_dim - 1));
      Eigen::VectorXi probe = Eigen::VectorXi::Zero(rs.rank);
      probe[0] = static_cast<int>(std::lround(r));
      if (probe[0] == 0) continue;
      shell_sum = ring * std::abs(multiplier(spec, dual::make_irrep(rs, probe)));
    } else {
      const int n = static_cast<int>(std::lround(2.0 * r));
      if (rs.group == GroupId::SO3 && n % 2 != 0) continue;
      const auto ir = dual::make_irrep(rs, Eigen::VectorXi::Constant(1, n));
      shell_sum = static_cast<double>(ir.dim) * static_cast<double>(ir.dim) *
                  std::abs(multiplier(spec, ir));
    }
    consecutive = (shell_sum < per_shell) ? consecutive + 1 : 0;
    if (consecutive >= 8 && r >= 4.0) {
      cutoff = r;
      break;
    }
  }
  return dual::enumerate_irreps(rs, cutoff);
}

double conjugacy_density(const CentralMeasureSpec& spec,
                         const dual::RootSystemData& rs, double theta) {
  return conjugacy_density(spec, rs, Eigen::VectorXd::Constant(1, theta))[0];
}

Eigen::VectorXd conjugacy_density(const CentralMeasureSpec& spec,
                                  const dual::RootSystemData& rs,
                                  const Eigen::VectorXd& thetas) {
  if (!spec.has_density())
    throw unsupported_error("Dirac mass has no density");
  if (rs.group == GroupId::Torus && rs.torus_dim != 1)
    throw unsupported_error("angle densities are implemented for torus:1 only");
  const auto coeffs = spectra::transform_central(spec, rs);
  Eigen::VectorXd out(thetas.size());
  for (Eigen::Index i = 0; i < thetas.size(); ++i) {
    const double theta = thetas[i];
    if (rs.group == GroupId::Torus) {
      out[i] = spectra::synthesize(coeffs, theta) / (2.0 * M_PI);
    } else {
      const double s = std::sin(theta);
      out[i] = (2.0 / M_PI) * s * s * spectra::synthesize(coeffs, theta);
    }
  }
  return out;
}

namespace {

//! Monotone cubic (Fritsch-Carlson) interpolant of a CDF on a uniform
//! grid, invertible by bisection + Newton on each segment.
class InverseCdf {
 public:
  InverseCdf(Eigen::VectorXd grid, const Eigen::VectorXd& density)
      : x_(std::move(grid)) {
    const Eigen::Index n = x_.size();
    Eigen::VectorXd p = density.cwiseMax(0.0);
    cdf_.resize(n);
    cdf_[0] = 0.0;
    for (Eigen::Index i = 1; i < n; ++i)
      cdf_[i] = cdf_[i - 1] +
                0.5 * (p[i] + p[i - 1]) * (x_[i] - x_[i - 1]);
    const double total = cdf_[n - 1];
    if (!(total > 0.0)) throw numerical_error("density integrates to zero");
    cdf_ /= total;
    cdf_[n - 1] = 1.0;

    // Fritsch-Carlson slopes.
    slope_.resize(n);
    Eigen::VectorXd delta(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
      delta[i] = (cdf_[i + 1] - cdf_[i]) / (x_[i + 1] - x_[i]);
    slope_[0] = delta[0];
    slope_[n - 1] = delta[n - 2];
    for (Eigen::Index i = 1; i + 1 < n; ++i)
      slope_[i] = (delta[i - 1] * delta[i] <= 0.0)
                      ? 0.0
                      : 2.0 * delta[i - 1] * delta[i] / (delta[i - 1] + delta[i]);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (delta[i] == 0.0) {
        slope_[i] = slope_[i + 1] = 0.0;
        continue;
      }
      const double a = slope_[i] / delta[i];
      const double b = slope_[i + 1] / delta[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double tau = 3.0 / std::sqrt(s);
        slope_[i] = tau * a * delta[i];
        slope_[i + 1] = tau * b * delta[i];
      }
    }
  }

  double operator()(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    // locate segment by binary search on cdf values
    Eigen::Index lo = 0, hi = cdf_.size() - 1;
    while (hi - lo > 1) {
      const Eigen::Index mid = (lo + hi) / 2;
      (cdf_[mid] <= u ? lo : hi) = mid;
    }
    const double h = x_[hi] - x_[lo];
    const double c0 = cdf_[lo], c1 = cdf_[hi];
    if (c1 <= c0) return x_[lo];
    const double m0 = slope_[lo] * h, m1 = slope_[hi] * h;
    // Hermite cubic in s on [0,1]; solve H(s) = u by safeguarded Newton.
    auto eval = [&](double s) {
      const double s2 = s * s, s3 = s2 * s;
      const double value = (2 * s3 - 3 * s2 + 1) * c0 + (s3 - 2 * s2 + s) * m0 +
                           (-2 * s3 + 3 * s2) * c1 + (s3 - s2) * m1;
      const double deriv = (6 * s2 - 6 * s) * c0 + (3 * s2 - 4 * s + 1) * m0 +
                           (-6 * s2 + 6 * s) * c1 + (3 * s2 - 2 * s) * m1;
      return std::pair(value, deriv);
    };
    double s = (u - c0) / (c1 - c0);
    double a = 0.0, b = 1.0;
    for (int iter = 0; iter < 40; ++iter) {
      const auto [val, der] = eval(s);
      if (val > u)
        b = s;
      else
        a = s;
      double next = (der > 1e-300) ? s - (val - u) / der : 0.5 * (a + b);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      if (std::abs(next - s) < 1e-15) {
        s = next;
        break;
      }
      s = next;
    }
    return x_[lo] + s * h;
  }

 private:
  Eigen::VectorXd x_, cdf_, slope_;
};

constexpr int kCdfGrid = 4096;

}  // namespace

groups::SampleSet sample_central(const CentralMeasureSpec& spec,
                                 const dual::RootSystemData& rs,
                                 std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("count must be >= 1");
  if (!spec.has_density())
    throw unsupported_error("Dirac mass admits no density to sample from");
  const bool torus = rs.group == GroupId::Torus;
  if (torus && rs.torus_dim != 1)
    throw unsupported_error("central sampling is implemented for torus:1 only");

  const double span = torus ? 2.0 * M_PI : M_PI;
  Eigen::VectorXd grid(kCdfGrid);
  for (int i = 0; i < kCdfGrid; ++i)
    grid[i] = span * static_cast<double>(i) / (kCdfGrid - 1);
  Eigen::VectorXd density = conjugacy_density(spec, rs, grid);
  const double floor = density.minCoeff();
  if (floor < -1e-8)
    throw numerical_error(
        "truncated density dips below -1e-8; increase the spectral cutoff");
  InverseCdf inverse(grid, density);

  groups::SampleSet s;
  s.group = rs.group;
  s.torus_dim = torus ? rs.torus_dim : 0;
  s.seed = seed;
  s.generator_id = "central-invcdf-v1";
  s.elements.resize(static_cast<Eigen::Index>(count), torus ? 1 : 4);

  const std::size_t chunks = (count + rng::kChunkSize - 1) / rng::kChunkSize;
  parallel_for(chunks, [&](std::size_t chunk) {
    rng::ChunkRng gen(rng::chunk_seed(seed, chunk));
    const std::size_t lo = chunk * rng::kChunkSize;
    const std::size_t hi = std::min(count, lo + rng::kChunkSize);
    for (std::size_t i = lo; i < hi; ++i) {
      const Eigen::Index row = static_cast<Eigen::Index>(i);
      if (torus) {
        s.elements(row, 0) = inverse(gen.uniform01());
        continue;
      }
      const double theta = inverse(gen.uniform01());
      const double z = 2.0 * gen.uniform01() - 1.0;
      const double phi = 2.0 * M_PI * gen.uniform01();
      const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double st = std::sin(theta);
      groups::Quaternion q(std::cos(theta), st * rxy * std::cos(phi),
                           st * rxy * std::sin(phi), st * z);
      if (rs.group == GroupId::SO3) q = groups::canonicalize_so3(q);
      s.elements.row(row) = q.transpose();
    }
  });
  return s;
}

groups::SampleSet noise_multiply(const groups::SampleSet& xs,
                                 const groups::SampleSet& es) {
  if (xs.group != es.group || xs.torus_dim != es.torus_dim)
    throw std::invalid_argument("sample sets live on different groups");
  if (xs.count() != es.count())
    throw std::invalid_argument("sample counts differ");
  groups::SampleSet out;
  out.group = xs.group;
  out.torus_dim = xs.torus_dim;
  out.seed = rng::splitmix64(xs.seed ^ (es.seed + rng::kGolden));
  out.generator_id = "product(" + xs.generator_id + ";" + es.generator_id + ")";
  out.elements.resizeLike(xs.elements);
  for (Eigen::Index i = 0; i < xs.count(); ++i) {
    if (xs.group == GroupId::Torus) {
      for (int c = 0; c < xs.torus_dim; ++c) {
        double angle = std::fmod(xs.elements(i, c) + es.elements(i, c), 2.0 * M_PI);
        if (angle < 0.0) angle += 2.0 * M_PI;
        out.elements(i, c) = angle;
      }
    } else {
      groups::Quaternion q = groups::quat_normalized(
          groups::quat_multiply(xs.quaternion(i), es.quaternion(i)));
      if (xs.group == GroupId::SO3) q = groups::canonicalize_so3(q);
      out.elements.row(i) = q.transpose();
    }
  }
  return out;
}

}  // namespace ncfa::measures
