#include "ncfa/spectra.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace ncfa::spectra {

Complex CoeffBlock::trace(long long dim) const {
  if (is_scalar()) return scalar_value() * static_cast<double>(dim);
  return matrix_value().trace();
}

double CoeffBlock::frobenius_norm_sq(long long dim) const {
  if (is_scalar()) return std::norm(scalar_value()) * static_cast<double>(dim);
  return matrix_value().squaredNorm();
}

double CoeffBlock::operator_norm(long long dim) const {
  if (is_scalar()) return std::abs(scalar_value());
  (void)dim;
  return matrix_value().jacobiSvd().singularValues()(0);
}

const CoeffBlock* SpectralCoeffs::find(const Eigen::VectorXi& lambda) const {
  for (std::size_t i = 0; i < irreps.size(); ++i)
    if (irreps[i].lambda == lambda) return &blocks[i];
  return nullptr;
}

bool SpectralCoeffs::has_matrix_blocks() const {
  return std::any_of(blocks.begin(), blocks.end(),
                     [](const CoeffBlock& b) { return !b.is_scalar(); });
}

bool SpectralCoeffs::is_probability(double tol) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].operator_norm(irreps[i].dim) > 1.0 + tol) return false;
    if (irreps[i].norm == 0.0) {
      const Complex c = blocks[i].is_scalar() ? blocks[i].scalar_value()
                                              : blocks[i].matrix_value()(0, 0);
      if (std::abs(c - 1.0) > tol) return false;
    }
  }
  return true;
}

namespace {

void check_group(const measures::CentralMeasureSpec& spec,
                 const dual::RootSystemData& rs) {
  if (spec.group != rs.group ||
      (spec.group == GroupId::Torus && spec.torus_dim != rs.torus_dim))
    throw std::invalid_argument("measure spec and root system disagree on the group");
}

double max_norm_of(const std::vector<dual::Irrep>& irreps) {
  double m = 0.0;
  for (const auto& ir : irreps) m = std::max(m, ir.norm);
  return m;
}

}  // namespace

SpectralCoeffs transform_central(const measures::CentralMeasureSpec& spec,
                                 const dual::RootSystemData& rs,
                                 const std::vector<dual::Irrep>& irreps) {
  if (irreps.empty()) throw std::invalid_argument("empty dual point list");
  check_group(spec, rs);
  SpectralCoeffs out;
  out.group = rs.group;
  out.torus_dim = rs.torus_dim;
  out.irreps = irreps;
  std::sort(out.irreps.begin(), out.irreps.end(), dual::irrep_order);
  out.cutoff_norm = max_norm_of(out.irreps);
  out.blocks.reserve(out.irreps.size());
  for (const auto& ir : out.irreps)
    out.blocks.push_back(CoeffBlock::scalar(measures::multiplier(spec, ir)));
  return out;
}

SpectralCoeffs transform_central(const measures::CentralMeasureSpec& spec,
                                 const dual::RootSystemData& rs,
                                 double tail_tol, double max_cutoff) {
  return transform_central(spec, rs,
                           measures::irreps_for_spec(spec, rs, tail_tol, max_cutoff));
}

SpectralCoeffs empirical_transform(const groups::SampleSet& samples,
                                   const dual::RootSystemData& rs,
                                   const std::vector<dual::Irrep>& irreps,
                                   TransformMode mode) {
  if (samples.count() == 0) throw std::invalid_argument("empty sample set");
  if (samples.group != rs.group ||
      (rs.group == GroupId::Torus && samples.torus_dim != rs.torus_dim))
    throw std::invalid_argument("sample set and root system disagree on the group");
  if (irreps.empty()) throw std::invalid_argument("empty dual point list");

  SpectralCoeffs out;
  out.group = rs.group;
  out.torus_dim = rs.torus_dim;
  out.irreps = irreps;
  std::sort(out.irreps.begin(), out.irreps.end(), dual::irrep_order);
  out.cutoff_norm = max_norm_of(out.irreps);
  const Eigen::Index n = samples.count();

  if (mode == TransformMode::FullMatrix) {
    if (rs.group == GroupId::Torus)
      throw unsupported_error("full-matrix mode is scalar on the torus; use trace mode");
    for (const auto& ir : out.irreps) {
      Eigen::MatrixXcd acc =
          Eigen::MatrixXcd::Zero(ir.dim, ir.dim);
      for (Eigen::Index i = 0; i < n; ++i)
        acc += groups::rep_matrix(ir, groups::quat_inverse(samples.quaternion(i)));
      out.blocks.push_back(CoeffBlock::matrix(acc / static_cast<double>(n)));
    }
    return out;
  }

  if (rs.group == GroupId::Torus) {
    for (const auto& ir : out.irreps) {
      Complex acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        // pi_k(y^{-1}) = exp(-i k . theta)
        const double phase = -ir.lambda.cast<double>().dot(
            samples.elements.row(i).transpose().eval());
        acc += Complex(std::cos(phase), std::sin(phase));
      }
      out.blocks.push_back(CoeffBlock::scalar(acc / static_cast<double>(n)));
    }
    return out;
  }

  // su2/so3 trace mode: one character-recurrence pass per sample.
  int n_max = 0;
  for (const auto& ir : out.irreps) n_max = std::max(n_max, ir.lambda[0]);
  std::vector<double> chi(n_max + 1);
  std::vector<double> sums(n_max + 1, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c0 = std::clamp(samples.elements(i, 0), -1.0, 1.0);
    groups::characters_su2(c0, n_max, chi.data());
    for (int k = 0; k <= n_max; ++k) sums[k] += chi[k];
  }
  for (const auto& ir : out.irreps) {
    const double avg_char = sums[ir.lambda[0]] / static_cast<double>(n);
    out.blocks.push_back(
        CoeffBlock::scalar(avg_char / static_cast<double>(ir.dim)));
  }
  return out;
}

namespace {

double real_with_residue_check(Complex acc) {
  if (std::abs(acc.imag()) > 1e-9)
    throw numerical_error("synthesis has a non-real residue above 1e-9");
  return acc.real();
}

}  // namespace

double synthesize(const SpectralCoeffs& coeffs, double theta) {
  if (coeffs.group == GroupId::Torus) {
    if (coeffs.torus_dim != 1)
      throw std::invalid_argument("scalar angle requires torus:1");
    return synthesize(coeffs, Eigen::VectorXd::Constant(1, theta));
  }
  if (coeffs.has_matrix_blocks())
    throw std::invalid_argument("matrix blocks need a group element, not an angle");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < coeffs.blocks.size(); ++i) {
    const auto& ir = coeffs.irreps[i];
    acc += static_cast<double>(ir.dim) * coeffs.blocks[i].scalar_value() *
           groups::character_su2(ir.lambda[0], theta);
  }
  return real_with_residue_check(acc);
}

double synthesize(const SpectralCoeffs& coeffs, const Eigen::VectorXd& theta) {
  if (coeffs.group != GroupId::Torus)
    throw std::invalid_argument("vector angles are a torus concept");
  if (coeffs.has_matrix_blocks())
    throw std::invalid_argument("matrix blocks need a group element, not an angle");
  if (theta.size() != coeffs.torus_dim)
    throw std::invalid_argument("angle vector has wrong dimension");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < coeffs.blocks.size(); ++i)
    acc += coeffs.blocks[i].scalar_value() *
           groups::torus_character(coeffs.irreps[i].lambda, theta);
  return real_with_residue_check(acc);
}

double synthesize_element(const SpectralCoeffs& coeffs, const groups::Quaternion& q) {
  if (coeffs.group == GroupId::Torus)
    throw std::invalid_argument("torus synthesis takes an angle vector");
  Complex acc = 0.0;
  const double theta = groups::conjugacy_angle(q);
  for (std::size_t i = 0; i < coeffs.blocks.size(); ++i) {
    const auto& ir = coeffs.irreps[i];
    const double d = static_cast<double>(ir.dim);
    if (coeffs.blocks[i].is_scalar()) {
      acc += d * coeffs.blocks[i].scalar_value() *
             groups::character_su2(ir.lambda[0], theta);
    } else {
      acc += d * (coeffs.blocks[i].matrix_value() * groups::rep_matrix(ir, q))
                     .trace();
    }
  }
  return real_with_residue_check(acc);
}

double plancherel_norm_sq(const SpectralCoeffs& coeffs) {
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs.blocks.size(); ++i)
    acc += static_cast<double>(coeffs.irreps[i].dim) *
           coeffs.blocks[i].frobenius_norm_sq(coeffs.irreps[i].dim);
  return acc;
}

namespace {

void check_compatible(const SpectralCoeffs& f, const SpectralCoeffs& g) {
  if (f.group != g.group || f.torus_dim != g.torus_dim)
    throw std::invalid_argument("coefficient sets live on different groups");
}

Complex block_pair_trace(const CoeffBlock& a, const CoeffBlock& b, long long dim) {
  // tr(A B^*)
  if (a.is_scalar() && b.is_scalar())
    return a.scalar_value() * std::conj(b.scalar_value()) *
           static_cast<double>(dim);
  if (a.is_scalar()) return a.scalar_value() * std::conj(b.matrix_value().trace());
  if (b.is_scalar()) return std::conj(b.scalar_value()) * a.matrix_value().trace();
  return (a.matrix_value() * b.matrix_value().adjoint()).trace();
}

}  // namespace

Complex parseval(const SpectralCoeffs& f, const SpectralCoeffs& g) {
  check_compatible(f, g);
  if (f.cutoff_norm != g.cutoff_norm || f.size() != g.size())
    throw std::invalid_argument("cutoff mismatch in Parseval sum");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    if (f.irreps[i].lambda != g.irreps[i].lambda)
      throw std::invalid_argument("dual point mismatch in Parseval sum");
    acc += static_cast<double>(f.irreps[i].dim) *
           block_pair_trace(f.blocks[i], g.blocks[i], f.irreps[i].dim);
  }
  return acc;
}

SpectralCoeffs convolve(const SpectralCoeffs& f, const SpectralCoeffs& g) {
  check_compatible(f, g);
  SpectralCoeffs out;
  out.group = f.group;
  out.torus_dim = f.torus_dim;
  out.truncated = f.cutoff_norm != g.cutoff_norm || f.size() != g.size();
  // Walk the two sorted lists and keep the common dual points.
  std::size_t i = 0, j = 0;
  while (i < f.size() && j < g.size()) {
    const auto& a = f.irreps[i];
    const auto& b = g.irreps[j];
    if (a.lambda == b.lambda) {
      out.irreps.push_back(a);
      if (f.blocks[i].is_scalar() && g.blocks[j].is_scalar()) {
        out.blocks.push_back(CoeffBlock::scalar(f.blocks[i].scalar_value() *
                                                g.blocks[j].scalar_value()));
      } else if (f.blocks[i].is_scalar()) {
        out.blocks.push_back(CoeffBlock::matrix(g.blocks[j].matrix_value() *
                                                f.blocks[i].scalar_value()));
      } else if (g.blocks[j].is_scalar()) {
        out.blocks.push_back(CoeffBlock::matrix(g.blocks[j].scalar_value() *
                                                f.blocks[i].matrix_value()));
      } else {
        // transform convention: widehat{mu1 * mu2} = mu2_hat mu1_hat
        out.blocks.push_back(CoeffBlock::matrix(g.blocks[j].matrix_value() *
                                                f.blocks[i].matrix_value()));
      }
      ++i;
      ++j;
    } else if (dual::irrep_order(a, b)) {
      out.truncated = true;
      ++i;
    } else {
      out.truncated = true;
      ++j;
    }
  }
  out.cutoff_norm = max_norm_of(out.irreps);
  return out;
}

}  // namespace ncfa::spectra
