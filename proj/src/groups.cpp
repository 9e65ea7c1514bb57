#include "ncfa/groups.hpp"

#include <quadmath.h>

#include <cmath>

#include "ncfa/parallel.hpp"
#include "ncfa/quadrature.hpp"
#include "ncfa/rng.hpp"

namespace ncfa::groups {

namespace {

// Minimal quad-precision complex type for the rep_matrix accumulation.
struct Cq {
  __float128 re, im;
  Cq operator*(const Cq& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cq operator*(__float128 s) const { return {re * s, im * s}; }
  Cq operator+(const Cq& o) const { return {re + o.re, im + o.im}; }
};

}  // namespace

Quaternion quat_multiply(const Quaternion& a, const Quaternion& b) {
  Quaternion r;
  r[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
  r[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
  r[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
  r[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
  return r;
}

Quaternion quat_inverse(const Quaternion& q) {
  return Quaternion(q[0], -q[1], -q[2], -q[3]);
}

Quaternion quat_normalized(const Quaternion& q) {
  const double n = q.norm();
  if (n == 0.0) return Quaternion(1, 0, 0, 0);
  return q / n;
}

Quaternion canonicalize_so3(const Quaternion& q) {
  for (int i = 0; i < 4; ++i) {
    if (q[i] > 0.0) return q;
    if (q[i] < 0.0) return -q;
  }
  return Quaternion(1, 0, 0, 0);
}

double conjugacy_angle(const Quaternion& q) {
  return std::acos(std::clamp(q[0], -1.0, 1.0));
}

Quaternion class_representative(double theta) {
  return Quaternion(std::cos(theta), std::sin(theta), 0.0, 0.0);
}

double character_su2(int n, double theta) {
  if (n < 0) throw std::invalid_argument("character index must be >= 0");
  if (theta < 0.0 || theta > M_PI)
    throw std::invalid_argument("conjugacy angle must lie in [0, pi]");
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-12) {
    const double value = static_cast<double>(n + 1);
    return (theta > M_PI_2 && n % 2 == 1) ? -value : value;
  }
  return std::sin((n + 1) * theta) / s;
}

void characters_su2(double cos_theta, int n_max, double* out) {
  // Chebyshev U recurrence: chi_n(theta) = U_n(cos theta).
  out[0] = 1.0;
  if (n_max == 0) return;
  out[1] = 2.0 * cos_theta;
  for (int n = 2; n <= n_max; ++n)
    out[n] = 2.0 * cos_theta * out[n - 1] - out[n - 2];
}

double character(const dual::RootSystemData& rs, const dual::Irrep& irrep,
                 double theta) {
  if (rs.group == GroupId::Torus) {
    if (rs.torus_dim != 1)
      throw std::invalid_argument("scalar angle requires torus:1");
    return std::cos(irrep.lambda[0] * theta);
  }
  return character_su2(irrep.lambda[0], theta);
}

double character(const dual::RootSystemData& rs, const dual::Irrep& irrep,
                 const Eigen::VectorXd& theta) {
  if (rs.group != GroupId::Torus)
    throw std::invalid_argument("vector angles are a torus concept");
  if (theta.size() != rs.torus_dim)
    throw std::invalid_argument("angle vector has wrong dimension");
  return std::cos(irrep.lambda.cast<double>().dot(theta));
}

std::complex<double> torus_character(const Eigen::VectorXi& k,
                                     const Eigen::VectorXd& theta) {
  const double phase = k.cast<double>().dot(theta);
  return {std::cos(phase), std::sin(phase)};
}

Eigen::Matrix2cd su2_defining_matrix(const Quaternion& q) {
  using C = std::complex<double>;
  Eigen::Matrix2cd u;
  u(0, 0) = C(q[0], -q[3]);
  u(0, 1) = C(-q[2], -q[1]);
  u(1, 0) = C(q[2], -q[1]);
  u(1, 1) = C(q[0], q[3]);
  return u;
}

Eigen::MatrixXcd rep_matrix(const dual::Irrep& irrep, const Quaternion& q,
                            long long dim_cap) {
  if (irrep.lambda.size() != 1)
    throw unsupported_error("matrix representations exist only for su2/so3");
  const int n = irrep.lambda[0];
  if (n + 1 > dim_cap)
    throw unsupported_error("representation dimension exceeds the cap");
  const Eigen::Matrix2cd u = su2_defining_matrix(q);
  // The expansion cancels up to ~10 digits near the dimension cap, so terms
  // are accumulated in quad precision with exact integer binomials (they
  // fit in 64 bits for n <= 63).
  const Cq a{u(0, 0).real(), u(0, 0).imag()};
  const Cq b{u(0, 1).real(), u(0, 1).imag()};
  const Cq c{u(1, 0).real(), u(1, 0).imag()};
  const Cq d{u(1, 1).real(), u(1, 1).imag()};

  std::vector<std::vector<unsigned long long>> binom(n + 1);
  for (int i = 0; i <= n; ++i) {
    binom[i].assign(i + 1, 1ull);
    for (int j = 1; j < i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
  }

  std::vector<Cq> apow(n + 1), bpow(n + 1), cpow(n + 1), dpow(n + 1);
  apow[0] = bpow[0] = cpow[0] = dpow[0] = Cq{1.0, 0.0};
  for (int p = 1; p <= n; ++p) {
    apow[p] = apow[p - 1] * a;
    bpow[p] = bpow[p - 1] * b;
    cpow[p] = cpow[p - 1] * c;
    dpow[p] = dpow[p - 1] * d;
  }

  Eigen::MatrixXcd m(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n; ++j) {
      // Coefficient of x^{n-j} y^j in (a x + c y)^{n-k} (b x + d y)^k,
      // rescaled to the orthonormal basis e_j = sqrt(C(n,j)) x^{n-j} y^j.
      Cq acc{0.0, 0.0};
      const int p_lo = std::max(0, j - k);
      const int p_hi = std::min(j, n - k);
      for (int p = p_lo; p <= p_hi; ++p) {
        const int qq = j - p;
        const __float128 coeff =
            static_cast<__float128>(binom[n - k][p]) *
            static_cast<__float128>(binom[k][qq]);
        acc = acc + (apow[n - k - p] * cpow[p] * bpow[k - qq] * dpow[qq]) * coeff;
      }
      const __float128 scale = sqrtq(static_cast<__float128>(binom[n][k]) /
                                     static_cast<__float128>(binom[n][j]));
      m(j, k) = std::complex<double>(static_cast<double>(acc.re * scale),
                                     static_cast<double>(acc.im * scale));
    }
  }
  return m;
}

SampleSet haar_sample(GroupId group, int torus_dim, std::size_t count,
                      std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("count must be >= 1");
  SampleSet s;
  s.group = group;
  s.torus_dim = (group == GroupId::Torus) ? torus_dim : 0;
  s.seed = seed;
  s.generator_id =
      (group == GroupId::Torus) ? "haar-angles-v1" : "haar-quat-v1";
  const int cols = (group == GroupId::Torus) ? torus_dim : 4;
  if (group == GroupId::Torus && torus_dim < 1)
    throw std::invalid_argument("torus dimension must be >= 1");
  s.elements.resize(static_cast<Eigen::Index>(count), cols);

  const std::size_t chunks = (count + rng::kChunkSize - 1) / rng::kChunkSize;
  parallel_for(chunks, [&](std::size_t chunk) {
    rng::ChunkRng gen(rng::chunk_seed(seed, chunk));
    const std::size_t lo = chunk * rng::kChunkSize;
    const std::size_t hi = std::min(count, lo + rng::kChunkSize);
    for (std::size_t i = lo; i < hi; ++i) {
      if (group == GroupId::Torus) {
        for (int c = 0; c < cols; ++c)
          s.elements(static_cast<Eigen::Index>(i), c) =
              2.0 * M_PI * gen.uniform01();
      } else {
        Quaternion q;
        gen.normal_pair(q[0], q[1]);
        gen.normal_pair(q[2], q[3]);
        q = quat_normalized(q);
        if (group == GroupId::SO3) q = canonicalize_so3(q);
        s.elements.row(static_cast<Eigen::Index>(i)) = q.transpose();
      }
    }
  });
  return s;
}

double weyl_quadrature(const dual::RootSystemData& rs,
                       const std::function<double(double)>& f, int npoints) {
  if (npoints < 16) throw std::invalid_argument("npoints must be >= 16");
  if (rs.group == GroupId::Torus) {
    if (rs.torus_dim != 1)
      throw unsupported_error("class-function quadrature requires torus:1");
    const auto rule = quadrature::gauss_legendre(npoints, 0.0, 2.0 * M_PI);
    double acc = 0.0;
    for (int i = 0; i < npoints; ++i)
      acc += rule.weights[i] * f(rule.nodes[i]);
    return acc / (2.0 * M_PI);
  }
  const auto rule = quadrature::gauss_legendre(npoints, 0.0, M_PI);
  double acc = 0.0;
  for (int i = 0; i < npoints; ++i) {
    const double sn = std::sin(rule.nodes[i]);
    acc += rule.weights[i] * f(rule.nodes[i]) * sn * sn;
  }
  return acc * 2.0 / M_PI;
}

}  // namespace ncfa::groups
