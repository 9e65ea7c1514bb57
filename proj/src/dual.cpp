#include "ncfa/dual.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ncfa {

std::string group_name(GroupId id, int torus_dim) {
  switch (id) {
    case GroupId::SU2: return "su2";
    case GroupId::SO3: return "so3";
    case GroupId::Torus: return "torus:" + std::to_string(torus_dim);
  }
  return "?";
}

std::pair<GroupId, int> parse_group(const std::string& name) {
  if (name == "su2") return {GroupId::SU2, 0};
  if (name == "so3") return {GroupId::SO3, 0};
  if (name.rfind("torus", 0) == 0) {
    int d = 1;
    auto colon = name.find(':');
    if (colon != std::string::npos) d = std::stoi(name.substr(colon + 1));
    if (d < 1) throw std::invalid_argument("torus dimension must be >= 1");
    return {GroupId::Torus, d};
  }
  throw std::invalid_argument("unknown group '" + name + "'");
}

}  // namespace ncfa

namespace ncfa::dual {

namespace {

// (x, y) in integer-scaled units, i.e. gram_scale * (x, y).
long long scaled_inner(const RootSystemData& rs, const Eigen::VectorXi& x,
                       const Eigen::VectorXi& y) {
  long long acc = 0;
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j)
      acc += static_cast<long long>(x[i]) * rs.gram_scaled(i, j) * y[j];
  return acc;
}

void check_dominant(const RootSystemData& rs, const Eigen::VectorXi& lambda) {
  if (lambda.size() != rs.rank)
    throw std::invalid_argument("weight has wrong number of coordinates");
  if (rs.group == GroupId::Torus) return;  // every k in Z^d is a weight
  if (lambda[0] < 0)
    throw std::invalid_argument("weight is not dominant");
  if (rs.group == GroupId::SO3 && lambda[0] % 2 != 0)
    throw std::invalid_argument("so3 weights are the even su2 weights");
}

}  // namespace

RootSystemData root_system(GroupId id, int torus_dim) {
  RootSystemData rs;
  rs.group = id;
  if (id == GroupId::Torus) {
    if (torus_dim < 1) throw std::invalid_argument("torus dimension must be >= 1");
    rs.torus_dim = torus_dim;
    rs.rank = torus_dim;
    rs.dim = torus_dim;
    rs.num_positive_roots = 0;
    rs.positive_roots.resize(0, torus_dim);
    rs.fundamental_roots.resize(0, torus_dim);
    rs.half_sum_rho = Eigen::VectorXi::Zero(torus_dim);
    rs.gram_scaled = Eigen::MatrixXi::Identity(torus_dim, torus_dim);
    rs.gram_scale = 1;
  } else {
    // su2 data in fundamental-weight coordinates; so3 shares it and keeps
    // only even highest weights (double cover).
    rs.torus_dim = 0;
    rs.rank = 1;
    rs.dim = 3;
    rs.num_positive_roots = 1;
    rs.positive_roots.resize(1, 1);
    rs.positive_roots(0, 0) = 2;  // alpha = 2 omega
    rs.fundamental_roots = rs.positive_roots;
    rs.half_sum_rho = Eigen::VectorXi::Constant(1, 1);  // rho = omega
    rs.gram_scaled = Eigen::MatrixXi::Identity(1, 1);
    rs.gram_scale = 4;  // (omega, omega) = 1/4
  }
  return rs;
}

RootSystemData root_system(const std::string& name) {
  auto [id, d] = parse_group(name);
  return root_system(id, d == 0 ? 1 : d);
}

bool lambda_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(),
                                      b.data(), b.data() + b.size());
}

bool irrep_order(const Irrep& a, const Irrep& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  return lambda_less(a.lambda, b.lambda);
}

double weight_norm(const RootSystemData& rs, const Eigen::VectorXi& lambda) {
  return std::sqrt(static_cast<double>(scaled_inner(rs, lambda, lambda)) /
                   static_cast<double>(rs.gram_scale));
}

long long weyl_dimension(const RootSystemData& rs, const Eigen::VectorXi& lambda) {
  check_dominant(rs, lambda);
  long long num = 1, den = 1;
  const Eigen::VectorXi lam_rho = lambda + rs.half_sum_rho;
  for (int a = 0; a < rs.num_positive_roots; ++a) {
    const Eigen::VectorXi alpha = rs.positive_roots.row(a).transpose();
    num *= scaled_inner(rs, lam_rho, alpha);
    den *= scaled_inner(rs, rs.half_sum_rho, alpha);
  }
  if (den == 0 || num % den != 0)
    throw numerical_error("Weyl dimension formula did not yield an integer");
  return num / den;
}

double casimir(const RootSystemData& rs, const Eigen::VectorXi& lambda) {
  check_dominant(rs, lambda);
  const Eigen::VectorXi shifted = lambda + 2 * rs.half_sum_rho;
  return static_cast<double>(scaled_inner(rs, lambda, shifted)) /
         static_cast<double>(rs.gram_scale);
}

Irrep make_irrep(const RootSystemData& rs, const Eigen::VectorXi& lambda) {
  Irrep ir;
  ir.lambda = lambda;
  ir.dim = weyl_dimension(rs, lambda);
  ir.casimir = casimir(rs, lambda);
  ir.norm = weight_norm(rs, lambda);
  return ir;
}

namespace {

void enumerate_lattice(const RootSystemData& rs, double max_norm,
                       std::vector<Irrep>& out) {
  // k in Z^d with |k|^2 <= max_norm^2, depth-first over coordinates.
  const int d = rs.torus_dim;
  const double r2 = max_norm * max_norm;
  Eigen::VectorXi k = Eigen::VectorXi::Zero(d);
  std::vector<long long> partial(d + 1, 0);
  int depth = 0;
  const int kmax = static_cast<int>(std::floor(max_norm));
  k[0] = -kmax - 1;
  while (depth >= 0) {
    if (depth == d) {
      out.push_back(make_irrep(rs, k));
      --depth;
      continue;
    }
    ++k[depth];
    if (k[depth] > kmax) {
      --depth;
      continue;
    }
    const long long p = partial[depth] +
        static_cast<long long>(k[depth]) * k[depth];
    if (static_cast<double>(p) > r2) continue;  // prune this coordinate value
    partial[depth + 1] = p;
    ++depth;
    if (depth < d) k[depth] = -kmax - 1;
  }
}

}  // namespace

std::vector<Irrep> enumerate_irreps(const RootSystemData& rs, double max_norm) {
  if (!(max_norm > 0.0))
    throw std::invalid_argument("max_norm must be positive");
  std::vector<Irrep> out;
  if (rs.group == GroupId::Torus) {
    enumerate_lattice(rs, max_norm, out);
  } else {
    const int step = (rs.group == GroupId::SO3) ? 2 : 1;
    for (int n = 0; 0.5 * n <= max_norm; n += step)
      out.push_back(make_irrep(rs, Eigen::VectorXi::Constant(1, n)));
  }
  std::sort(out.begin(), out.end(), irrep_order);
  return out;
}

InequalityReport verify_inequalities(const RootSystemData& rs, double max_norm) {
  if (!(max_norm >= 1.0))
    throw std::invalid_argument("max_norm must be >= 1");
  InequalityReport rep;
  rep.lower_bound_ok = true;
  for (const Irrep& ir : enumerate_irreps(rs, max_norm)) {
    if (ir.norm == 0.0) continue;
    ++rep.checked;
    const double ratio_weyl =
        static_cast<double>(ir.dim) / std::pow(ir.norm, rs.num_positive_roots);
    if (ratio_weyl > rep.weyl_constant) {
      rep.weyl_constant = ratio_weyl;
      rep.weyl_witness = ir.lambda;
    }
    const double ratio_cas = ir.casimir / (1.0 + ir.norm * ir.norm);
    if (ratio_cas > rep.casimir_constant) {
      rep.casimir_constant = ratio_cas;
      rep.casimir_witness = ir.lambda;
    }
    // kappa - |lambda|^2 = 2 (lambda, rho) >= 0, checked in exact arithmetic.
    if (2 * scaled_inner(rs, ir.lambda, rs.half_sum_rho) < 0)
      rep.lower_bound_ok = false;
  }
  return rep;
}

namespace {

// Euler-Maclaurin tail sum_{n > N} n^{-s} for s > 1.
double em_tail(double s, double last_included) {
  const double a = last_included + 1.0;
  return std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s) +
         (s / 12.0) * std::pow(a, -s - 1.0);
}

}  // namespace

ZetaSum sugiura_zeta(const RootSystemData& rs, double s, double max_norm) {
  if (!(max_norm >= 1.0))
    throw std::invalid_argument("max_norm must be >= 1");
  ZetaSum z;
  z.converged = s > static_cast<double>(rs.rank);
  double partial = 0.0;
  long long last_index = 0;
  for (const Irrep& ir : enumerate_irreps(rs, max_norm)) {
    if (ir.norm == 0.0) continue;
    partial += std::pow(ir.norm, -s);
  }
  z.partial_sum = partial;
  if (!z.converged) {
    z.tail_estimate = std::numeric_limits<double>::infinity();
    return z;
  }
  if (rs.group == GroupId::SU2) {
    // |lambda_n| = n/2, so the tail is 2^s sum_{n > N} n^{-s}.
    last_index = static_cast<long long>(std::floor(2.0 * max_norm));
    z.tail_estimate = std::pow(2.0, s) * em_tail(s, static_cast<double>(last_index));
  } else if (rs.group == GroupId::SO3) {
    // |lambda| = l over integer spins l.
    last_index = static_cast<long long>(std::floor(max_norm));
    z.tail_estimate = em_tail(s, static_cast<double>(last_index));
  } else if (rs.torus_dim == 1) {
    last_index = static_cast<long long>(std::floor(max_norm));
    z.tail_estimate = 2.0 * em_tail(s, static_cast<double>(last_index));
  } else {
    // Integral comparison: |S^{d-1}| R^{d-s} / (s - d).
    const double d = static_cast<double>(rs.torus_dim);
    const double surface = 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
    z.tail_estimate = surface * std::pow(max_norm, d - s) / (s - d);
  }
  return z;
}

}  // namespace ncfa::dual
