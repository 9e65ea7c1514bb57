#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ncfa/common.hpp"

namespace ncfa::dual {

//! Rank-1 (or torus) root/weight data.  Weights are integer coordinate
//! vectors in the basis of fundamental weights (su2/so3) or the standard
//! lattice basis (torus).  The Ad-invariant inner product is
//!   (x, y) = x^T gram_scaled y / gram_scale,
//! with gram_scale chosen so all entries are exact integers.  For su2 the
//! scale makes (omega, omega) = 1/4, which gives |lambda_n| = n/2 and
//! kappa_n = n(n+2)/4.
struct RootSystemData {
  GroupId group = GroupId::SU2;
  int torus_dim = 0;  // > 0 only for the torus
  int rank = 1;       // r
  int dim = 3;        // manifold dimension d
  int num_positive_roots = 1;        // m = (d - r) / 2
  Eigen::MatrixXi positive_roots;    // one root per row
  Eigen::MatrixXi fundamental_roots; // one root per row
  Eigen::VectorXi half_sum_rho;      // exact: half the sum of positive roots
  Eigen::MatrixXi gram_scaled;
  long long gram_scale = 1;
};

RootSystemData root_system(GroupId id, int torus_dim = 1);
RootSystemData root_system(const std::string& name);

//! One point of the unitary dual.
struct Irrep {
  Eigen::VectorXi lambda;  // highest weight, exact integer coordinates
  long long dim = 1;       // d_lambda
  double casimir = 0.0;    // kappa_lambda = (lambda, lambda + 2 rho)
  double norm = 0.0;       // |lambda|
};

bool lambda_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b);
bool irrep_order(const Irrep& a, const Irrep& b);  // (norm, lex)

double weight_norm(const RootSystemData& rs, const Eigen::VectorXi& lambda);

//! Weyl dimension formula prod (lambda + rho, alpha) / prod (rho, alpha),
//! evaluated in exact integer arithmetic.  Always 1 on the torus.
long long weyl_dimension(const RootSystemData& rs, const Eigen::VectorXi& lambda);

//! (lambda, lambda + 2 rho) under the fixed normalization.
double casimir(const RootSystemData& rs, const Eigen::VectorXi& lambda);

Irrep make_irrep(const RootSystemData& rs, const Eigen::VectorXi& lambda);

//! All dual points with |lambda| <= max_norm, sorted by (norm, lex).
//! su2 is indexed by n >= 0 with |lambda_n| = n/2, so3 by even n only,
//! torus(d) by k in Z^d.
std::vector<Irrep> enumerate_irreps(const RootSystemData& rs, double max_norm);

struct InequalityReport {
  double weyl_constant = 0.0;     // smallest N with d <= N |lambda|^m
  double casimir_constant = 0.0;  // smallest C with kappa <= C (1 + |lambda|^2)
  Eigen::VectorXi weyl_witness;
  Eigen::VectorXi casimir_witness;
  bool lower_bound_ok = false;    // |lambda|^2 <= kappa for every lambda
  std::size_t checked = 0;
};

InequalityReport verify_inequalities(const RootSystemData& rs, double max_norm);

struct ZetaSum {
  double partial_sum = 0.0;
  bool converged = false;
  double tail_estimate = 0.0;
};

//! Partial sum of sum_{lambda != 0} |lambda|^{-s} over |lambda| <= max_norm.
//! Converges iff s > rank; the tail estimate comes from Euler-Maclaurin
//! (rank 1) or an integral comparison (torus, d >= 2).
ZetaSum sugiura_zeta(const RootSystemData& rs, double s, double max_norm);

}  // namespace ncfa::dual
