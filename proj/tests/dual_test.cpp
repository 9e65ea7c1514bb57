#include <cmath>

#include "doctest.h"
#include "ncfa/dual.hpp"

using namespace ncfa;
using namespace ncfa::dual;

namespace {

Eigen::VectorXi lam1(int n) { return Eigen::VectorXi::Constant(1, n); }

Eigen::VectorXi lam2(int a, int b) {
  Eigen::VectorXi v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("root system data satisfies the structural identities") {
  for (const auto& rs : {root_system(GroupId::SU2), root_system(GroupId::SO3),
                         root_system(GroupId::Torus, 2)}) {
    CHECK(rs.num_positive_roots == (rs.dim - rs.rank) / 2);
    CHECK(2 * rs.num_positive_roots == rs.dim - rs.rank);
    // rho is half the sum of positive roots, exactly.
    Eigen::VectorXi sum = Eigen::VectorXi::Zero(rs.rank);
    for (int a = 0; a < rs.num_positive_roots; ++a)
      sum += rs.positive_roots.row(a).transpose();
    CHECK(sum == 2 * rs.half_sum_rho);
  }
  const auto torus = root_system(GroupId::Torus, 3);
  CHECK(torus.num_positive_roots == 0);
  CHECK(torus.rank == 3);
  CHECK(torus.dim == 3);
}

TEST_CASE("enumerate_irreps lists exactly the dual points below the cutoff") {
  const auto su2 = root_system(GroupId::SU2);

  SUBCASE("su2 up to norm 1: n in {0,1,2}") {
    const auto irreps = enumerate_irreps(su2, 1.0);
    REQUIRE(irreps.size() == 3);
    for (int n = 0; n < 3; ++n) {
      CHECK(irreps[n].lambda[0] == n);
      CHECK(irreps[n].norm == doctest::Approx(0.5 * n));
    }
  }

  SUBCASE("torus:1 up to norm 2: k in {-2..2}, sorted by (norm, lex)") {
    const auto irreps = enumerate_irreps(root_system(GroupId::Torus, 1), 2.0);
    REQUIRE(irreps.size() == 5);
    CHECK(irreps[0].lambda[0] == 0);
    CHECK(irreps[1].lambda[0] == -1);
    CHECK(irreps[2].lambda[0] == 1);
    CHECK(irreps[3].lambda[0] == -2);
    CHECK(irreps[4].lambda[0] == 2);
  }

  SUBCASE("so3 up to norm 2: even n only") {
    const auto irreps = enumerate_irreps(root_system(GroupId::SO3), 2.0);
    REQUIRE(irreps.size() == 3);
    CHECK(irreps[0].lambda[0] == 0);
    CHECK(irreps[1].lambda[0] == 2);
    CHECK(irreps[2].lambda[0] == 4);
  }

  SUBCASE("non-positive cutoff is rejected") {
    CHECK_THROWS_AS(enumerate_irreps(su2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_irreps(su2, -1.0), std::invalid_argument);
  }

  SUBCASE("monotone exhaustion: smaller cutoffs give prefixes") {
    const auto small = enumerate_irreps(su2, 3.0);
    const auto large = enumerate_irreps(su2, 7.5);
    REQUIRE(small.size() <= large.size());
    for (std::size_t i = 0; i < small.size(); ++i)
      CHECK(small[i].lambda == large[i].lambda);
  }
}

TEST_CASE("weyl_dimension evaluates the product formula exactly") {
  const auto su2 = root_system(GroupId::SU2);
  const auto so3 = root_system(GroupId::SO3);

  CHECK(weyl_dimension(su2, lam1(0)) == 1);
  CHECK(weyl_dimension(su2, lam1(5)) == 6);
  CHECK(weyl_dimension(so3, lam1(4)) == 5);  // l = 2 -> 2l + 1
  CHECK(weyl_dimension(root_system(GroupId::Torus, 2), lam2(3, -4)) == 1);

  // d_n = n + 1 for every su2 weight, from the product formula itself.
  for (int n = 0; n <= 100; ++n)
    CHECK(weyl_dimension(su2, lam1(n)) == n + 1);

  CHECK_THROWS_AS(weyl_dimension(su2, lam1(-1)), std::invalid_argument);
  CHECK_THROWS_AS(weyl_dimension(so3, lam1(3)), std::invalid_argument);
}

TEST_CASE("casimir matches the closed forms of the chosen normalization") {
  const auto su2 = root_system(GroupId::SU2);
  CHECK(casimir(su2, lam1(0)) == 0.0);
  CHECK(casimir(su2, lam1(2)) == 2.0);
  CHECK(casimir(root_system(GroupId::Torus, 2), lam2(3, 4)) == 25.0);
  for (int n = 0; n <= 100; ++n)
    CHECK(casimir(su2, lam1(n)) == static_cast<double>(n * (n + 2)) / 4.0);
  // so3 in spin labels: kappa = l(l+1)
  const auto so3 = root_system(GroupId::SO3);
  for (int l = 0; l <= 20; ++l)
    CHECK(casimir(so3, lam1(2 * l)) == static_cast<double>(l * (l + 1)));
}

TEST_CASE("verify_inequalities finds the sharp constants") {
  const auto su2 = root_system(GroupId::SU2);
  const auto rep = verify_inequalities(su2, 50.0);
  // sup (n+1)/(n/2) over n >= 1 is attained at n = 1 with value 4.
  CHECK(rep.weyl_constant == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep.weyl_witness[0] == 1);
  CHECK(rep.lower_bound_ok);
  CHECK(rep.checked == 100);

  SUBCASE("constants only grow with the range (sup over supersets)") {
    const auto wider = verify_inequalities(su2, 80.0);
    CHECK(wider.weyl_constant >= rep.weyl_constant);
    CHECK(wider.casimir_constant >= rep.casimir_constant);
  }

  SUBCASE("torus has m = 0 and N = 1") {
    const auto rep1 = verify_inequalities(root_system(GroupId::Torus, 1), 50.0);
    CHECK(rep1.weyl_constant == 1.0);
    CHECK(rep1.lower_bound_ok);
  }

  CHECK_THROWS_AS(verify_inequalities(su2, 0.5), std::invalid_argument);
}

TEST_CASE("sugiura_zeta partial sums, convergence flag and tails") {
  const auto su2 = root_system(GroupId::SU2);

  SUBCASE("su2 zeta(2) = 4 zeta_Riemann(2) = 2 pi^2 / 3") {
    const auto z = sugiura_zeta(su2, 2.0, 100.0);
    CHECK(z.converged);
    CHECK(z.partial_sum + z.tail_estimate ==
          doctest::Approx(2.0 * M_PI * M_PI / 3.0).epsilon(1e-9));
  }

  SUBCASE("s = rank diverges") {
    const auto z = sugiura_zeta(su2, 1.0, 50.0);
    CHECK_FALSE(z.converged);
    CHECK(std::isinf(z.tail_estimate));
  }

  SUBCASE("torus:2 with s = 3 converges to a finite value") {
    const auto z = sugiura_zeta(root_system(GroupId::Torus, 2), 3.0, 200.0);
    CHECK(z.converged);
    CHECK(std::isfinite(z.partial_sum));
    CHECK(z.tail_estimate < 0.1);
  }

  SUBCASE("partial sums are nondecreasing in the cutoff") {
    double prev = 0.0;
    for (double r : {10.0, 20.0, 40.0, 80.0}) {
      const auto z = sugiura_zeta(su2, 1.5, r);
      CHECK(z.partial_sum >= prev);
      prev = z.partial_sum;
    }
  }

  SUBCASE("so3 zeta is the Riemann zeta over integer spins") {
    const auto z = sugiura_zeta(root_system(GroupId::SO3), 2.0, 200.0);
    CHECK(z.partial_sum + z.tail_estimate ==
          doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-9));
  }
}
