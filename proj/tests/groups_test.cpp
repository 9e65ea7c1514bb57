#include <cmath>
#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "ncfa/groups.hpp"
#include "ncfa/rng.hpp"

using namespace ncfa;
using namespace ncfa::groups;

namespace {

const dual::RootSystemData kSu2 = dual::root_system(GroupId::SU2);

Quaternion random_unit_quaternion(std::uint64_t seed) {
  rng::ChunkRng gen(seed);
  Quaternion q;
  gen.normal_pair(q[0], q[1]);
  gen.normal_pair(q[2], q[3]);
  return quat_normalized(q);
}

}  // namespace

TEST_CASE("su2 characters: values, endpoints and domain") {
  for (double theta : {0.0, 0.3, 1.2, M_PI}) CHECK(character_su2(0, theta) == 1.0);
  for (int n : {1, 2, 5, 10}) {
    CHECK(character_su2(n, 0.0) == doctest::Approx(n + 1.0));
    CHECK(character_su2(n, M_PI) ==
          doctest::Approx((n % 2 == 0 ? 1.0 : -1.0) * (n + 1.0)));
  }
  CHECK(character_su2(1, M_PI_2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(character_su2(1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(character_su2(1, M_PI + 0.1), std::invalid_argument);

  SUBCASE("recurrence agrees with the ratio formula") {
    double chi[21];
    for (double theta : {0.05, 0.7, 2.0, 3.1}) {
      characters_su2(std::cos(theta), 20, chi);
      for (int n = 0; n <= 20; ++n)
        CHECK(chi[n] == doctest::Approx(character_su2(n, theta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("quaternion algebra and conjugacy angles") {
  const Quaternion q = random_unit_quaternion(11);
  const Quaternion r = random_unit_quaternion(12);
  CHECK(quat_multiply(q, quat_inverse(q)).isApprox(Quaternion(1, 0, 0, 0), 1e-12));
  CHECK(std::abs(quat_multiply(q, r).norm() - 1.0) < 1e-12);
  // theta(g^{-1}) = theta(g) exactly: inversion keeps the scalar part.
  CHECK(conjugacy_angle(quat_inverse(q)) == conjugacy_angle(q));
  const Quaternion rep = class_representative(0.7);
  CHECK(conjugacy_angle(rep) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("rep_matrix is the symmetric power of the defining representation") {
  const auto irrep_n = [&](int n) {
    return dual::make_irrep(kSu2, Eigen::VectorXi::Constant(1, n));
  };

  SUBCASE("n = 0 is trivial, n = 1 at e is the identity") {
    CHECK(rep_matrix(irrep_n(0), random_unit_quaternion(3))(0, 0) ==
          std::complex<double>(1.0, 0.0));
    CHECK(rep_matrix(irrep_n(1), Quaternion(1, 0, 0, 0))
              .isApprox(Eigen::Matrix2cd::Identity(), 1e-14));
  }

  SUBCASE("inverse multiplies to the identity (n = 3)") {
    const Quaternion q = random_unit_quaternion(42);
    const Eigen::MatrixXcd m =
        rep_matrix(irrep_n(3), q) * rep_matrix(irrep_n(3), quat_inverse(q));
    CHECK((m - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-10);
  }

  SUBCASE("unitarity and trace = character") {
    for (int n : {1, 2, 5, 12, 20, 40, 63}) {
      const Quaternion q = random_unit_quaternion(100 + n);
      const auto m = rep_matrix(irrep_n(n), q);
      CHECK((m * m.adjoint() - Eigen::MatrixXcd::Identity(n + 1, n + 1)).norm() <
            1e-10);
      const double theta = conjugacy_angle(q);
      CHECK(m.trace().real() == doctest::Approx(character_su2(n, theta)).epsilon(1e-10));
      CHECK(std::abs(m.trace().imag()) < 1e-10);
    }
  }

  SUBCASE("homomorphism property for n <= 10") {
    for (int n = 1; n <= 10; ++n) {
      const Quaternion g = random_unit_quaternion(200 + n);
      const Quaternion h = random_unit_quaternion(300 + n);
      const Eigen::MatrixXcd lhs = rep_matrix(irrep_n(n), quat_multiply(g, h));
      const Eigen::MatrixXcd rhs =
          rep_matrix(irrep_n(n), g) * rep_matrix(irrep_n(n), h);
      CHECK((lhs - rhs).norm() < 1e-9);
    }
  }

  SUBCASE("dimension cap and torus input are rejected") {
    CHECK_THROWS_AS(rep_matrix(irrep_n(80), random_unit_quaternion(5)),
                    unsupported_error);
    dual::Irrep torus_ir =
        dual::make_irrep(dual::root_system(GroupId::Torus, 2), Eigen::Vector2i(1, 0));
    CHECK_THROWS_AS(rep_matrix(torus_ir, random_unit_quaternion(5)), unsupported_error);
  }
}

TEST_CASE("haar_sample: reproducibility and empirical character means") {
  SUBCASE("count 0 is rejected") {
    CHECK_THROWS_AS(haar_sample(GroupId::SU2, 0, 0, 1), std::invalid_argument);
  }

  SUBCASE("single element is deterministic for a fixed seed") {
    const auto a = haar_sample(GroupId::SU2, 0, 1, 987);
    const auto b = haar_sample(GroupId::SU2, 0, 1, 987);
    CHECK(a.elements == b.elements);
    CHECK(std::abs(a.quaternion(0).norm() - 1.0) < 1e-12);
  }

  SUBCASE("chunked layout: prefixes are stable under growth") {
    const auto small = haar_sample(GroupId::SU2, 0, 100, 7);
    const auto large = haar_sample(GroupId::SU2, 0, 5000, 7);
    CHECK(small.elements == large.elements.topRows(100));
  }

  SUBCASE("su2 empirical chi_1 mean at n = 1e5, seed 42") {
    const auto s = haar_sample(GroupId::SU2, 0, 100000, 42);
    const double mean = test::mean_character(s, 1);
    CHECK(std::abs(mean) <= 3.0 * 2.0 / std::sqrt(100000.0));  // |chi_1| <= 2
  }

  SUBCASE("torus empirical exp(i theta) mean at n = 1e5, seed 7") {
    const auto s = haar_sample(GroupId::Torus, 1, 100000, 7);
    std::complex<double> acc = 0.0;
    for (Eigen::Index i = 0; i < s.count(); ++i)
      acc += std::exp(std::complex<double>(0.0, s.elements(i, 0)));
    CHECK(std::abs(acc) / 100000.0 <= 3.0 / std::sqrt(100000.0));
  }

  SUBCASE("so3 samples are canonicalized") {
    const auto s = haar_sample(GroupId::SO3, 0, 512, 3);
    for (Eigen::Index i = 0; i < s.count(); ++i) CHECK(s.elements(i, 0) >= 0.0);
  }
}

TEST_CASE("weyl_quadrature on class functions") {
  SUBCASE("normalization: integral of 1 is 1") {
    CHECK(weyl_quadrature(kSu2, [](double) { return 1.0; }, 64) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("chi_1 is a unit vector") {
    CHECK(weyl_quadrature(
              kSu2, [](double t) { return std::pow(character_su2(1, t), 2); }, 64) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("distinct characters are orthogonal") {
    const double v = weyl_quadrature(
        kSu2, [](double t) { return character_su2(1, t) * character_su2(2, t); },
        128);
    CHECK(std::abs(v) < 1e-12);
  }

  SUBCASE("orthonormality table for all a, b <= 20") {
    for (int a = 0; a <= 20; ++a)
      for (int b = a; b <= 20; ++b) {
        const double v = weyl_quadrature(
            kSu2,
            [&](double t) { return character_su2(a, t) * character_su2(b, t); },
            256);
        CHECK(std::abs(v - (a == b ? 1.0 : 0.0)) < 1e-10);
      }
  }

  SUBCASE("torus:1 haar integral") {
    const auto torus = dual::root_system(GroupId::Torus, 1);
    CHECK(weyl_quadrature(torus, [](double t) { return std::cos(3 * t); }, 64) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(weyl_quadrature(torus, [](double) { return 1.0; }, 64) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("npoints below 16 is rejected") {
    CHECK_THROWS_AS(weyl_quadrature(kSu2, [](double) { return 1.0; }, 8),
                    std::invalid_argument);
  }
}

TEST_CASE("haar empirical character means stay below the hard 6 sigma bound") {
  // flag level is 3 d / sqrt(n); the hard failure level is 6 d / sqrt(n).
  const auto s = haar_sample(GroupId::SU2, 0, 20000, 2024);
  for (int n = 1; n <= 6; ++n) {
    const double d = n + 1.0;
    const double mean = test::mean_character(s, n);
    CHECK(std::abs(mean) <= 6.0 * d / std::sqrt(20000.0));
  }
}
