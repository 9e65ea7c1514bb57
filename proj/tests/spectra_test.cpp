#include <cmath>
#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "ncfa/spectra.hpp"

using namespace ncfa;
using namespace ncfa::spectra;
using measures::CentralMeasureSpec;

namespace {

const dual::RootSystemData kSu2 = dual::root_system(GroupId::SU2);
const dual::RootSystemData kT1 = dual::root_system(GroupId::Torus, 1);

CentralMeasureSpec heat(double t, const dual::RootSystemData& rs) {
  return CentralMeasureSpec::cid(measures::BernsteinFunction::linear(t), rs.group,
                                 rs.torus_dim);
}

}  // namespace

TEST_CASE("transform_central: family formulas and the probability contract") {
  const auto irreps = dual::enumerate_irreps(kSu2, 10.0);

  SUBCASE("Dirac transforms to the identity block everywhere") {
    const auto c = transform_central(CentralMeasureSpec::dirac(GroupId::SU2), kSu2,
                                     irreps);
    for (const auto& block : c.blocks)
      CHECK(block.scalar_value() == std::complex<double>(1.0, 0.0));
  }

  SUBCASE("Haar keeps only the trivial block") {
    const auto c =
        transform_central(CentralMeasureSpec::haar(GroupId::SU2), kSu2, irreps);
    for (std::size_t i = 0; i < c.size(); ++i)
      CHECK(c.blocks[i].scalar_value().real() ==
            (c.irreps[i].norm == 0.0 ? 1.0 : 0.0));
    CHECK(c.is_probability());
  }

  SUBCASE("Laplace beta = 1 at n = 2: c = 1/(1 + kappa) = 1/3") {
    const auto spec = CentralMeasureSpec::cid(
        measures::BernsteinFunction::laplace(1.0, 1.0), GroupId::SU2);
    const auto c = transform_central(spec, kSu2, irreps);
    CHECK(c.blocks[2].scalar_value().real() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(c.is_probability());
  }

  SUBCASE("group mismatch is rejected") {
    CHECK_THROWS_AS(
        transform_central(CentralMeasureSpec::haar(GroupId::Torus, 1), kSu2, irreps),
        std::invalid_argument);
  }
}

TEST_CASE("empirical_transform") {
  const auto irreps = dual::enumerate_irreps(kSu2, 3.0);

  SUBCASE("a single identity sample gives identity blocks (full matrix)") {
    groups::SampleSet one;
    one.group = GroupId::SU2;
    one.elements.resize(1, 4);
    one.elements << 1.0, 0.0, 0.0, 0.0;
    const auto c = empirical_transform(one, kSu2, irreps, TransformMode::FullMatrix);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto d = static_cast<Eigen::Index>(c.irreps[i].dim);
      CHECK((c.blocks[i].matrix_value() - Eigen::MatrixXcd::Identity(d, d)).norm() <
            1e-12);
    }
  }

  SUBCASE("haar samples: nontrivial block traces concentrate near 0") {
    const auto s = groups::haar_sample(GroupId::SU2, 0, 100000, 42);
    const auto c = empirical_transform(s, kSu2, irreps, TransformMode::TraceOnly);
    const double bound = 3.0 * 2.0 / std::sqrt(100000.0);
    CHECK(std::abs(c.blocks[1].trace(c.irreps[1].dim)) <= bound);
  }

  SUBCASE("gaussian heat samples: trace near d exp(-t kappa)") {
    const auto spec = heat(0.1, kSu2);
    const auto s = measures::sample_central(spec, kSu2, 100000, 42);
    const auto c = empirical_transform(s, kSu2, irreps, TransformMode::TraceOnly);
    const double expected = 2.0 * std::exp(-0.075);  // d_1 c_1, kappa_1 = 3/4
    CHECK(std::abs(c.blocks[1].trace(2).real() - expected) <=
          3.0 * 2.0 / std::sqrt(100000.0));
  }

  SUBCASE("full-matrix mode is unsupported on the torus") {
    const auto s = groups::haar_sample(GroupId::Torus, 1, 16, 1);
    CHECK_THROWS_AS(empirical_transform(s, kT1, dual::enumerate_irreps(kT1, 2.0),
                                        TransformMode::FullMatrix),
                    unsupported_error);
  }

  SUBCASE("empirical blocks converge to analytic blocks as n grows") {
    const auto spec = heat(0.2, kSu2);
    const auto analytic = transform_central(spec, kSu2, irreps);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n : {1000, 10000, 100000}) {
      const auto s = measures::sample_central(spec, kSu2, n, 7);
      const auto emp = empirical_transform(s, kSu2, irreps, TransformMode::TraceOnly);
      double worst = 0.0;
      for (std::size_t i = 0; i < emp.size(); ++i)
        worst = std::max(worst,
                         std::abs(emp.blocks[i].scalar_value().real() -
                                  analytic.blocks[i].scalar_value().real()));
      CHECK(worst < prev);  // nested chunked samples at a fixed seed
      prev = worst;
    }
  }
}

TEST_CASE("synthesize") {
  SUBCASE("Haar density is identically 1") {
    const auto c = transform_central(CentralMeasureSpec::haar(GroupId::SU2), kSu2,
                                     dual::enumerate_irreps(kSu2, 5.0));
    for (double theta : {0.0, 0.4, 1.9, M_PI})
      CHECK(synthesize(c, theta) == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("heat density at the identity is the dimension-weighted trace") {
    const auto c = transform_central(heat(0.3, kSu2), kSu2);
    double expected = 0.0;
    for (const auto& ir : c.irreps)
      expected += static_cast<double>(ir.dim * ir.dim) * std::exp(-0.3 * ir.casimir);
    CHECK(synthesize(c, 0.0) == doctest::Approx(expected).epsilon(1e-14));
  }

  SUBCASE("circle heat kernel matches the wrapped-Gaussian oracle") {
    const double t = 0.2;
    const auto c = transform_central(heat(t, kT1), kT1);
    for (double theta : {0.0, 0.5, 2.2, 5.9})
      CHECK(synthesize(c, Eigen::VectorXd::Constant(1, theta)) ==
            doctest::Approx(test::wrapped_gaussian(theta, t)).epsilon(1e-8));
  }

  SUBCASE("angle input with matrix blocks is rejected") {
    groups::SampleSet one;
    one.group = GroupId::SU2;
    one.elements.resize(1, 4);
    one.elements << 1.0, 0.0, 0.0, 0.0;
    const auto c = empirical_transform(one, kSu2, dual::enumerate_irreps(kSu2, 2.0),
                                       TransformMode::FullMatrix);
    CHECK_THROWS_AS(synthesize(c, 0.5), std::invalid_argument);
    CHECK(synthesize_element(c, groups::Quaternion(1, 0, 0, 0)) > 0.0);
  }

  SUBCASE("positivity under truncation for heat densities") {
    for (double t : {0.1, 0.2, 0.5}) {
      const auto c = transform_central(heat(t, kSu2), kSu2);
      for (int i = 0; i < 512; ++i)
        CHECK(synthesize(c, M_PI * i / 511.0) >= -1e-8);
    }
  }
}

TEST_CASE("plancherel_norm_sq") {
  SUBCASE("Haar has unit norm") {
    const auto c = transform_central(CentralMeasureSpec::haar(GroupId::SU2), kSu2,
                                     dual::enumerate_irreps(kSu2, 4.0));
    CHECK(plancherel_norm_sq(c) == 1.0);
  }

  SUBCASE("heat kernel: spectral sum equals the quadrature norm") {
    const double t = 0.2;
    const auto c = transform_central(heat(t, kSu2), kSu2);
    double spectral = 0.0;
    for (const auto& ir : c.irreps)
      spectral += static_cast<double>(ir.dim * ir.dim) * std::exp(-2.0 * t * ir.casimir);
    CHECK(plancherel_norm_sq(c) == doctest::Approx(spectral).epsilon(1e-14));
    const double quad = groups::weyl_quadrature(
        kSu2, [&](double theta) { return std::pow(synthesize(c, theta), 2); }, 512);
    CHECK(std::abs(quad - spectral) < 1e-8);
  }

  SUBCASE("Dirac partial sums grow like cutoff^3") {
    const auto d = CentralMeasureSpec::dirac(GroupId::SU2);
    const double s1 = plancherel_norm_sq(
        transform_central(d, kSu2, dual::enumerate_irreps(kSu2, 20.0)));
    const double s2 = plancherel_norm_sq(
        transform_central(d, kSu2, dual::enumerate_irreps(kSu2, 40.0)));
    CHECK(s2 / s1 == doctest::Approx(8.0).epsilon(0.15));
  }
}

TEST_CASE("parseval") {
  const auto gs = transform_central(heat(0.15, kSu2), kSu2,
                                    dual::enumerate_irreps(kSu2, 12.0));
  const auto gt = transform_central(heat(0.25, kSu2), kSu2,
                                    dual::enumerate_irreps(kSu2, 12.0));

  SUBCASE("parseval(f, f) = plancherel(f)") {
    CHECK(parseval(gs, gs).real() ==
          doctest::Approx(plancherel_norm_sq(gs)).epsilon(1e-14));
    CHECK(parseval(gs, gs).imag() == 0.0);
  }

  SUBCASE("heat semigroup: <f_s, f_t> = f_{s+t}(e)") {
    const auto sum = transform_central(heat(0.4, kSu2), kSu2,
                                       dual::enumerate_irreps(kSu2, 12.0));
    CHECK(parseval(gs, gt).real() ==
          doctest::Approx(synthesize(sum, 0.0)).epsilon(1e-12));
  }

  SUBCASE("pairing against Haar reads off the trivial coefficient") {
    const auto haar = transform_central(CentralMeasureSpec::haar(GroupId::SU2), kSu2,
                                        dual::enumerate_irreps(kSu2, 12.0));
    CHECK(parseval(gs, haar).real() == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("cutoff mismatch is rejected") {
    const auto small = transform_central(heat(0.15, kSu2), kSu2,
                                         dual::enumerate_irreps(kSu2, 6.0));
    CHECK_THROWS_AS(parseval(gs, small), std::invalid_argument);
  }
}

TEST_CASE("convolve") {
  const auto irreps = dual::enumerate_irreps(kSu2, 12.0);
  const auto gs = transform_central(heat(0.15, kSu2), kSu2, irreps);
  const auto gt = transform_central(heat(0.25, kSu2), kSu2, irreps);

  SUBCASE("Dirac is the identity of convolution") {
    const auto dirac =
        transform_central(CentralMeasureSpec::dirac(GroupId::SU2), kSu2, irreps);
    const auto c = convolve(gs, dirac);
    for (std::size_t i = 0; i < c.size(); ++i)
      CHECK(c.blocks[i].scalar_value() == gs.blocks[i].scalar_value());
    CHECK_FALSE(c.truncated);
  }

  SUBCASE("heat semigroup adds exponents") {
    const auto sum = transform_central(heat(0.4, kSu2), kSu2, irreps);
    const auto c = convolve(gs, gt);
    for (std::size_t i = 0; i < c.size(); ++i)
      CHECK(c.blocks[i].scalar_value().real() ==
            doctest::Approx(sum.blocks[i].scalar_value().real()).epsilon(1e-14));
  }

  SUBCASE("Haar is absorbing") {
    const auto haar =
        transform_central(CentralMeasureSpec::haar(GroupId::SU2), kSu2, irreps);
    const auto c = convolve(gs, haar);
    for (std::size_t i = 0; i < c.size(); ++i)
      CHECK(c.blocks[i].scalar_value().real() ==
            (c.irreps[i].norm == 0.0 ? 1.0 : 0.0));
  }

  SUBCASE("mismatched cutoffs truncate to the intersection and flag it") {
    const auto small = transform_central(heat(0.25, kSu2), kSu2,
                                         dual::enumerate_irreps(kSu2, 6.0));
    const auto c = convolve(gs, small);
    CHECK(c.truncated);
    CHECK(c.cutoff_norm == 6.0);
  }

  SUBCASE("associativity on scalar families") {
    const auto gu = transform_central(heat(0.35, kSu2), kSu2, irreps);
    const auto left = convolve(convolve(gs, gt), gu);
    const auto right = convolve(gs, convolve(gt, gu));
    for (std::size_t i = 0; i < left.size(); ++i)
      CHECK(std::abs(left.blocks[i].scalar_value() - right.blocks[i].scalar_value()) <
            1e-12);
    // trivial block of a probability product stays exactly 1
    CHECK(left.blocks[0].scalar_value().real() == 1.0);
  }
}

TEST_CASE("analysis-synthesis round trip recovers the stored coefficients") {
  const auto c = transform_central(heat(0.2, kSu2), kSu2);
  for (std::size_t i = 0; i < std::min<std::size_t>(c.size(), 8); ++i) {
    const int n = c.irreps[i].lambda[0];
    const double recovered = groups::weyl_quadrature(
        kSu2,
        [&](double theta) {
          return synthesize(c, theta) * groups::character_su2(n, theta);
        },
        256);
    const double stored =
        static_cast<double>(c.irreps[i].dim) * c.blocks[i].scalar_value().real();
    // <f, chi_n> = d_n c_n under the normalized class integral
    CHECK(std::abs(recovered - stored) < 1e-9);
  }
}
