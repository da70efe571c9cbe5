#include "symmwave/plancherel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace symmwave;

namespace {

RootSystem sys(const std::string& cat, const std::string& preset = "normal") {
  return build_root_system(cat, preset_multiplicities(cat, preset));
}

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

}  // namespace

TEST(Plancherel, H3DensityIsLambdaSquared) {
  const auto rs = sys("A1", "hyperbolic:3");
  const auto pd = make_density(rs);
  for (double l : {1e-3, 0.5, 2.0, 77.0, 1e4}) EXPECT_NEAR(density(pd, v1(l)) / (l * l), 1.0, 1e-11) << l;
  EXPECT_EQ(density(pd, v1(0.0)), 0.0);
}

TEST(Plancherel, H2DensityClosedForm) {
  // m = 1: |Gamma(i l + 1/2) / Gamma(i l)|^2 Gamma(1/2)^2 = pi l tanh(pi l).
  const auto rs = sys("A1", "hyperbolic:2");
  const auto pd = make_density(rs);
  for (double l : {0.01, 0.3, 1.0, 5.0, 40.0}) {
    const double ref = pi * l * std::tanh(pi * l);
    EXPECT_NEAR(density(pd, v1(l)) / ref, 1.0, 1e-11) << l;
  }
}

TEST(Plancherel, FactorEvenness) {
  const auto rs = sys("BC1");
  const auto pd = make_density(rs);
  for (double v : {0.1, 1.3, 9.0}) EXPECT_NEAR(c_alpha_inv_sq(pd.factors[0], v), c_alpha_inv_sq(pd.factors[0], -v), 1e-12);
}

TEST(Plancherel, WeylInvariance) {
  std::mt19937_64 rng(11);
  for (const std::string c : {"A2", "B2", "G2", "A3"}) {
    const auto rs = sys(c);
    const auto pd = make_density(rs);
    for (int i = 0; i < 20; ++i) {
      const Vec l = random_unit(rng, rs.rank) * 3.0;
      const double ref = density(pd, l);
      for (const auto& w : rs.weyl.elements) EXPECT_NEAR(density(pd, w * l) / ref, 1.0, 1e-12) << c;
    }
  }
}

TEST(Plancherel, LeadingCoefficientMatchesLargeLambda) {
  const auto rs = sys("A2");
  const auto pd = make_density(rs);
  Vec l(2);
  l << 3e4, 1.1e4;
  EXPECT_NEAR(density(pd, l) / density_homogeneous(pd, l), 1.0, 1e-4);
}

TEST(Plancherel, ComplexTypeRankOneClosedForm) {
  const auto rs = sys("A1", "hyperbolic:3");
  for (double h : {0.1, 1.0, 4.0})
    for (double l : {0.0, 0.7, 3.0}) {
      const cplx phi = spherical_function(rs, v1(l), v1(h));
      const double ref = l == 0.0 ? h / std::sinh(h) : std::sin(l * h) / (l * std::sinh(h));
      EXPECT_NEAR(phi.real(), ref, 1e-12);
    }
}

TEST(Plancherel, OdeAgreesWithKIntegral) {
  // Independent routes: radial ODE vs the integral over K.
  for (const std::string p : {"hyperbolic:2", "hyperbolic:4", "hyperbolic:5"}) {
    const auto rs = sys("A1", p);
    for (double h : {0.2, 1.5, 3.0})
      for (cplx l : {cplx(0.0), cplx(0.8), cplx(2.5, -0.3)}) {
        const cplx a = spherical_function(rs, Eigen::VectorXcd(Eigen::VectorXcd::Constant(1, l)), v1(h));
        const cplx b = spherical_function_integral(rs, l, h);
        EXPECT_LT(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(b))) << p << " h=" << h << " l=" << l;
      }
  }
}

TEST(Plancherel, ComplexTypeHigherRankEigenfunction) {
  const auto rs = sys("A2", "complex");
  Vec l(2), H(2);
  l << 0.7, -0.4;
  H << 0.5, 1.3;
  ASSERT_TRUE(in_open_chamber(rs, H));
  auto phi = [&](const Vec& x) { return spherical_function(rs, l, x).real(); };
  const double e = 1e-4;
  double lap = 0.0;
  Vec grad(2);
  for (int i = 0; i < 2; ++i) {
    Vec p = H, m = H;
    p[i] += e;
    m[i] -= e;
    lap += (phi(p) - 2 * phi(H) + phi(m)) / (e * e);
    grad[i] = (phi(p) - phi(m)) / (2 * e);
  }
  for (const auto& r : rs.positive_roots) lap += r.mult / std::tanh(r.vec.dot(H)) * r.vec.dot(grad);
  const double eig = -(l.squaredNorm() + half_sum_rho(rs).squaredNorm());
  EXPECT_NEAR(lap, eig * phi(H), 2e-5);
  // Small x: phi -> 1.
  EXPECT_NEAR(phi(H * 1e-4), 1.0, 1e-6);
}

TEST(Plancherel, HigherRankOffComplexIsUnsupported) {
  const auto rs = sys("A2");
  Vec l(2), H(2);
  l << 1, 0;
  H << 0.5, 1.0;
  EXPECT_THROW(spherical_function(rs, l, H), Unsupported);
  EXPECT_NEAR(spherical_function(rs, l, Vec::Zero(2)).real(), 1.0, 0.0);
}

TEST(Plancherel, PhiZero) {
  const auto h3 = sys("A1", "hyperbolic:3");
  for (double h : {0.5, 2.0, 8.0}) {
    const auto p = phi_zero(h3, v1(h));
    EXPECT_TRUE(p.exact);
    EXPECT_NEAR(p.value, h / std::sinh(h), 1e-12);
  }
  const auto a2 = sys("A2");
  Vec H(2);
  H << 0.2, 1.0;
  EXPECT_FALSE(phi_zero(a2, H).exact);
  const auto env = envelope_check(sys("A1", "hyperbolic:4"));
  EXPECT_GT(env.min_ratio, 0.1);
  EXPECT_LT(env.max_ratio, 10.0);
}
