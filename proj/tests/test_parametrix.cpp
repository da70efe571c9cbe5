#include "symmwave/parametrix.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

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

// J^{1/2} Delta_rad J^{-1/2} by central differences: a second route to omega.
double omega_fd(const RootSystem& rs, const Vec& H, double e = 1e-4) {
  auto f = [&](const Vec& x) { return J_inv_sqrt(rs, x); };
  const int l = rs.rank;
  const double c = f(H);
  double lap = 0.0;
  Vec grad(l);
  for (int i = 0; i < l; ++i) {
    const Vec d = Vec::Unit(l, i) * e;
    lap += (f(H + d) - 2 * c + f(H - d)) / (e * e);
    grad[i] = (f(H + d) - f(H - d)) / (2 * e);
  }
  for (const auto& r : rs.positive_roots) lap += r.mult / std::tanh(r.vec.dot(H)) * r.vec.dot(grad);
  return lap / c;
}

}  // namespace

TEST(Parametrix, JacobianBasics) {
  const auto rs = sys("B2");
  EXPECT_EQ(jacobian_J(rs, Vec::Zero(2)), 1.0);
  Vec H(2);
  H << 0.9, 0.3;
  for (const auto& w : rs.weyl.elements) EXPECT_NEAR(jacobian_J(rs, w * H), jacobian_J(rs, H), 1e-12);
  const auto h3 = sys("A1", "hyperbolic:3");
  EXPECT_NEAR(jacobian_J(h3, v1(1.2)), std::pow(std::sinh(1.2) / 1.2, 2), 1e-14);
}

TEST(Parametrix, OmegaRankOneClosedForm) {
  for (const std::string p : {"hyperbolic:2", "hyperbolic:4", "hyperbolic:7"}) {
    const auto rs = sys("A1", p);
    for (double h : {1e-4, 0.01, 0.5, 3.0, 12.0})
      EXPECT_NEAR(omega_fn(rs, v1(h)), omega_rank_one_closed_form(rs, h), 1e-10) << p << " " << h;
  }
  EXPECT_THROW(omega_rank_one_closed_form(sys("BC1"), 1.0), Unsupported);
}

TEST(Parametrix, OmegaMatchesFiniteDifferences) {
  for (const std::string c : {"A2", "B2", "G2", "BC1"}) {
    const auto rs = sys(c);
    Vec H = half_sum_rho(rs);
    H *= 0.7 / H.norm();
    EXPECT_NEAR(omega_fn(rs, H), omega_fd(rs, H), 1e-5) << c;
  }
}

TEST(Parametrix, OmegaConstantForComplexType) {
  for (const auto& rs : {sys("A2", "complex"), sys("B2", "complex"), sys("A1", "hyperbolic:3")}) {
    EXPECT_TRUE(omega_is_constant(rs));
    Vec H = half_sum_rho(rs) * 0.37;
    EXPECT_NEAR(omega_fn(rs, H), -half_sum_rho(rs).squaredNorm(), 1e-10);
  }
  EXPECT_FALSE(omega_is_constant(sys("A2")));
  EXPECT_THROW(omega_fn(sys("A2"), Vec::Zero(2)), DomainError);
}

TEST(Parametrix, CancellationSumsVanish) {
  for (const std::string c : {"A2", "A3", "B2", "G2"}) {
    const auto rs = sys(c);
    Vec H = half_sum_rho(rs);
    for (double s : {0.05, 0.8, 3.0}) {
      const auto cs = cancellation_check(rs, H * s / H.norm());
      EXPECT_LT(std::abs(cs.r1), 1e-9 / (s * s)) << c;
      EXPECT_LT(std::abs(cs.r2), 1e-9) << c;
    }
  }
}

TEST(Parametrix, U0FromDeltaMatching) {
  // H^3: the sphere S^0 carries two points with density 1, so U0 = pi 2 Gamma(3) / Gamma(2) = 4 pi.
  const auto h3 = sys("A1", "hyperbolic:3");
  EXPECT_NEAR(u0_normalisation(make_density(h3)), 4 * pi, 1e-12);
  EXPECT_NEAR(u0_normalisation(make_density(h3), 2.0), 8 * pi, 1e-12);
}

TEST(Parametrix, ConstantOmegaRecursionIsExponential) {
  const auto rs = sys("A2", "complex");
  const auto t = uk_recursion(rs, {1.0, 0.01}, 4);
  const double w0 = -half_sum_rho(rs).squaredNorm();
  double fact = 1.0;
  for (int k = 0; k <= 4; ++k) {
    if (k) fact *= k;
    EXPECT_NEAR(t.U[k][17] / t.U0, std::pow(w0, k) / fact, 1e-12);
  }
  for (const auto& r : transport_residual(t)) EXPECT_LT(r.max_rel, 1e-12);
}

TEST(Parametrix, RankOneTransportConvergesAtSecondOrder) {
  // Every order k differences U_k once more, so rounding grows like eps/h^{2k+2};
  // h = 4e-3 -> 2e-3 stays in the truncation-dominated range up to k = 2.
  const auto rs = sys("A1", "hyperbolic:6");
  const auto coarse = transport_residual(uk_recursion(rs, {2.0, 4e-3}, 3));
  const auto fine = transport_residual(uk_recursion(rs, {2.0, 2e-3}, 3));
  ASSERT_EQ(fine.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT(fine[k].max_rel, 1e-6) << k;
    EXPECT_GT(fine[k].max_abs, 0.0);
    EXPECT_NEAR(std::log2(coarse[k].max_abs / fine[k].max_abs), 2.0, 0.3) << k;
  }
}

TEST(Parametrix, U1AtOriginIsOmegaTimesU0) {
  // (k+1) U_{k+1}(0) = [Delta + omega] U_k(0); U_0 constant, omega(0) = -1/3 on H^2.
  const auto rs = sys("A1", "hyperbolic:2");
  const auto t = uk_recursion(rs, {1.0, 1e-3}, 1);
  EXPECT_NEAR(table_eval(t, 1, v1(0.0)) / t.U0, -1.0 / 3.0, 1e-6);
}

TEST(Parametrix, RankTwoRecursion) {
  const auto rs = sys("A2");
  const auto t = uk_recursion(rs, {0.6, 0.05}, 1);
  const auto res = transport_residual(t);
  ASSERT_EQ(res.size(), 1u);
  EXPECT_LT(res[0].max_rel, 1e-2);
  EXPECT_THROW(uk_recursion(sys("A3"), {0.6, 0.05}, 3), Unsupported);
}

TEST(Parametrix, TableGuards) {
  const auto rs = sys("A1", "hyperbolic:3");
  const auto t = uk_recursion(rs, {1.0, 0.01}, 1);
  EXPECT_THROW(table_eval(t, 2, v1(0.1)), DomainError);
  EXPECT_THROW(table_eval(t, 0, v1(5.0)), DomainError);
  EXPECT_THROW(uk_recursion(rs, {1.0, 0.01}, 2), DomainError);  // K > d/2
  EXPECT_THROW(uk_recursion(rs, {0.01, 0.01}, 1), DomainError);
  const auto a2 = sys("A2", "complex");
  const auto t2 = uk_recursion(a2, {1.0, 0.01}, 1);
  const Vec off = to_chamber(a2, half_sum_rho(a2) + 0.3 * a2.simple(0));
  EXPECT_THROW(table_eval(t2, 0, 0.2 * off / off.norm()), DomainError);
}

TEST(Parametrix, LeadingTermMatchesH3PoissonKernel) {
  // On H^3 the two-term expansion reproduces 2 tau r K2(R) / (R^2 sinh r) to O(R^2 log R) relative.
  const auto rs = sys("A1", "hyperbolic:3");
  const auto t = uk_recursion(rs, {1.0, 1e-3}, 1);
  for (double tau : {0.02, 0.05})
    for (double r : {0.0, 0.01, 0.03}) {
      const double R = std::hypot(r, tau);
      const double exact = r == 0.0 ? 2.0 * boost::math::cyl_bessel_k(2, tau) / tau
                                    : 2.0 * tau * r * boost::math::cyl_bessel_k(2, R) / (R * R * std::sinh(r));
      const cplx a = a_tau_leading(t, cplx(tau, 0.0), v1(r));
      EXPECT_NEAR(a.real() / exact, 1.0, 5 * R * R) << tau << " " << r;
    }
}

TEST(Parametrix, RieszDistribution) {
  EXPECT_NEAR(riesz_R(1.0, 3.0).real(), 1.0, 1e-15);
  EXPECT_EQ(riesz_R(2.0, -1.0), cplx(0.0));
  EXPECT_NEAR(riesz_R(3.0, 2.0).real(), 2.0, 1e-14);  // r^2 / Gamma(3)
  EXPECT_THROW(riesz_R(cplx(0.0, 1.0), 1.0), DomainError);
}

TEST(Parametrix, LemmaB2) {
  for (cplx z : {cplx(1.0, 0.0), cplx(0.3, 2.0), cplx(0.05, -4.0)})
    for (double u : {0.0, 0.7, 3.0}) {
      EXPECT_LT(lemma_b2_check(z, u, 0.5).rel_error(), 1e-9) << z << " " << u;
      EXPECT_LT(lemma_b2_check(z, u, 1.0).rel_error(), 1e-15);
    }
  EXPECT_THROW(lemma_b2_check(cplx(1.0), 1.0, 0.3), DomainError);
}

TEST(Parametrix, LemmaB1Envelope) {
  struct P {
    int n;
    double g;
    int expect_case;
  };
  for (const P p : {P{3, 2.0, 1}, P{5, 1.0, 2}, P{2, 1.0, 3}, P{1, 1.0, 4}})
    for (cplx z : {cplx(1.0, 0.0), cplx(0.1, 1.0), cplx(0.01, 2.0)}) {
      const auto b = lemma_b1_spotcheck(z, p.n, p.g, 3.0);
      EXPECT_EQ(b.case_index, p.expect_case);
      EXPECT_GT(b.ratio(), 0.0);
      EXPECT_LT(b.ratio(), 50.0) << p.n << " " << p.g << " " << z;
    }
  EXPECT_THROW(lemma_b1_spotcheck(cplx(1.0), 6, 2.0, 3.0), DomainError);
}
