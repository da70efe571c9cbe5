// Complex Gamma, panel quadrature and sphere integrals.
#include "symmwave/gamma.hpp"
#include "symmwave/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace symmwave;

TEST(Gamma, MatchesRealTgamma) {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.75, 7.0, 20.5, -0.5, -2.5}) {
    const double ref = std::tgamma(x);
    EXPECT_NEAR(gamma(cplx(x, 0.0)).real() / ref, 1.0, 1e-13) << x;
  }
}

TEST(Gamma, ImaginaryAxisModulus) {
  // |Gamma(iy)|^2 = pi / (y sinh(pi y))
  for (double y : {0.01, 0.3, 1.0, 4.0, 25.0}) {
    const double ref = 0.5 * std::log(pi / (y * std::sinh(pi * y)));
    EXPECT_NEAR(log_gamma(cplx(0.0, y)).real(), ref, 1e-12 * std::max(1.0, std::abs(ref))) << y;
  }
}

TEST(Gamma, ReflectionAndRecurrence) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(u(rng), u(rng));
    if (std::abs(z.imag()) < 0.05) continue;
    const cplx lhs = gamma(z) * gamma(1.0 - z);
    const cplx rhs = pi / std::sin(pi * z);
    EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-10);
    EXPECT_LT(std::abs(gamma(z + 1.0) - z * gamma(z)) / std::abs(z * gamma(z)), 1e-12);
  }
}

TEST(Gamma, PolesAndReciprocal) {
  EXPECT_EQ(rgamma(cplx(0.0, 0.0)), cplx(0.0, 0.0));
  EXPECT_EQ(rgamma(cplx(-3.0, 0.0)), cplx(0.0, 0.0));
  EXPECT_THROW(log_gamma(cplx(-2.0, 0.0)), DomainError);
  EXPECT_NEAR(std::abs(rgamma(cplx(0.5, 0.0)) - 1.0 / std::sqrt(pi)), 0.0, 1e-15);
  // Large imaginary parts stay finite in log space.
  EXPECT_TRUE(std::isfinite(log_gamma(cplx(0.5, 400.0)).real()));
}

TEST(Quadrature, Gk21IsExactForHighDegreePolynomials) {
  auto f = [](double x) { return cplx(std::pow(x, 30) + 3 * x * x); };
  const PanelSum p = gk21(f, 0.0, 1.0);
  EXPECT_NEAR(p.kronrod.real(), 1.0 / 31 + 1.0, 1e-14);
  EXPECT_GE(p.error(), 0.0);
}

TEST(Quadrature, AdaptiveMeetsTolerance) {
  auto f = [](double x) { return cplx(std::cos(40 * x) * std::exp(-x)); };
  const auto q = adaptive_gk(f, 0.0, 10.0, 0.0, 1e-12);
  // int_0^10 e^-x cos(40x) dx in closed form.
  const double ref = (1.0 - std::exp(-10.0) * (std::cos(400.0) - 40 * std::sin(400.0))) / (1.0 + 1600.0);
  EXPECT_NEAR(q.value.real(), ref, 1e-12);
  EXPECT_GT(q.evaluations, 0);
  auto g = [](double x) { return cplx(1.0 / std::sqrt(x)); };
  EXPECT_THROW(adaptive_gk(g, 0.0, 1.0, 0.0, 1e-15, 2000), BudgetExceeded);
}

TEST(Quadrature, GaussLegendreUnit) {
  const auto& g = gl64();
  ASSERT_EQ(g.x.size(), 64u);
  double s = 0.0, m = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    s += g.w[i];
    m += g.w[i] * std::pow(g.x[i], 20);
  }
  EXPECT_NEAR(s, 1.0, 1e-14);
  EXPECT_NEAR(m, 1.0 / 21, 1e-14);
}

TEST(Quadrature, SphereIntegrals) {
  std::vector<Vec> normals;
  Vec n(3);
  n << 1, 0.5, -0.2;
  normals.push_back(n);
  auto one = [](const Vec&) { return 1.0; };
  EXPECT_NEAR(sphere_integral(1, {}, one), 2.0, 0);
  EXPECT_NEAR(sphere_integral(2, {}, one), 2 * pi, 1e-12);
  EXPECT_NEAR(sphere_integral(3, normals, one), 4 * pi, 1e-10);
  EXPECT_NEAR(sphere_integral(3, {}, [](const Vec& v) { return v[2] * v[2]; }), 4 * pi / 3, 1e-10);
  // A kinked integrand |<n, theta>| on S^2: integral 2 pi |n|.
  EXPECT_NEAR(sphere_integral(3, normals, [&](const Vec& v) { return std::abs(n.dot(v)); }), 2 * pi * n.norm(), 1e-9);
  EXPECT_THROW(sphere_integral(4, {}, one), Unsupported);
}
