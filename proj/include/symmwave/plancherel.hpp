#pragma once
// Harish-Chandra c-function factors, the Plancherel density |c(l)|^-2,
// spherical functions (rank one, complex type, or at the origin) and phi_0.
//
// Argument convention: the per-root factor is evaluated at
// v = <alpha, l> / <alpha, alpha>, which makes the rank-one eigenvalue of
// phi_l equal to -(l^2 + |rho|^2) for any root length.

#include "symmwave/gamma.hpp"
#include "symmwave/quadrature.hpp"
#include "symmwave/rootsys.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>

namespace symmwave {

struct RootFactor {
  Vec alpha;
  double norm2;  // <alpha, alpha>
  double a;      // <alpha, rho> / <alpha, alpha>
  int m;
  int m2;  // multiplicity of 2 alpha (0 if absent)
  double log_const;  // log of the lambda-independent Gamma quotient of c_alpha
};

struct PlancherelDensity {
  const RootSystem* rs = nullptr;
  Vec rho;
  std::vector<RootFactor> factors;  // one per reduced positive root
};

inline PlancherelDensity make_density(const RootSystem& rs) {
  PlancherelDensity pd;
  pd.rs = &rs;
  pd.rho = half_sum_rho(rs);
  for (const auto& r : rs.positive_roots) {
    if (!r.is_reduced) continue;
    RootFactor f;
    f.alpha = r.vec;
    f.norm2 = r.vec.squaredNorm();
    f.a = r.vec.dot(pd.rho) / f.norm2;
    f.m = r.mult;
    f.m2 = rs.mult_double(r);
    const double a = f.a, m = f.m, m2 = f.m2;
    f.log_const = std::lgamma(a + m / 2) - std::lgamma(a);
    if (f.m2 > 0) f.log_const += std::lgamma(a / 2 + m / 4 + m2 / 2) - std::lgamma(a / 2 + m / 4);
    pd.factors.push_back(f);
  }
  return pd;
}

// |c_alpha(v)|^-2; the double zero at v = 0 is returned exactly.
inline double c_alpha_inv_sq(const RootFactor& f, double v) {
  if (v == 0.0) return 0.0;
  const cplx iv(0.0, v);
  const double m = f.m, m2 = f.m2;
  cplx lc = f.log_const + log_gamma(iv) - log_gamma(iv + m / 2);
  if (f.m2 > 0) lc += log_gamma(iv / 2.0 + m / 4) - log_gamma(iv / 2.0 + m / 4 + m2 / 2);
  return std::exp(-2.0 * lc.real());
}

inline double factor_argument(const RootFactor& f, const Vec& lambda) { return f.alpha.dot(lambda) / f.norm2; }

inline double density(const PlancherelDensity& pd, const Vec& lambda) {
  double v = 1.0;
  for (const auto& f : pd.factors) {
    v *= c_alpha_inv_sq(f, factor_argument(f, lambda));
    if (v == 0.0) break;
  }
  return v;
}

inline std::vector<double> density_factors(const PlancherelDensity& pd, const Vec& lambda) {
  std::vector<double> out;
  for (const auto& f : pd.factors) out.push_back(c_alpha_inv_sq(f, factor_argument(f, lambda)));
  return out;
}

// Large-v behaviour |c_alpha(v)|^-2 ~ K |v|^{m + m2}; returns K.
inline double leading_coefficient(const RootFactor& f) {
  return std::exp(-2.0 * f.log_const) * std::pow(2.0, -f.m2);
}

// Top-degree homogeneous part of the density.
inline double density_homogeneous(const PlancherelDensity& pd, const Vec& lambda) {
  double v = 1.0;
  for (const auto& f : pd.factors)
    v *= leading_coefficient(f) * std::pow(std::abs(factor_argument(f, lambda)), f.m + f.m2);
  return v;
}

// ---- spherical functions --------------------------------------------------

namespace detail {

// Rank-one radial ODE phi'' + b(h) phi' + mu phi = 0, b = m a coth(a h) + 2 m2 a coth(2 a h),
// mu = lambda^2 + |rho|^2 (complex), started from the regular series at h0.
inline cplx rank_one_ode(double a, int m, int m2, double rho2, cplx lambda, double h) {
  const int d = 1 + m + m2;
  const cplx mu = lambda * lambda + rho2;
  const double beta = (m + 4.0 * m2) * a * a / 3.0;
  const cplx c2 = -mu / (2.0 * d);
  const cplx c4 = -c2 * (mu + 2.0 * beta) / (4.0 * (d + 2.0));
  auto series = [&](double x) { return std::pair<cplx, cplx>{1.0 + c2 * x * x + c4 * x * x * x * x, 2.0 * c2 * x + 4.0 * c4 * x * x * x}; };
  const double h0 = 1e-3 / std::max(1.0, std::max(a, std::sqrt(std::abs(mu))));
  if (h <= h0) return series(h).first;
  using State = std::array<double, 4>;  // re phi, im phi, re phi', im phi'
  auto [p0, dp0] = series(h0);
  State y{p0.real(), p0.imag(), dp0.real(), dp0.imag()};
  auto rhs = [&](const State& s, State& ds, double x) {
    const double b = m * a / std::tanh(a * x) + (m2 > 0 ? 2.0 * m2 * a / std::tanh(2.0 * a * x) : 0.0);
    const cplx phi(s[0], s[1]), dphi(s[2], s[3]);
    const cplx dd = -b * dphi - mu * phi;
    ds = {s[2], s[3], dd.real(), dd.imag()};
  };
  namespace ode = boost::numeric::odeint;
  ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-13, 1e-13), rhs, y, h0, h,
                          std::min(1e-2, (h - h0) / 10));
  return {y[0], y[1]};
}

inline double rank_one_coordinate(const RootSystem& rs, const Vec& x) {
  const Vec& e = rs.simple(0);
  return std::abs(e.dot(x)) / e.norm();
}

}  // namespace detail

// phi_lambda(x) for complex spectral parameter lambda (coordinates in a).
inline cplx spherical_function(const RootSystem& rs, const Eigen::VectorXcd& lambda, const Vec& x) {
  if (x.norm() == 0.0) return 1.0;
  const Vec rho = half_sum_rho(rs);
  if (rs.rank == 1) {
    const Root& r = rs.positive_roots[rs.simple_indices[0]];
    const double a = r.vec.norm();
    const double h = detail::rank_one_coordinate(rs, x);
    const cplx lam = lambda[0];
    if (rs.is_complex_type()) {
      const cplx sl = std::abs(lam * h) < 1e-8 ? cplx(h) : std::sin(lam * h) / lam;
      return a * sl / std::sinh(a * h);
    }
    return detail::rank_one_ode(a, r.mult, rs.mult_double(r), rho.squaredNorm(), lam, h);
  }
  if (!rs.is_complex_type())
    throw Unsupported("spherical_function: rank >= 2 away from the origin needs the complex preset");
  // Complex type: pi(rho)/pi(i l) sum_w det(w) e^{i<w l, H>} / prod 2 sinh<alpha, H>.
  Vec H = to_chamber(rs, x);
  // Nudge off the walls, where numerator and denominator both vanish.
  double min_wall = 1e300;
  for (const auto& r : rs.positive_roots) min_wall = std::min(min_wall, r.vec.dot(H));
  if (min_wall < 1e-7 * (1.0 + H.norm())) H += 1e-7 * (1.0 + H.norm()) * rho / rho.norm();
  const cplx I(0.0, 1.0);
  cplx pi_rho = 1.0, pi_il = 1.0;
  double denom = 1.0;
  for (const auto& r : rs.positive_roots) {
    pi_rho *= r.vec.dot(rho);
    pi_il *= I * r.vec.cast<cplx>().cwiseProduct(lambda).sum();
    denom *= 2.0 * std::sinh(r.vec.dot(H));
  }
  std::vector<cplx> z(rs.weyl.order());
  double zmax = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const Eigen::VectorXcd wl = rs.weyl.elements[k].cast<cplx>() * lambda;
    z[k] = I * wl.cwiseProduct(H.cast<cplx>()).sum();
    zmax = std::max(zmax, std::abs(z[k]));
  }
  cplx alt = 0.0;
  if (zmax < 1.0) {
    // Near the origin the alternating sum of exponentials cancels down to
    // order |z|^N; summing the series from order N on avoids that.
    const int N = static_cast<int>(rs.positive_roots.size());
    std::vector<cplx> pw(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) pw[k] = std::pow(z[k], N) / std::tgamma(N + 1.0);
    for (int n = N; n < N + 80; ++n) {
      cplx term = 0.0;
      double big = 0.0;
      for (std::size_t k = 0; k < z.size(); ++k) {
        term += static_cast<double>(rs.weyl.det[k]) * pw[k];
        big = std::max(big, std::abs(pw[k]));
        pw[k] *= z[k] / static_cast<double>(n + 1);
      }
      alt += term;
      if (big < 1e-18 * std::abs(alt)) break;
    }
  } else {
    for (std::size_t k = 0; k < z.size(); ++k) alt += static_cast<double>(rs.weyl.det[k]) * std::exp(z[k]);
  }
  if (std::abs(pi_il) < 1e-300) throw Unsupported("spherical_function: spectral parameter on a wall");
  return pi_rho / pi_il * alt / denom;
}

inline cplx spherical_function(const RootSystem& rs, const Vec& lambda, const Vec& x) {
  return spherical_function(rs, Eigen::VectorXcd(lambda.cast<cplx>()), x);
}

// Rank one without a 2 alpha root: the K-integral reduction
//   phi = Gamma(n/2)/(sqrt(pi) Gamma((n-1)/2)) int_0^pi (cosh u - sinh u cos t)^{i nu - (n-1)/2} sin^{n-2} t dt
// with u = |alpha| h, nu = lambda/|alpha|, n = m + 1.
inline cplx spherical_function_integral(const RootSystem& rs, cplx lambda, double h, double tol = 1e-13) {
  if (rs.rank != 1) throw Unsupported("spherical_function_integral: rank one only");
  const Root& r = rs.positive_roots[rs.simple_indices[0]];
  if (rs.mult_double(r) != 0) throw Unsupported("spherical_function_integral: needs m_2alpha = 0");
  const double a = r.vec.norm(), u = a * std::abs(h);
  const int n = r.mult + 1;
  const cplx nu = lambda / a;
  const cplx ex = cplx(0.0, 1.0) * nu - 0.5 * (n - 1);
  const double pref = std::exp(std::lgamma(0.5 * n) - std::lgamma(0.5 * (n - 1))) / std::sqrt(pi);
  auto f = [&](double t) {
    const double base = std::cosh(u) - std::sinh(u) * std::cos(t);
    return cplx(std::exp(ex * std::log(base)) * std::pow(std::sin(t), n - 2));
  };
  return pref * adaptive_gk(f, 0.0, pi, tol, tol).value;
}

// phi_0(x): exact in rank one and for the complex preset (prod <a,H>/sinh<a,H>);
// elsewhere the envelope prod (1+<a,x>) e^{-<rho,x>}, flagged as an estimate.
struct PhiZero {
  double value;
  bool exact;
};

inline double phi_zero_envelope(const RootSystem& rs, const Vec& x) {
  double v = std::exp(-half_sum_rho(rs).dot(x));
  for (const auto& r : rs.positive_roots)
    if (r.is_reduced) v *= 1.0 + r.vec.dot(x);
  return v;
}

inline PhiZero phi_zero(const RootSystem& rs, const Vec& x) {
  if (!in_closed_chamber(rs, x)) throw DomainError("phi_zero: x outside the closed chamber");
  if (x.norm() == 0.0) return {1.0, true};
  if (rs.is_complex_type()) {
    double v = 1.0;
    for (const auto& r : rs.positive_roots) {
      const double t = r.vec.dot(x);
      v *= t < 1e-8 ? 1.0 - t * t / 6.0 : t / std::sinh(t);
    }
    return {v, true};
  }
  if (rs.rank == 1) return {spherical_function(rs, Eigen::VectorXcd(Eigen::VectorXcd::Zero(1)), x).real(), true};
  return {phi_zero_envelope(rs, x), false};
}

// Ratio phi_0 / envelope over a radial grid (rank one).
struct EnvelopeCheck {
  double min_ratio, max_ratio;
};

inline EnvelopeCheck envelope_check(const RootSystem& rs, double r_max = 20.0, int n = 200) {
  if (rs.rank != 1) throw Unsupported("envelope_check: rank one only (elsewhere the envelope is the value)");
  EnvelopeCheck c{1e300, 0.0};
  const Vec e = rs.simple(0) / rs.simple(0).norm();
  for (int i = 0; i <= n; ++i) {
    const Vec x = (r_max * i / n) * e;
    const double ratio = phi_zero(rs, x).value / phi_zero_envelope(rs, x);
    c.min_ratio = std::min(c.min_ratio, ratio);
    c.max_ratio = std::max(c.max_ratio, ratio);
  }
  return c;
}

}  // namespace symmwave
