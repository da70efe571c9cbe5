#pragma once
// Hadamard parametrix pieces: the Jacobian J, the potential omega, the
// cancellation sums, the transport recursion for U_k, Riesz distributions,
// the leading a_tau expansion, and the two integral lemmas used with it.

#include "symmwave/plancherel.hpp"

#include <array>
#include <cmath>
#include <functional>

namespace symmwave {

// J(H) = prod (sinh a / a)^{m_alpha}, a = <alpha, H>; J(0) = 1.
inline double jacobian_J(const RootSystem& rs, const Vec& H) {
  double v = 1.0;
  for (const auto& r : rs.positive_roots) {
    const double a = std::abs(r.vec.dot(H));
    const double q = a < 1e-4 ? 1.0 + a * a / 6.0 : std::sinh(a) / a;
    v *= std::pow(q, r.mult);
  }
  return v;
}

inline double J_inv_sqrt(const RootSystem& rs, const Vec& H) { return 1.0 / std::sqrt(jacobian_J(rs, H)); }

namespace detail {

// coth a - 1/a = sum_n c_n a^{2n-1}, c_n = 4^n B_{2n} / (2n)!. Terms shrink
// like (a/pi)^2, so 12 of them reach rounding for |a| < 1/2.
inline const std::array<double, 12>& coth_series() {
  static const std::array<double, 12> c = [] {
    const double B[12] = {1.0 / 6,         -1.0 / 30,       1.0 / 42,          -1.0 / 30,
                          5.0 / 66,        -691.0 / 2730,   7.0 / 6,           -3617.0 / 510,
                          43867.0 / 798,   -174611.0 / 330, 854513.0 / 138,    -236364091.0 / 2730};
    std::array<double, 12> out{};
    for (int n = 1; n <= 12; ++n) out[n - 1] = std::ldexp(B[n - 1], 2 * n) / std::tgamma(2 * n + 1.0);
    return out;
  }();
  return c;
}

// f1(a) = 1/a - coth a and its derivative. The closed forms cancel like
// eps/a^2 near 0; that noise is rough in a and later differencing of U_k
// amplifies it, hence the series on |a| < 1/2.
inline double f1(double a) {
  if (std::abs(a) < 0.5) {
    double s = 0.0, p = a;
    for (double c : coth_series()) {
      s += c * p;
      p *= a * a;
    }
    return -s;
  }
  return 1.0 / a - 1.0 / std::tanh(a);
}
inline double f1_prime(double a) {
  if (std::abs(a) < 0.5) {
    double s = 0.0, p = 1.0;
    int n = 1;
    for (double c : coth_series()) {
      s += c * (2 * n - 1) * p;
      p *= a * a;
      ++n;
    }
    return -s;
  }
  const double s = std::sinh(a);
  return -1.0 / (a * a) + 1.0 / (s * s);
}

}  // namespace detail

// omega = J^{1/2} Delta_rad J^{-1/2} with Delta_rad = Delta_a + sum m coth<a,H> d_a.
// With g = log J^{-1/2} = sum (m/2)(log a - log sinh a):
//   omega = Delta g + |grad g|^2 + sum m coth(a) <alpha, grad g>.
inline double omega_fn(const RootSystem& rs, const Vec& Hin) {
  const Vec H = to_chamber(rs, Hin);
  for (const auto& r : rs.positive_roots)
    if (r.vec.dot(H) <= 0.0) throw DomainError("omega_fn: H lies on a wall");
  Vec grad = Vec::Zero(rs.rank);
  double lap = 0.0;
  for (const auto& r : rs.positive_roots) {
    const double a = r.vec.dot(H);
    grad += 0.5 * r.mult * detail::f1(a) * r.vec;
    lap += 0.5 * r.mult * detail::f1_prime(a) * r.vec.squaredNorm();
  }
  double drift = 0.0;
  for (const auto& r : rs.positive_roots) drift += r.mult / std::tanh(r.vec.dot(H)) * r.vec.dot(grad);
  return lap + grad.squaredNorm() + drift;
}

// Rank one without 2 alpha: (m/2)(m/2 - 1)|alpha|^2 (1/a^2 - csch^2 a) - |rho|^2.
inline double omega_rank_one_closed_form(const RootSystem& rs, double h) {
  if (rs.rank != 1 || rs.positive_roots.size() != 1) throw Unsupported("closed-form omega: rank one, no 2 alpha");
  const Root& r = rs.positive_roots[0];
  const double al = r.vec.norm(), a = al * h, m = r.mult;
  const double s = std::sinh(a);
  const double bracket = std::abs(a) < 1e-3 ? 1.0 / 3.0 - a * a / 15.0 : 1.0 / (a * a) - 1.0 / (s * s);
  return 0.5 * m * (0.5 * m - 1.0) * al * al * bracket - half_sum_rho(rs).squaredNorm();
}

// omega is constant (= -|rho|^2) exactly when every root has m = 2 and there is no 2 alpha.
inline bool omega_is_constant(const RootSystem& rs) { return rs.is_complex_type(); }

// Sums over pairs with R alpha != R beta; both vanish identically.
struct CancellationSums {
  double r1, r2;
};

inline CancellationSums cancellation_check(const RootSystem& rs, const Vec& H) {
  if (!in_open_chamber(rs, H)) throw DomainError("cancellation_check: H must lie in the open chamber");
  CancellationSums c{0.0, 0.0};
  const auto& R = rs.positive_roots;
  for (std::size_t i = 0; i < R.size(); ++i)
    for (std::size_t j = 0; j < R.size(); ++j) {
      if (i == j) continue;
      // Proportional roots (alpha, 2 alpha) are excluded.
      const double ip = R[i].vec.dot(R[j].vec);
      if (std::abs(std::abs(ip) - R[i].vec.norm() * R[j].vec.norm()) < 1e-12) continue;
      const double a = R[i].vec.dot(H), b = R[j].vec.dot(H);
      const double w = R[i].mult * R[j].mult * ip;
      c.r1 += w / (a * b);
      c.r2 += w * (1.0 / (std::tanh(a) * std::tanh(b)) - 1.0);
    }
  return c;
}

// U_0 from the Euclidean delta limit: p_tau(0) ~ C0 A Gamma(d) tau^{-d} with
// A = integral of the top homogeneous density part over the unit sphere, and
// the k = 0 term of a_tau at H = 0 is U_0 Gamma((d+1)/2) tau^{-d} / pi.
inline double sphere_integral_homogeneous(const PlancherelDensity& pd) {
  std::vector<Vec> normals;
  for (const auto& f : pd.factors) normals.push_back(f.alpha);
  return sphere_integral(pd.rs->rank, normals, [&](const Vec& th) { return density_homogeneous(pd, th); }, 1e-12);
}

inline double u0_normalisation(const PlancherelDensity& pd, double C0 = 1.0) {
  const int d = dims(*pd.rs).d;
  return pi * C0 * sphere_integral_homogeneous(pd) * std::exp(std::lgamma(d) - std::lgamma(0.5 * (d + 1)));
}

// ---- U_k transport recursion ----------------------------------------------

struct GridShape {
  double r_max = 2.0;
  double h = 1e-3;
};

struct ParametrixTable {
  const RootSystem* rs = nullptr;
  Vec direction;           // unit vector of the ray (rank one: alpha/|alpha|)
  std::vector<double> r;   // radial coordinates r_i = (i + 1/2) h
  double h = 0.0;
  int K = 0;
  double U0 = 0.0;
  std::vector<std::vector<double>> U;  // U[k][i]
  std::vector<double> omega;
  bool constant_omega = false;
};

namespace detail {

// Cubic Lagrange interpolation on r_i = (i + 1/2) h with even extension.
inline double interp_even(const std::vector<double>& f, double h, double x) {
  x = std::abs(x);
  const int n = static_cast<int>(f.size());
  double u = x / h - 0.5;
  int i0 = static_cast<int>(std::floor(u)) - 1;
  i0 = std::min(std::max(i0, -2), n - 4);
  if (u > n - 1 + 1e-9) throw DomainError("parametrix: H beyond the tabulated grid");
  auto at = [&](int i) { return i >= 0 ? f[i] : f[-i - 1]; };
  double v = 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (u - (i0 + b)) / static_cast<double>(a - b);
    v += w * at(i0 + a);
  }
  return v;
}

// Radial Laplacian f'' + (d-1) f'/r on the staggered grid; even ghost at 0,
// one-sided second-order stencil at the outer end.
inline std::vector<double> radial_laplacian(const std::vector<double>& f, double h, int d) {
  const int n = static_cast<int>(f.size());
  std::vector<double> out(n);
  auto at = [&](int i) { return i >= 0 ? f[i] : f[-i - 1]; };
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) * h;
    double d1, d2;
    if (i < n - 1) {
      d1 = (at(i + 1) - at(i - 1)) / (2 * h);
      d2 = (at(i + 1) - 2 * at(i) + at(i - 1)) / (h * h);
    } else {
      d1 = (3 * f[i] - 4 * f[i - 1] + f[i - 2]) / (2 * h);
      d2 = (2 * f[i] - 5 * f[i - 1] + 4 * f[i - 2] - f[i - 3]) / (h * h);
    }
    out[i] = d2 + (d - 1) * d1 / r;
  }
  return out;
}

// G_i = int_0^{r_i} s^k F(s) ds on the staggered grid, F even. The first cell
// fits F = a + b s^2 through r_0, r_1; later cells use the 4-point cubic rule
// (-g_{i-1} + 13 g_i + 13 g_{i+1} - g_{i+2}) h/24. Its error is smooth in r,
// so the table can be differenced again at the next order. (A per-point
// s-quadrature through an interpolant is not, and 1/h^2 amplifies that.)
inline std::vector<double> cumulative_moment(const std::vector<double>& F, double h, int k) {
  const int n = static_cast<int>(F.size());
  std::vector<double> g(n), G(n);
  for (int i = 0; i < n; ++i) g[i] = std::pow((i + 0.5) * h, k) * F[i];
  auto at = [&](int i) {
    if (i < 0) return (k % 2 ? -1.0 : 1.0) * g[-i - 1];
    if (i >= n) return 4 * g[n - 1] - 6 * g[n - 2] + 4 * g[n - 3] - g[n - 4];
    return g[i];
  };
  const double r0 = 0.5 * h, r1 = 1.5 * h;
  const double b = (F[1] - F[0]) / (r1 * r1 - r0 * r0), a = F[0] - b * r0 * r0;
  G[0] = a * std::pow(r0, k + 1) / (k + 1) + b * std::pow(r0, k + 3) / (k + 3);
  for (int i = 0; i + 1 < n; ++i) G[i + 1] = G[i] + h / 24 * (-at(i - 1) + 13 * at(i) + 13 * at(i + 1) - at(i + 2));
  return G;
}

// Higher rank: U_k(H) evaluated recursively through the GL64 s-integral,
// with Delta_rad^p = Delta_a + sum m <alpha,H>^{-1} d_alpha by central differences.
struct RecursiveUk {
  const RootSystem* rs;
  double U0;
  double hfd;

  double eval(int k, const Vec& Hin) const {
    if (k == 0) return U0;
    const Vec H = to_chamber(*rs, Hin);
    const auto& g = gl64();
    double acc = 0.0;
    for (std::size_t q = 0; q < g.x.size(); ++q) {
      const double s = g.x[q];
      acc += g.w[q] * std::pow(s, k - 1) * source(k - 1, s * H);
    }
    return acc;
  }

  // [Delta_rad^p + omega] U_k at H.
  double source(int k, const Vec& H) const {
    const int l = rs->rank;
    const double c = eval(k, H);
    double lap = 0.0;
    Vec grad(l);
    for (int i = 0; i < l; ++i) {
      const Vec e = Vec::Unit(l, i) * hfd;
      const double p = eval(k, H + e), m = eval(k, H - e);
      lap += (p - 2 * c + m) / (hfd * hfd);
      grad[i] = (p - m) / (2 * hfd);
    }
    // The first-order sum is W-invariant, so H need not be in the chamber.
    for (const auto& r : rs->positive_roots) lap += r.mult * r.vec.dot(grad) / r.vec.dot(H);
    return lap + omega_fn(*rs, H) * c;
  }
};

}  // namespace detail

inline ParametrixTable uk_recursion(const RootSystem& rs, const GridShape& grid, int K, double C0 = 1.0,
                                    const Vec& direction = Vec()) {
  const auto dm = dims(rs);
  if (K < 0 || K > dm.d / 2) throw DomainError("uk_recursion: K must lie in [0, floor(d/2)]");
  if (!(grid.h > 0) || !(grid.r_max > grid.h)) throw DomainError("uk_recursion: bad grid");
  const bool constant = omega_is_constant(rs);
  if (rs.rank >= 2 && !constant && K > 2)
    throw Unsupported("uk_recursion: rank >= 2 with nonconstant omega is limited to K <= 2");
  const PlancherelDensity pd = make_density(rs);
  ParametrixTable t;
  t.rs = &rs;
  t.h = grid.h;
  t.K = K;
  t.constant_omega = constant;
  t.U0 = u0_normalisation(pd, C0);
  Vec dir = direction.size() ? direction : (rs.rank == 1 ? rs.simple(0) : half_sum_rho(rs));
  dir /= dir.norm();
  if (!in_open_chamber(rs, dir)) throw DomainError("uk_recursion: ray must point into the open chamber");
  t.direction = dir;
  const int n = static_cast<int>(std::ceil(grid.r_max / grid.h));
  if (n < 4) throw DomainError("uk_recursion: grid too coarse (need at least 4 points)");
  for (int i = 0; i < n; ++i) {
    t.r.push_back((i + 0.5) * grid.h);
    t.omega.push_back(omega_fn(rs, t.r.back() * dir));
  }
  t.U.assign(K + 1, std::vector<double>(n, t.U0));
  if (constant) {
    const double w0 = -half_sum_rho(rs).squaredNorm();
    for (int k = 1; k <= K; ++k)
      for (int i = 0; i < n; ++i) t.U[k][i] = t.U[k - 1][i] * w0 / k;
    return t;
  }
  if (rs.rank == 1) {
    for (int k = 0; k < K; ++k) {
      auto lap = detail::radial_laplacian(t.U[k], grid.h, dm.d);
      std::vector<double> F(n);
      for (int i = 0; i < n; ++i) F[i] = lap[i] + t.omega[i] * t.U[k][i];
      const auto G = detail::cumulative_moment(F, grid.h, k);
      for (int i = 0; i < n; ++i) t.U[k + 1][i] = G[i] / std::pow(t.r[i], k + 1);
    }
    return t;
  }
  detail::RecursiveUk rec{&rs, t.U0, grid.h};
  for (int k = 1; k <= K; ++k)
    for (int i = 0; i < n; ++i) t.U[k][i] = rec.eval(k, t.r[i] * dir);
  return t;
}

// U_k at H by interpolation along the tabulated ray.
inline double table_eval(const ParametrixTable& t, int k, const Vec& Hin) {
  if (k < 0 || k > t.K) throw DomainError("table_eval: order outside the table");
  const Vec H = to_chamber(*t.rs, Hin);
  const double r = H.norm();
  if (r > 0 && (H / r - t.direction).norm() > 1e-9) throw DomainError("H off-grid: not on the tabulated ray");
  if (r > t.r.back() + 1e-12) throw DomainError("H off-grid: beyond the tabulated range");
  return detail::interp_even(t.U[k], t.h, r);
}

// Transport identity [(k+1) + H.grad] U_{k+1} = [Delta^p + omega] U_k on interior points.
struct TransportResidual {
  int k;
  double max_abs;
  double max_rel;  // max_abs / max |source|
};

inline std::vector<TransportResidual> transport_residual(const ParametrixTable& t) {
  const RootSystem& rs = *t.rs;
  const int n = static_cast<int>(t.r.size());
  const int d = dims(rs).d;
  std::vector<TransportResidual> out;
  detail::RecursiveUk rec{&rs, t.U0, t.h};
  for (int k = 0; k < t.K; ++k) {
    std::vector<double> src(n);
    if (rs.rank == 1 || t.constant_omega) {
      auto lap = detail::radial_laplacian(t.U[k], t.h, d);
      for (int i = 0; i < n; ++i) src[i] = (t.constant_omega ? 0.0 : lap[i]) + t.omega[i] * t.U[k][i];
    } else {
      for (int i = 1; i < n - 1; ++i) src[i] = rec.source(k, t.r[i] * t.direction);
    }
    TransportResidual res{k, 0.0, 0.0};
    double scale = 0.0;
    for (int i = 1; i < n - 1; ++i) {
      const double euler = t.r[i] * (t.U[k + 1][i + 1] - t.U[k + 1][i - 1]) / (2 * t.h);
      const double rr = (k + 1) * t.U[k + 1][i] + euler - src[i];
      res.max_abs = std::max(res.max_abs, std::abs(rr));
      scale = std::max(scale, std::abs(src[i]));
    }
    res.max_rel = scale > 0 ? res.max_abs / scale : res.max_abs;
    out.push_back(res);
  }
  return out;
}

// ---- Riesz distributions and the a_tau expansion -------------------------

inline cplx riesz_R(cplx z, double r) {
  if (!(z.real() > 0)) throw DomainError("riesz_R: Re z must be positive");
  if (r <= 0.0) return 0.0;
  return rgamma(z) * std::exp((z - 1.0) * std::log(r));
}

// (tau/pi) J^{-1/2}(H) sum_k 4^{-k} U_k(H) Gamma((d+1)/2 - k) (|H|^2 + tau^2)^{k - (d+1)/2}.
inline cplx a_tau_leading(const ParametrixTable& t, cplx tau, const Vec& H) {
  if (!(tau.real() > 0)) throw DomainError("a_tau_leading: Re tau must be positive");
  const int d = dims(*t.rs).d;
  const int kmax = std::min(t.K, d / 2);
  const cplx base = H.squaredNorm() + tau * tau;
  const cplx lb = std::log(base);
  cplx sum = 0.0;
  for (int k = 0; k <= kmax; ++k)
    sum += std::pow(4.0, -k) * table_eval(t, k, H) * std::exp(std::lgamma(0.5 * (d + 1) - k)) *
           std::exp((k - 0.5 * (d + 1)) * lb);
  return tau / pi * J_inv_sqrt(*t.rs, H) * sum;
}

// ---- integral lemmas -----------------------------------------------------

struct LemmaPair {
  cplx lhs, rhs;
  double rel_error() const { return std::abs(lhs - rhs) / std::abs(rhs); }
};

// int_0^inf d(w^2) R^{1-eps}(w^2 - u^2) z / (pi (w^2 + z^2)).
// eps = 1: R^0 is the Dirac mass, so the integral sifts at w^2 = u^2.
// eps = 1/2: with w^2 = u^2 + q^2 and q = tan(theta) the integrand is smooth.
inline LemmaPair lemma_b2_check(cplx z, double u, double eps, double tol = 1e-12) {
  if (!(z.real() > 0)) throw DomainError("lemma_b2: Re z must be positive");
  const cplx c = u * u + z * z;
  LemmaPair p;
  if (eps == 1.0) {
    p.lhs = z / (pi * (u * u + z * z));
    p.rhs = z / (pi * c);
    return p;
  }
  if (eps != 0.5) throw DomainError("lemma_b2: eps must be 1 or 1/2");
  auto f = [&](double th) {
    const double s = std::sin(th), co = std::cos(th);
    return z / (s * s + c * co * co);
  };
  const cplx q = adaptive_gk(f, 0.0, pi / 2, 0.0, tol, 2'000'000).value;
  p.lhs = 2.0 / std::pow(pi, 1.5) * q;
  p.rhs = z / (std::sqrt(pi) * std::sqrt(c));
  return p;
}

struct LemmaB1 {
  double integral;
  double envelope;
  int case_index;  // 1..4 as displayed
  double ratio() const { return integral / envelope; }
};

// |z|^{2g-n} int_0^{3T} r^{n-1} |r^2 + z^2|^{-g} dr against the four-case envelope.
inline LemmaB1 lemma_b1_spotcheck(cplx z, int n, double g, double T) {
  if (!(z.real() > 0) || std::abs(z) > T) throw DomainError("lemma_b1: need Re z > 0 and |z| <= T");
  if (n < 1) throw DomainError("lemma_b1: n >= 1");
  const double az = std::abs(z), x = z.real();
  LemmaB1 out{};
  if (g > 1 && n < 2 * g) {
    out.case_index = 1;
    out.envelope = std::pow(az / x, g - 1);
  } else if (g == 1 && n > 2) {
    out.case_index = 2;
    out.envelope = std::pow(T / az, n - 2) + std::log(az / x);
  } else if (g == 1 && n == 2) {
    out.case_index = 3;
    out.envelope = 1 + std::log(T / x);
  } else if (g == 1 && n < 2) {
    out.case_index = 4;
    out.envelope = 1 + std::log(az / x);
  } else {
    throw DomainError("lemma_b1: parameters match none of the four cases");
  }
  auto f = [&](double r) { return cplx(std::pow(r, n - 1) * std::pow(std::abs(r * r + z * z), -g)); };
  const double peak = std::min(std::abs(z.imag()), 3 * T);
  QuadratureResult q;
  if (peak > 0 && peak < 3 * T) {
    q = adaptive_gk(f, 0.0, peak, 0.0, 1e-10);
    q += adaptive_gk(f, peak, 3 * T, 0.0, 1e-10);
  } else {
    q = adaptive_gk(f, 0.0, 3 * T, 0.0, 1e-10);
  }
  out.integral = std::pow(az, 2 * g - n) * q.value.real();
  return out;
}

}  // namespace symmwave
