#pragma once
// Oscillatory integrals and kernels built on the inverse spherical transform:
// the phase and its critical point, I(s, t, x), the Poisson kernel p_tau,
// the subordinated wave kernels, C_{sigma,d}, the Kunze-Stein integral and
// log-log decay fits.
//
// Radialisation: the inner integral is evaluated at A = x+. In rank one this
// is exact; in higher rank only x+ = 0 is evaluated.

#include "symmwave/chamber.hpp"
#include "symmwave/plancherel.hpp"
#include "symmwave/quadrature.hpp"

#include <cmath>
#include <optional>

namespace symmwave {

struct KernelConfig {
  double C0 = 1.0;                   // inverse-transform constant
  long long budget = 10'000'000;     // integrand evaluations per query
  double rel_tol = 1e-8;             // target relative accuracy
  double osc_fraction = 0.5;         // panel width as a fraction of the wavelength
};

struct KernelQuery {
  cplx sigma{0.0, 0.0};
  double t = 1.0;
  double s = 0.1;
  Vec x_plus;
  std::optional<double> kg_kappa;  // Klein-Gordon: sqrt(|l|^2 + kappa^2)
};

enum class Regime { full, minus, plus };

// Evaluation counter shared by all nested quadratures of one query.
struct Budget {
  long long used = 0;
  long long cap = 10'000'000;
  void charge(long long n) {
    used += n;
    if (used > cap) throw BudgetExceeded("kernel quadrature: evaluation budget exceeded");
  }
};

// ---- phase geometry -------------------------------------------------------

inline double phase(const RootSystem& rs, double t, const Vec& A, const Vec& lambda) {
  if (t == 0.0) throw DomainError("phase: t = 0");
  const double r2 = half_sum_rho(rs).squaredNorm();
  return std::sqrt(lambda.squaredNorm() + r2) + A.dot(lambda) / t;
}

inline Vec phase_gradient(const RootSystem& rs, double t, const Vec& A, const Vec& lambda) {
  const double r2 = half_sum_rho(rs).squaredNorm();
  return lambda / std::sqrt(lambda.squaredNorm() + r2) + A / t;
}

// l0 = -|rho| (A/t) (1 - |A/t|^2)^{-1/2}.
inline Vec critical_point(const RootSystem& rs, double t, const Vec& A) {
  if (t == 0.0 || A.norm() >= std::abs(t)) throw DomainError("critical_point: need |A| < |t|");
  const Vec q = A / t;
  return -half_sum_rho(rs).norm() * q / std::sqrt(1.0 - q.squaredNorm());
}

// E^{-1} I - E^{-3} l l^T, E^2 = |l|^2 + |rho|^2.
inline Mat hessian_phase(const RootSystem& rs, const Vec& lambda) {
  const double E = std::sqrt(lambda.squaredNorm() + half_sum_rho(rs).squaredNorm());
  const int l = rs.rank;
  return Mat::Identity(l, l) / E - lambda * lambda.transpose() / (E * E * E);
}

// ---- radial quadrature engine --------------------------------------------

namespace detail {

// Radial density profile r^{l-1} int_{S} |c(r theta)|^-2 dtheta, optionally
// weighted by a cutoff in l.
struct RadialProfile {
  const PlancherelDensity* pd;
  std::vector<Vec> normals;
  std::function<double(const Vec&)> weight;  // empty = 1
  Budget* budget;

  double operator()(double r) const {
    const int l = pd->rs->rank;
    if (r == 0.0) return 0.0;
    long long ev = 0;
    const double v = sphere_integral(
        l, normals,
        [&](const Vec& th) {
          const Vec lam = r * th;
          return weight ? weight(lam) * density(*pd, lam) : density(*pd, lam);
        },
        1e-11, &ev);
    budget->charge(ev);
    return std::pow(r, l - 1) * v;
  }
};

// Upper envelope used for the truncation radius: the density grows like
// r^{d - l}, so |integrand| <= P(r) e^{-Re(tau) E}.
struct Radial {
  // f(r) returns the full radial integrand (complex).
  std::function<cplx(double)> f;
  // magnitude proxy used to decide truncation (without oscillation).
  std::function<double(double)> envelope;
};

// Integrates f over [0, R] with panels sized by oscillation, local scale and
// decay. R grows until the tail proxy falls below rounding level.
inline QuadratureResult integrate_radial(const Radial& rad, double osc_rate, double decay, double scale,
                                         const std::vector<double>& forced_breaks, const KernelConfig& cfg,
                                         Budget& budget) {
  const double osc_w = osc_rate > 0 ? cfg.osc_fraction * 2 * pi / osc_rate : 1e300;
  const double decay_w = decay > 0 ? 1.0 / decay : 1e300;
  auto width = [&](double r, double refine) {
    return refine * std::min({osc_w, std::max(0.25 * scale, r / 8.0), decay_w});
  };
  for (double refine = 1.0;; refine *= 0.5) {
    QuadratureResult res;
    double mag = 0.0, est = 0.0;  // integral of |f| and sum of |K - G|
    double r = 0.0;
    std::size_t fb = 0;
    while (true) {
      double w = width(r, refine);
      double b = r + w;
      while (fb < forced_breaks.size() && forced_breaks[fb] <= r) ++fb;
      if (fb < forced_breaks.size() && forced_breaks[fb] < b) b = forced_breaks[fb];
      const PanelSum p = gk21(rad.f, r, b);
      budget.charge(gk21_points);
      res.value += p.kronrod;
      est += std::abs(p.kronrod - p.gauss);
      mag += p.abs_sum;
      res.abs_error += p.error();
      r = b;
      // Tail proxy: envelope at r times the decay length.
      if (fb >= forced_breaks.size() && decay > 0) {
        const double tail = rad.envelope(r) / decay * (1.0 + 4.0 / (decay * std::max(r, 1e-300)));
        if (tail < 1e-16 * std::max(mag, 1e-300) && r > 4.0 / decay) {
          res.abs_error += tail;
          break;
        }
      }
      if (decay <= 0) throw DomainError("radial quadrature needs exponential decay (Re tau > 0)");
    }
    res.evaluations = budget.used;
    if (est <= std::max(cfg.rel_tol * std::abs(res.value), 1e-13 * mag) || refine < 0.1) return res;
  }
}

}  // namespace detail

// Spectral energy sqrt(|l|^2 + kappa^2); kappa defaults to |rho|.
inline double spectral_kappa(const RootSystem& rs, const std::optional<double>& kg) {
  if (kg) {
    if (!(*kg > 0)) throw DomainError("Klein-Gordon parameter must be positive");
    return *kg;
  }
  return half_sum_rho(rs).norm();
}

// Generic inverse-transform radial integral
//   C0 int_a |c(l)|^-2 phi_l(x) g(E(l)) cutoff(|l|) dl
// for rank one (any x) or higher rank (x = 0 only). The angular factor for
// the oscillatory integral I is e^{i <A, l>} instead of phi_l(x).
struct SpectralIntegrand {
  std::function<cplx(double E)> symbol;  // g(E)
  double decay;                          // Re of the exponential rate in g
  double osc;                            // oscillation rate of g in E
  Regime regime = Regime::full;
  bool plane_wave = false;  // use e^{i<A,l>} (I) instead of phi_l(x) (kernels)
  std::function<double(const Vec&)> weight;  // optional cutoff in l, e.g. a tile function
};

inline QuadratureResult spectral_integral(const PlancherelDensity& pd, const Vec& x, const SpectralIntegrand& si,
                                          double kappa, double prefactor, const KernelConfig& cfg, Budget& budget) {
  const RootSystem& rs = *pd.rs;
  const double rho = pd.rho.norm();
  auto cut = [&](double r) {
    if (si.regime == Regime::full) return 1.0;
    const double c0 = cutoff_profile(rho - r, rho);
    return si.regime == Regime::minus ? c0 : 1.0 - c0;
  };
  std::vector<double> breaks;
  if (si.regime != Regime::full) breaks = {rho, 2 * rho};
  const int d = dims(rs).d;
  detail::Radial rad;
  const double xn = x.size() ? x.norm() : 0.0;
  if (rs.rank == 1) {
    const Vec e = rs.simple(0) / rs.simple(0).norm();
    const double A = x.size() ? x.dot(e) : 0.0;
    const bool complex1 = rs.is_complex_type();
    rad.f = [&, A, e, complex1](double r) -> cplx {
      const Vec lam = r * e;
      const double dens = density(pd, lam);
      if (dens == 0.0) return 0.0;
      const double E = std::sqrt(r * r + kappa * kappa);
      const cplx g = si.symbol(E) * cut(r);
      cplx ang;
      const double wp = si.weight ? si.weight(lam) : 1.0, wm = si.weight ? si.weight(-lam) : 1.0;
      if (si.plane_wave) {
        ang = wp * std::exp(cplx(0.0, A * r)) + wm * std::exp(cplx(0.0, -A * r));
      } else if (xn == 0.0) {
        ang = wp + wm;
      } else {
        ang = (wp + wm) * spherical_function(rs, Eigen::VectorXcd(lam.cast<cplx>()), x);
      }
      (void)complex1;
      return dens * g * ang;
    };
    rad.envelope = [&, e](double r) {
      const double E = std::sqrt(r * r + kappa * kappa);
      return 2.0 * density(pd, r * e) * std::exp(-si.decay * E);
    };
  } else {
    if (xn != 0.0) throw Unsupported("kernels: rank >= 2 is evaluated at x+ = 0 only");
    auto profile = std::make_shared<detail::RadialProfile>();
    profile->pd = &pd;
    for (const auto& f : pd.factors) profile->normals.push_back(f.alpha);
    profile->budget = &budget;
    profile->weight = si.weight;
    rad.f = [&, profile](double r) -> cplx {
      const double E = std::sqrt(r * r + kappa * kappa);
      return (*profile)(r) * si.symbol(E) * cut(r);
    };
    rad.envelope = [&, profile](double r) {
      const double E = std::sqrt(r * r + kappa * kappa);
      return (*profile)(r) * std::exp(-si.decay * E);
    };
  }
  (void)d;
  // A oscillates at rate |A| in l; phi_l(x) at rate |x|.
  const double osc = si.osc + xn;
  QuadratureResult q = detail::integrate_radial(rad, osc, si.decay, std::max(kappa, rho), breaks, cfg, budget);
  q.value *= prefactor;
  q.abs_error *= std::abs(prefactor);
  q.evaluations = budget.used;
  return q;
}

// I(s, t, x) = int |c|^-2 e^{-s E} e^{i t E} e^{i <A, l>} dl (no C0).
inline QuadratureResult oscillatory_I(const PlancherelDensity& pd, double s, double t, const Vec& x,
                                      Regime regime = Regime::full, const KernelConfig& cfg = {},
                                      std::optional<double> kg = std::nullopt) {
  if (!(s > 0)) throw DomainError("oscillatory_I: s must be positive");
  if (t == 0.0) throw DomainError("oscillatory_I: t must be nonzero");
  Budget b{0, cfg.budget};
  const double kappa = spectral_kappa(*pd.rs, kg);
  SpectralIntegrand si;
  const cplx rate(-s, t);
  si.symbol = [rate](double E) { return std::exp(rate * E); };
  si.decay = s;
  si.osc = std::abs(t);
  si.regime = regime;
  si.plane_wave = true;
  return spectral_integral(pd, x, si, kappa, 1.0, cfg, b);
}

// I restricted to the support of one tile cutoff chi_{w.S_j}. Diagnostic
// only: no canonical tile-restricted value exists, but the tile values sum
// to the full integral.
inline QuadratureResult oscillatory_I_tile(const ChamberPartition& cp, const PlancherelDensity& pd, TileId tile,
                                           double s, double t, const Vec& x, const KernelConfig& cfg = {}) {
  if (cp.rs != pd.rs) throw DomainError("oscillatory_I_tile: partition and density disagree");
  if (pd.rs->rank > 2) throw Unsupported("oscillatory_I_tile: rank 1 and 2 only");
  if (!(s > 0)) throw DomainError("oscillatory_I_tile: s must be positive");
  if (t == 0.0) throw DomainError("oscillatory_I_tile: t must be nonzero");
  Budget b{0, cfg.budget};
  SpectralIntegrand si;
  const cplx rate(-s, t);
  si.symbol = [rate](double E) { return std::exp(rate * E); };
  si.decay = s;
  si.osc = std::abs(t);
  si.plane_wave = true;
  si.weight = [&cp, tile](const Vec& lam) { return chi(cp, tile, lam); };
  return spectral_integral(pd, x, si, spectral_kappa(*pd.rs, std::nullopt), 1.0, cfg, b);
}

namespace detail {

// C0 int |c|^-2 phi_l(x) (-E)^{deriv} e^{-tau E} dl, charged to a shared budget.
inline QuadratureResult poisson_core(const PlancherelDensity& pd, cplx tau, const Vec& x, int deriv, double kappa,
                                     const KernelConfig& cfg, Budget& b) {
  if (!(tau.real() > 0)) throw DomainError("poisson_kernel: Re tau must be positive");
  SpectralIntegrand si;
  si.symbol = [tau, deriv](double E) {
    cplx v = std::exp(-tau * E);
    if (deriv == 1) v *= -E;
    return v;
  };
  si.decay = tau.real();
  si.osc = std::abs(tau.imag());
  return spectral_integral(pd, x, si, kappa, cfg.C0, cfg, b);
}

}  // namespace detail

inline QuadratureResult poisson_kernel(const PlancherelDensity& pd, cplx tau, const Vec& x, const KernelConfig& cfg = {},
                                       std::optional<double> kg = std::nullopt) {
  Budget b{0, cfg.budget};
  return detail::poisson_core(pd, tau, x, 0, spectral_kappa(*pd.rs, kg), cfg, b);
}

// C_{sigma,d} = e^{sigma^2} / (Gamma((d+1)/2 - sigma) Gamma(sigma)).
inline cplx c_sigma_d(cplx sigma, int d) {
  return std::exp(sigma * sigma) * rgamma(0.5 * (d + 1) - sigma) * rgamma(sigma);
}

// |C_{sigma,d}| <= K |sigma||sigma - (d+1)/2| e^{pi |Im sigma| - (Im sigma)^2} on the strip.
struct CBoundReport {
  double K;          // max observed ratio
  double K_half;     // same over the half-height grid (stability check)
  bool finite;
};

inline CBoundReport c_sigma_bound_check(int d, double im_max = 8.0, int n_re = 41, int n_im = 161) {
  const double top = 0.5 * (d + 1);
  CBoundReport rep{0.0, 0.0, true};
  for (int i = 0; i < n_re; ++i)
    for (int j = 0; j < n_im; ++j) {
      const cplx sg(top * i / (n_re - 1), -im_max + 2 * im_max * j / (n_im - 1));
      const double bound = std::abs(sg) * std::abs(sg - top) * std::exp(pi * std::abs(sg.imag()) - sg.imag() * sg.imag());
      if (bound == 0.0) continue;
      const double ratio = std::abs(c_sigma_d(sg, d)) / bound;
      if (!std::isfinite(ratio)) rep.finite = false;
      rep.K = std::max(rep.K, ratio);
      if (std::abs(sg.imag()) <= im_max / 2) rep.K_half = std::max(rep.K_half, ratio);
    }
  return rep;
}

namespace detail {

inline void check_strip(cplx sigma, int d) {
  if (sigma.real() < -1e-12 || sigma.real() > 0.5 * (d + 1) + 1e-12)
    throw DomainError("wave kernel: Re sigma outside [0, (d+1)/2]");
}

// int_0^1 s^{a} q(s) ds with q evaluated by `inner` (a complex, Re a > -1):
// dyadic panels [2^{-k-1}, 2^{-k}] down to delta, plus the endpoint piece
// int_0^delta s^a (q0 + q1 s) ds from a linear fit through delta/2 and delta.
template <class Inner>
QuadratureResult unit_interval_power(cplx a, Inner&& inner, int levels) {
  QuadratureResult out;
  for (int k = 0; k < levels; ++k) {
    const double hi = std::ldexp(1.0, -k), lo = std::ldexp(1.0, -k - 1);
    double inner_err = 0.0;  // largest weighted inner error on the panel
    auto f = [&](double s) {
      const QuadratureResult q = inner(s);
      const cplx w = std::exp(a * std::log(s));
      inner_err = std::max(inner_err, std::abs(w) * q.abs_error);
      return w * q.value;
    };
    const PanelSum p = gk21(f, lo, hi);
    out.value += p.kronrod;
    out.abs_error += p.error() + inner_err * (hi - lo);
  }
  const double delta = std::ldexp(1.0, -levels);
  const cplx q1v = inner(delta).value, qh = inner(0.5 * delta).value;
  const cplx slope = (q1v - qh) / (0.5 * delta);
  const cplx q0 = q1v - slope * delta;
  const cplx da = std::exp((a + 1.0) * std::log(delta));
  const cplx piece = q0 * da / (a + 1.0) + slope * da * delta / (a + 2.0);
  out.value += piece;
  out.abs_error += std::abs(slope * da * delta / (a + 2.0)) + 1e-3 * std::abs(piece);
  return out;
}

}  // namespace detail

// omega~^{sigma,0}_t(x) = C_{sigma,d} int_0^1 s^{sigma-1} p_{s-it}(x) ds.
// Re sigma < 1/2 uses one integration by parts:
//   int_0^1 s^{sigma-1} p ds = p(1)/sigma - (1/sigma) int_0^1 s^sigma d_s p ds.
enum class SPath { automatic, direct, by_parts };

inline QuadratureResult wave_kernel_tilde0(const PlancherelDensity& pd, const KernelQuery& q,
                                           const KernelConfig& cfg = {}, SPath path = SPath::automatic,
                                           int levels = 8) {
  const int d = dims(*pd.rs).d;
  detail::check_strip(q.sigma, d);
  if (q.t == 0.0) throw DomainError("wave kernel: t must be nonzero");
  const cplx C = c_sigma_d(q.sigma, d);
  if (C == 0.0) return {};
  const double kappa = spectral_kappa(*pd.rs, q.kg_kappa);
  Budget b{0, cfg.budget};
  const Vec x = q.x_plus.size() ? q.x_plus : Vec::Zero(pd.rs->rank);
  const double t = q.t;
  QuadratureResult res;
  const bool direct = path == SPath::direct || (path == SPath::automatic && q.sigma.real() >= 0.5);
  if (direct) {
    if (q.sigma.real() <= 0.0) throw DomainError("wave kernel: the direct s-integral needs Re sigma > 0");
    res = detail::unit_interval_power(
        q.sigma - 1.0, [&](double s) { return detail::poisson_core(pd, cplx(s, -t), x, 0, kappa, cfg, b); }, levels);
  } else {
    const QuadratureResult p1 = detail::poisson_core(pd, cplx(1.0, -t), x, 0, kappa, cfg, b);
    QuadratureResult inner = detail::unit_interval_power(
        q.sigma, [&](double s) { return detail::poisson_core(pd, cplx(s, -t), x, 1, kappa, cfg, b); }, levels);
    res.value = (p1.value - inner.value) / q.sigma;
    res.abs_error = (p1.abs_error + inner.abs_error) / std::abs(q.sigma);
  }
  res.value *= C;
  res.abs_error *= std::abs(C);
  res.evaluations = b.used;
  return res;
}

// omega^{sigma,inf}_t(x) = Gamma(sigma)^{-1} int_1^inf s^{sigma-1} p_{s-it}(x) ds, with the
// s-range extended until the e^{-s kappa} tail is negligible.
inline QuadratureResult wave_kernel_infty(const PlancherelDensity& pd, const KernelQuery& q,
                                          const KernelConfig& cfg = {}) {
  if (q.sigma.real() < 0) throw DomainError("wave_kernel_infty: Re sigma must be >= 0");
  if (q.t == 0.0) throw DomainError("wave kernel: t must be nonzero");
  const cplx rg = rgamma(q.sigma);
  if (rg == 0.0) return {};
  const double kappa = spectral_kappa(*pd.rs, q.kg_kappa);
  Budget b{0, cfg.budget};
  const Vec x = q.x_plus.size() ? q.x_plus : Vec::Zero(pd.rs->rank);
  const double width = std::min(1.0, 2.0 / kappa);
  QuadratureResult res;
  double S = 1.0;
  double inner_err = 0.0;
  auto f = [&](double s) {
    const QuadratureResult p = detail::poisson_core(pd, cplx(s, -q.t), x, 0, kappa, cfg, b);
    const cplx w = std::exp((q.sigma - 1.0) * std::log(s));
    inner_err = std::max(inner_err, std::abs(w) * p.abs_error);
    return w * p.value;
  };
  for (int panel = 0; panel < 10000; ++panel) {
    const PanelSum p = gk21(f, S, S + width);
    res.value += p.kronrod;
    res.abs_error += p.error();
    S += width;
    // Remainder bound |f(S)| int_S^inf (s/S)^{Re sigma - 1} e^{-(s-S) kappa} ds.
    const double f_end = std::abs(f(S));
    const double rate = kappa - std::max(0.0, q.sigma.real() - 1.0) / S;
    if (rate > 0) {
      const double tail = f_end / rate;
      if (tail < cfg.rel_tol * std::abs(res.value) || tail < 1e-300) {
        res.abs_error += tail;
        break;
      }
    }
  }
  res.abs_error += inner_err * (S - 1.0);
  res.value *= rg;
  res.abs_error *= std::abs(rg);
  res.evaluations = b.used;
  return res;
}

// ---- Kunze-Stein integral -------------------------------------------------

struct KernelSamples {
  std::vector<Vec> points;     // chamber points
  std::vector<double> weights;  // quadrature weights for dx+ on the chamber
  std::vector<double> values;   // |kappa(x+)|
};

// Tensor grid in dual-basis coordinates x = sum c_k Lambda_k, c_k in [0, R],
// midpoint rule with the linear Jacobian |det Lambda|.
inline KernelSamples chamber_grid(const RootSystem& rs, double R, int n) {
  const DualBasis db = dual_basis(rs);
  const int l = rs.rank;
  Mat L(l, l);
  for (int k = 0; k < l; ++k) L.col(k) = db.lambdas[k];
  const double jac = std::abs(L.determinant());
  const double h = R / n;
  KernelSamples ks;
  std::vector<int> idx(l, 0);
  long long total = 1;
  for (int k = 0; k < l; ++k) total *= n;
  for (long long c = 0; c < total; ++c) {
    long long rem = c;
    Vec coef(l);
    for (int k = 0; k < l; ++k) {
      coef[k] = (rem % n + 0.5) * h;
      rem /= n;
    }
    ks.points.push_back(L * coef);
    ks.weights.push_back(std::pow(h, l) * jac);
  }
  ks.values.assign(ks.points.size(), 0.0);
  return ks;
}

// {int delta(x) phi_0(x) |kappa(x)|^{q/2} dx}^{2/q}; q = inf gives sup |kappa|.
inline double kunze_stein_bound(const RootSystem& rs, const KernelSamples& ks, double q) {
  if (!(q >= 2)) throw DomainError("kunze_stein_bound: q must be >= 2");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : ks.values) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < ks.points.size(); ++i) {
    if (ks.values[i] == 0.0) continue;
    acc += ks.weights[i] * cartan_density(rs, ks.points[i]) * phi_zero(rs, ks.points[i]).value *
           std::pow(std::abs(ks.values[i]), q / 2);
  }
  return std::pow(acc, 2.0 / q);
}

// ---- decay fits ------------------------------------------------------------

struct DecayFit {
  double exponent;
  double intercept;
  double r_squared;
  double t_min, t_max;
};

inline DecayFit decay_fit(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 8) throw DomainError("decay_fit: at least 8 points required");
  const std::size_t n = series.size();
  double sx = 0, sy = 0;
  std::vector<double> X(n), Y(n);
  DecayFit f{0, 0, 0, 1e300, 0};
  for (std::size_t i = 0; i < n; ++i) {
    if (!(series[i].first > 0) || !(series[i].second > 0)) throw DomainError("decay_fit: nonpositive value");
    X[i] = std::log(series[i].first);
    Y[i] = std::log(series[i].second);
    sx += X[i];
    sy += Y[i];
    f.t_min = std::min(f.t_min, series[i].first);
    f.t_max = std::max(f.t_max, series[i].first);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
    syy += (Y[i] - my) * (Y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("decay_fit: all times equal");
  f.exponent = sxy / sxx;
  f.intercept = my - f.exponent * mx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

inline std::vector<double> log_spaced(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (n - 1)));
  return v;
}

}  // namespace symmwave
