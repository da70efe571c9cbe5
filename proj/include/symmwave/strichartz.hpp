#pragma once
// Admissible pairs, the Strichartz regularity sigma(p,q), the critical power
// family and the piecewise regularity needed for small-data global existence.

#include "symmwave/core.hpp"

#include <cmath>
#include <limits>

namespace symmwave {

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline double inverse_exponent(double p) {
  if (!(p > 0)) throw DomainError("exponent must be positive");
  return std::isinf(p) ? 0.0 : 1.0 / p;
}

// (1/p, 1/q) in (0,1/2] x (0,1/2) with 1/p >= (d-1)/2 (1/2 - 1/q), or the
// apex (0, 1/2). The lower edge is closed; a few ulps absorb rounding.
inline bool is_admissible(int d, double p, double q) {
  if (d < 3) throw DomainError("is_admissible: d >= 3 required");
  const double ip = inverse_exponent(p), iq = inverse_exponent(q);
  if (ip == 0.0 && iq == 0.5) return true;
  if (!(ip > 0.0 && ip <= 0.5)) return false;
  if (!(iq > 0.0 && iq < 0.5)) return false;
  const double edge = 0.5 * (d - 1) * (0.5 - iq);
  return ip >= edge - 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, edge);
}

// sigma(p,q) = (d+1)/2 (1/2 - 1/q) + max{0, (d-1)/2 (1/2 - 1/q) - 1/p}.
inline double sigma_pq(int d, double p, double q) {
  if (d < 3) throw DomainError("sigma_pq: d >= 3 required");
  const double ip = inverse_exponent(p), iq = inverse_exponent(q);
  const bool apex = ip == 0.0 && iq == 0.5;
  if (!apex && !(ip >= 0.0 && ip <= 0.5 && iq > 0.0 && iq < 0.5))
    throw DomainError("sigma_pq: (1/p, 1/q) outside [0,1/2] x (0,1/2)");
  const double a = 0.5 - iq;
  return 0.5 * (d + 1) * a + std::max(0.0, 0.5 * (d - 1) * a - ip);
}

struct ExponentFamily {
  int d;
  double gamma_c, gamma_0, gamma_1, gamma_2, gamma_3;
  bool warning_d3;  // d = 3 lies below the d >= 4 range of the higher-rank theory
};

inline ExponentFamily exponent_family(int d) {
  if (d < 3) throw DomainError("exponent_family: d >= 3 required");
  const double dd = d;
  ExponentFamily f{};
  f.d = d;
  f.gamma_c = 1.0 + 4.0 / (dd - 1);
  const double b = 0.5 + 1.0 / (dd - 1);
  f.gamma_0 = b + std::sqrt(b * b + 2.0 / (dd - 1));
  f.gamma_1 = 1.0 + 3.0 / dd;
  f.gamma_2 = 1.0 + 2.0 / ((dd - 1) / 2 + 2.0 / (dd - 1));
  if (d <= 5) {
    f.gamma_3 = 1.0 + 4.0 / (dd - 2);
  } else {
    const double u = (dd - 3) / 2 + 3.0 / (dd + 1);
    f.gamma_3 = (dd - 1) / 2 + 3.0 / (dd + 1) - std::sqrt(u * u - 4.0 * (dd - 1) / (dd + 1));
  }
  f.warning_d3 = d == 3;
  return f;
}

inline double sigma_curve_1(int d, double g) {
  const double dd = d;
  return (dd + 1) / 4 - (dd + 1) * (dd + 5) / (8 * dd) / (g - (dd + 1) / (2 * dd));
}
inline double sigma_curve_2(int d, double g) { return (d + 1) / 4.0 - 1.0 / (g - 1); }
inline double sigma_curve_3(int d, double g) { return d / 2.0 - 2.0 / (g - 1); }

struct SigmaRequired {
  double sigma;
  bool infimum;  // first range: sigma > 0 is required, 0 itself not attained
  int range;     // 1..4, the case of the theorem that produced the value
  bool warning_d3;
};

// Cases: (1, g1] -> sigma > 0; [g1, g2] -> s1; [g2, gc] -> s2; [gc, g3] -> s3.
// Where ranges overlap the smaller threshold wins.
inline SigmaRequired sigma_required(int d, double g) {
  const auto f = exponent_family(d);
  if (!(g > 1.0 && g <= f.gamma_3)) throw DomainError("sigma_required: gamma outside (1, gamma_3]");
  SigmaRequired best{inf, false, 0, f.warning_d3};
  auto offer = [&](double s, bool infimum, int range) {
    if (s < best.sigma) best = {s, infimum, range, f.warning_d3};
  };
  if (g <= f.gamma_1) offer(0.0, true, 1);
  if (g >= f.gamma_1 && g <= f.gamma_2) offer(sigma_curve_1(d, g), false, 2);
  if (g >= f.gamma_2 && g <= f.gamma_c) offer(sigma_curve_2(d, g), false, 3);
  if (g >= f.gamma_c) offer(sigma_curve_3(d, g), false, 4);
  return best;
}

// Klein-Gordon spectral shift: sqrt(|l|^2+|rho|^2) becomes sqrt(|l|^2+kappa^2).
struct SpectralShift {
  double kappa;
  double rho_norm;
  bool tilde_regime;  // kappa >= |rho|
  bool sub_rho;       // kappa < |rho|
};

inline SpectralShift kg_spectral_shift(double rho_norm, double kappa) {
  if (!(kappa > 0)) throw DomainError("Klein-Gordon parameter must be positive");
  return {kappa, rho_norm, kappa >= rho_norm, kappa < rho_norm};
}

}  // namespace symmwave
