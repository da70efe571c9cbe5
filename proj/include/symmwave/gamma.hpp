#pragma once
// Complex log-Gamma (Lanczos, g = 607/128, 15 terms) with reflection, and a
// reciprocal Gamma that is exactly zero at the poles.

#include "symmwave/core.hpp"

#include <array>
#include <cmath>

namespace symmwave {

namespace detail {

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log sin(pi z), safe for large |Im z| where sin itself overflows.
inline cplx log_sin_pi(cplx z) {
  const cplx I(0.0, 1.0);
  const double y = pi * z.imag();
  if (std::abs(y) < 30.0) return std::log(std::sin(pi * z));
  if (y > 0) return -I * pi * z + std::log((1.0 - std::exp(2.0 * I * pi * z)) / (-2.0 * I));
  return I * pi * z + std::log((1.0 - std::exp(-2.0 * I * pi * z)) / (2.0 * I));
}

inline cplx lanczos_log_gamma(cplx z) {
  static constexpr std::array<double, 15> c{
      0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
      14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
      .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
      -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
      .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};
  constexpr double g = 607.0 / 128.0;
  z -= 1.0;
  cplx sum = c[0];
  for (int k = 1; k < 15; ++k) sum += c[k] / (z + static_cast<double>(k));
  const cplx base = z + g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(base) - base + std::log(sum);
}

}  // namespace detail

inline cplx log_gamma(cplx z) {
  if (detail::is_nonpositive_integer(z)) throw DomainError("log_gamma: pole at a nonpositive integer");
  if (z.real() >= 0.5) return detail::lanczos_log_gamma(z);
  return std::log(pi) - detail::log_sin_pi(z) - detail::lanczos_log_gamma(1.0 - z);
}

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

// 1/Gamma(z), entire; exact zeros at 0, -1, -2, ...
inline cplx rgamma(cplx z) {
  if (detail::is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

}  // namespace symmwave
