#pragma once
// Panel quadrature: Gauss-Kronrod 21 with the embedded Gauss 10 rule as the
// error estimate, an adaptive bisection driver, and Gauss-Legendre tables.

#include "symmwave/core.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace symmwave {

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double abs_error = 0.0;
  long long evaluations = 0;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    abs_error += o.abs_error;
    evaluations += o.evaluations;
    return *this;
  }
};

struct PanelSum {
  cplx kronrod{0.0, 0.0};
  cplx gauss{0.0, 0.0};
  double abs_sum = 0.0;  // integral of |f|, for the rounding floor

  double error() const {
    return std::abs(kronrod - gauss) + 50.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  }
};

// GK21 on [a, b] for a complex-valued integrand.
template <class F>
PanelSum gk21(F&& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  static const auto& x = GK::abscissa();
  static const auto& wk = GK::weights();
  static const auto& wg = G::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  PanelSum p;
  cplx f0 = f(c);
  p.kronrod = wk[0] * f0;
  p.abs_sum = wk[0] * std::abs(f0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    cplx fp = f(c + h * x[i]), fm = f(c - h * x[i]);
    p.kronrod += wk[i] * (fp + fm);
    p.abs_sum += wk[i] * (std::abs(fp) + std::abs(fm));
    if (i & 1) p.gauss += wg[(i - 1) / 2] * (fp + fm);
  }
  p.kronrod *= h;
  p.gauss *= h;
  p.abs_sum *= std::abs(h);
  return p;
}

inline constexpr int gk21_points = 21;

// Adaptive bisection on [a, b]; stops when the summed error estimate meets
// max(abs_tol, rel_tol |value|), or when the Kronrod-Gauss part of it has
// dropped below the rounding floor (further splits cannot help).
// Panels are summed in left-to-right order.
template <class F>
QuadratureResult adaptive_gk(F&& f, double a, double b, double abs_tol, double rel_tol,
                             long long budget = 10'000'000) {
  struct Seg {
    double a, b;
    PanelSum p;
  };
  auto cmp = [](const Seg& l, const Seg& r) {
    double el = l.p.error(), er = r.p.error();
    return el != er ? el < er : l.a > r.a;
  };
  std::priority_queue<Seg, std::vector<Seg>, decltype(cmp)> heap(cmp);
  long long evals = gk21_points;
  heap.push({a, b, gk21(f, a, b)});
  cplx total = heap.top().p.kronrod;
  double err = heap.top().p.error();
  double mass = heap.top().p.abs_sum;
  const double floor_rate = 50.0 * std::numeric_limits<double>::epsilon();
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && err > 2.0 * floor_rate * mass) {
    if (evals + 2 * gk21_points > budget) throw BudgetExceeded("adaptive quadrature: evaluation budget exceeded");
    Seg s = heap.top();
    heap.pop();
    const double m = 0.5 * (s.a + s.b);
    if (!(m > s.a && m < s.b)) break;  // interval cannot be split further
    Seg l{s.a, m, gk21(f, s.a, m)}, r{m, s.b, gk21(f, m, s.b)};
    evals += 2 * gk21_points;
    total += l.p.kronrod + r.p.kronrod - s.p.kronrod;
    err += l.p.error() + r.p.error() - s.p.error();
    mass += l.p.abs_sum + r.p.abs_sum - s.p.abs_sum;
    heap.push(l);
    heap.push(r);
    // Re-sum occasionally to stop drift in the running totals.
    if (heap.size() % 64 == 0) {
      auto copy = heap;
      total = 0;
      err = 0;
      mass = 0;
      while (!copy.empty()) {
        total += copy.top().p.kronrod;
        err += copy.top().p.error();
        mass += copy.top().p.abs_sum;
        copy.pop();
      }
    }
  }
  std::vector<Seg> segs;
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& l, const Seg& r) { return l.a < r.a; });
  QuadratureResult res;
  for (const auto& s : segs) {
    res.value += s.p.kronrod;
    res.abs_error += s.p.error();
  }
  res.evaluations = evals;
  return res;
}

// Gauss-Legendre nodes/weights on (0, 1).
struct GaussTable {
  std::vector<double> x, w;
};

inline GaussTable gauss_legendre_unit(int n) {
  auto zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> nodes, weights;
  for (double z : zeros) {
    double dp = boost::math::legendre_p_prime<double>(n, z);
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    if (z == 0.0) {
      nodes.push_back(0.0);
      weights.push_back(w);
    } else {
      nodes.push_back(z);
      weights.push_back(w);
      nodes.push_back(-z);
      weights.push_back(w);
    }
  }
  GaussTable t;
  std::vector<std::size_t> idx(nodes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto l, auto r) { return nodes[l] < nodes[r]; });
  for (auto i : idx) {
    t.x.push_back(0.5 * (nodes[i] + 1.0));
    t.w.push_back(0.5 * weights[i]);
  }
  return t;
}

inline const GaussTable& gl64() {
  static const GaussTable t = gauss_legendre_unit(64);
  return t;
}

// Integral over the unit sphere of R^l (l = 1, 2, 3). Points where some
// normal is orthogonal to the direction are panel breaks, since integrands
// built from |<alpha, theta>| have kinks there. l = 3 integrates circles of
// latitude over z in [-1, 1].
template <class F>
double sphere_integral(int l, const std::vector<Vec>& normals, F&& f, double rel_tol = 1e-10,
                       long long* evals = nullptr) {
  auto count = [&](const QuadratureResult& q) {
    if (evals) *evals += q.evaluations;
    return q.value.real();
  };
  if (l == 1) {
    if (evals) *evals += 2;
    return f(Vec::Ones(1)) + f(Vec(-Vec::Ones(1)));
  }
  if (l != 2 && l != 3) throw Unsupported("sphere_integral: rank 1, 2 or 3");
  auto ring = [&](double z) {
    const double radius = l == 3 ? std::sqrt(std::max(0.0, 1.0 - z * z)) : 1.0;
    auto point = [&](double th) {
      Vec v(l);
      if (l == 2) v << std::cos(th), std::sin(th);
      else v << radius * std::cos(th), radius * std::sin(th), z;
      return v;
    };
    std::vector<double> cuts{0.0, 2 * pi};
    for (const auto& a : normals) {
      const double A = a(0) * radius, B = a(1) * radius, C = l == 3 ? a(2) * z : 0.0;
      const double Rn = std::hypot(A, B);
      if (Rn < 1e-14 || std::abs(C) > Rn) continue;
      const double phi = std::atan2(B, A), del = std::acos(-C / Rn);
      for (double th : {phi + del, phi - del}) {
        th = std::fmod(th, 2 * pi);
        if (th < 0) th += 2 * pi;
        cuts.push_back(th);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] - cuts[i] < 1e-14) continue;
      total += count(adaptive_gk([&](double th) { return cplx(f(point(th))); }, cuts[i], cuts[i + 1], 0.0, rel_tol));
    }
    return total;
  };
  if (l == 2) return ring(0.0);
  return count(adaptive_gk([&](double z) { return cplx(ring(z)); }, -1.0, 1.0, 0.0, rel_tol));
}

}  // namespace symmwave
