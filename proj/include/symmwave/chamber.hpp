#pragma once
// Barycentric decomposition of the Weyl chamber: dual basis, the geometric
// constants c1..c5, L1, L2, M1, M2, C_Sigma, tiles (w, j) and the smooth
// degree-0 partition of unity chi_{w.S_j}.

#include "symmwave/rootsys.hpp"

#include <cmath>
#include <sstream>

namespace symmwave {

struct DualBasis {
  std::vector<Vec> lambdas;  // <alpha_j, Lambda_k> = delta_jk
};

inline DualBasis dual_basis(const RootSystem& rs) {
  const int l = rs.rank;
  Mat G(l, l);
  for (int j = 0; j < l; ++j)
    for (int k = 0; k < l; ++k) G(j, k) = rs.simple(j).dot(rs.simple(k));
  Eigen::FullPivLU<Mat> lu(G);
  if (!lu.isInvertible() || std::abs(G.determinant()) < 1e-14)
    throw DomainError("dual_basis: singular Gram matrix");
  const Mat Gi = lu.inverse();
  DualBasis db;
  for (int k = 0; k < l; ++k) {
    Vec v = Vec::Zero(l);
    for (int j = 0; j < l; ++j) v += Gi(j, k) * rs.simple(j);
    db.lambdas.push_back(v);
  }
  return db;
}

// Largest deviation from the two dual-basis identities.
struct DualResiduals {
  double delta;        // max |<alpha_j, Lambda_k> - delta_jk|
  double min_lambda_gram;  // min <Lambda_j, Lambda_k> (must be >= 0)
};

inline DualResiduals dual_residuals(const RootSystem& rs, const DualBasis& db) {
  DualResiduals r{0.0, 1e300};
  for (int j = 0; j < rs.rank; ++j)
    for (int k = 0; k < rs.rank; ++k) {
      r.delta = std::max(r.delta, std::abs(rs.simple(j).dot(db.lambdas[k]) - (j == k ? 1.0 : 0.0)));
      r.min_lambda_gram = std::min(r.min_lambda_gram, db.lambdas[j].dot(db.lambdas[k]));
    }
  return r;
}

struct PartitionConstants {
  double c1, c2, c3, c4, c5;
  double L1, L2, M1, M2;
  double C_Sigma;
  double c3_raw;  // minimum before the safety margin
};

namespace detail {

inline double simple_l1(const RootSystem& rs, const Vec& v) {
  double s = 0.0;
  for (int k = 0; k < rs.rank; ++k) s += std::abs(rs.simple(k).dot(v));
  return s;
}

// Orthonormal tangent basis at p on the unit sphere.
inline std::vector<Vec> tangent_basis(const Vec& p) {
  const int n = static_cast<int>(p.size());
  std::vector<Vec> out;
  for (int i = 0; i < n && static_cast<int>(out.size()) < n - 1; ++i) {
    Vec e = Vec::Unit(n, i);
    e -= e.dot(p) * p;
    for (const auto& b : out) e -= e.dot(b) * b;
    if (e.norm() > 1e-6) out.push_back(e / e.norm());
  }
  return out;
}

// Compass search on the sphere: robust at the kinks of the l1-type objective.
inline Vec refine_on_sphere(const RootSystem& rs, Vec p, double step) {
  double best = simple_l1(rs, p);
  while (step > 1e-15) {
    bool moved = false;
    for (const auto& t : tangent_basis(p)) {
      for (double sgn : {1.0, -1.0}) {
        Vec q = p + sgn * step * t;
        q /= q.norm();
        const double v = simple_l1(rs, q);
        if (v < best) {
          best = v;
          p = q;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return p;
}

inline Vec spherical_point(int rank, const double* angles) {
  Vec v(rank);
  if (rank == 2) {
    v << std::cos(angles[0]), std::sin(angles[0]);
  } else {
    v << std::sin(angles[0]) * std::cos(angles[1]), std::sin(angles[0]) * std::sin(angles[1]), std::cos(angles[0]);
  }
  return v;
}

}  // namespace detail

// c3 = min_{|l|=1} sum_k |<alpha_k, l>|. Rank one is exact (|alpha|); higher
// rank uses an angular grid of 2^-10 radians, compass refinement of the best
// grid points, a random-sample bracket check and a 1% downward margin.
inline double minimise_c3(const RootSystem& rs, double& raw, std::uint64_t seed = 7) {
  if (rs.rank == 1) {
    raw = rs.simple(0).norm();
    return raw;
  }
  if (rs.rank > 3) throw Unsupported("minimise_c3: rank <= 3");
  const double step = std::ldexp(1.0, -10);
  struct Cand {
    double v;
    Vec p;
  };
  std::vector<Cand> best;
  auto offer = [&](const Vec& p) {
    const double v = detail::simple_l1(rs, p);
    if (best.size() < 16 || v < best.back().v) {
      best.push_back({v, p});
      std::sort(best.begin(), best.end(), [](const Cand& a, const Cand& b) { return a.v < b.v; });
      if (best.size() > 16) best.pop_back();
    }
  };
  if (rs.rank == 2) {
    const int n = static_cast<int>(std::ceil(2 * pi / step));
    for (int i = 0; i < n; ++i) {
      double a = i * 2 * pi / n;
      offer(detail::spherical_point(2, &a));
    }
  } else {
    const int nt = static_cast<int>(std::ceil(pi / step));
    for (int i = 0; i <= nt; ++i) {
      const double th = i * pi / nt;
      const int np = std::max(1, static_cast<int>(std::ceil(2 * pi * std::sin(th) / step)));
      for (int k = 0; k < np; ++k) {
        double ang[2] = {th, k * 2 * pi / np};
        offer(detail::spherical_point(3, ang));
      }
    }
  }
  raw = 1e300;
  for (auto& c : best) raw = std::min(raw, detail::simple_l1(rs, detail::refine_on_sphere(rs, c.p, step)));
  // Bracket check: no random sample may undercut the refined minimum.
  std::mt19937_64 rng(seed);
  double worst = 1e300;
  Vec worst_p;
  for (int i = 0; i < 10000; ++i) {
    Vec p = random_unit(rng, rs.rank);
    const double v = detail::simple_l1(rs, p);
    if (v < worst) {
      worst = v;
      worst_p = p;
    }
  }
  if (worst < raw * (1 - 1e-12)) {
    std::ostringstream os;
    os << "extract_constants: minimisation failed to bracket the minimum (sample value " << worst << " < "
       << raw << ")";
    throw DomainError(os.str());
  }
  return 0.99 * raw;
}

inline PartitionConstants extract_constants(const RootSystem& rs, const DualBasis& db) {
  PartitionConstants c{};
  const int l = rs.rank;
  c.c3 = minimise_c3(rs, c.c3_raw);
  c.c2 = c.c3 / (2.0 * l);
  double L1 = 0.0;
  for (const auto& r : rs.positive_roots) {
    double h = 0.0;
    for (const auto& L : db.lambdas) h += r.vec.dot(L);
    L1 = std::max(L1, h);
  }
  if (std::abs(L1 - std::round(L1)) > 1e-9 || std::round(L1) < 1)
    throw DomainError("extract_constants: highest-root height is not a positive integer");
  c.L1 = std::round(L1);
  c.L2 = 0.0;
  c.M1 = 1e300;
  c.M2 = 0.0;
  for (const auto& L : db.lambdas) {
    c.L2 += L.norm();
    c.M1 = std::min(c.M1, L.norm());
    c.M2 = std::max(c.M2, L.norm());
  }
  c.c1 = 0.5 * c.c2 * std::min(1.0 / c.L1, c.M1 * c.M1 / (c.M2 * c.L2));
  c.c4 = c.c2 - c.L1 * c.c1;
  c.c5 = c.M1 * c.M1 * c.c2 - c.M2 * c.L2 * c.c1;
  c.C_Sigma = std::min(c.c5 / (2.0 * c.M2), 0.5);
  if (!(c.c4 > 0 && c.c5 > 0 && c.c1 < c.c2)) throw DomainError("extract_constants: positivity invariants fail");
  return c;
}

struct TileId {
  int w = 0;  // index into the Weyl group element list
  int j = 0;  // simple-root index, 0-based
  bool operator==(const TileId& o) const { return w == o.w && j == o.j; }
};

// Everything needed to evaluate cutoffs quickly: Weyl images of the simple
// roots and of the dual basis.
struct ChamberPartition {
  const RootSystem* rs = nullptr;
  DualBasis db;
  PartitionConstants consts{};
  std::vector<std::vector<Vec>> w_alpha;   // [w][k] = w alpha_k
  std::vector<std::vector<Vec>> w_lambda;  // [w][k] = w Lambda_k

  int rank() const { return rs->rank; }
  std::size_t tile_count() const { return w_alpha.size() * static_cast<std::size_t>(rank()); }
  TileId tile(std::size_t i) const { return {static_cast<int>(i / rank()), static_cast<int>(i % rank())}; }
};

inline ChamberPartition make_partition(const RootSystem& rs) {
  ChamberPartition cp;
  cp.rs = &rs;
  cp.db = dual_basis(rs);
  cp.consts = extract_constants(rs, cp.db);
  for (const auto& w : rs.weyl.elements) {
    std::vector<Vec> a, L;
    for (int k = 0; k < rs.rank; ++k) {
      a.push_back(w * rs.simple(k));
      L.push_back(w * cp.db.lambdas[k]);
    }
    cp.w_alpha.push_back(a);
    cp.w_lambda.push_back(L);
  }
  return cp;
}

// (w, j) with w^{-1} l in the closed chamber and <alpha_j, w^{-1} l> maximal.
// Ties: smallest j, then smallest w index.
inline TileId tile_of(const ChamberPartition& cp, const Vec& lambda) {
  if (lambda.norm() == 0.0) throw DomainError("tile_of: lambda = 0");
  const double tol = 1e-12 * lambda.norm();
  TileId best{-1, -1};
  double best_val = -1e300;
  for (std::size_t w = 0; w < cp.w_alpha.size(); ++w) {
    bool inside = true;
    for (int k = 0; k < cp.rank(); ++k)
      if (cp.w_alpha[w][k].dot(lambda) < -tol) { inside = false; break; }
    if (!inside) continue;
    for (int j = 0; j < cp.rank(); ++j) {
      const double v = cp.w_alpha[w][j].dot(lambda);
      // Strictly larger, or equal with a smaller j (w ascends, so equal j keeps the earlier w).
      if (v > best_val + tol || (std::abs(v - best_val) <= tol && j < best.j)) {
        best_val = v;
        best = {static_cast<int>(w), j};
      }
    }
  }
  if (best.w < 0) throw DomainError("tile_of: no chamber contains lambda (malformed system)");
  return best;
}

// Smooth step: 1 for r >= 0, 0 for r <= -c1, built from exp(-1/x).
inline double cutoff_profile(double r, double c1) {
  if (r >= 0.0) return 1.0;
  if (r <= -c1) return 0.0;
  auto g = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double a = g((r + c1) / c1), b = g(-r / c1);
  return a / (a + b);
}

// chi~_{w.S_j}(l) = prod_{k != j} chi(<w a_k, l>/|l|) chi((<w a_j, l> - <w a_k, l>)/|l|).
// In rank one the product is empty; the single factor chi(<w a_1, l>/|l|)
// selects the half-line instead.
inline double chi_tilde(const ChamberPartition& cp, TileId t, const Vec& lambda) {
  const double n = lambda.norm();
  if (n == 0.0) throw DomainError("chi_tilde: lambda = 0");
  const double c1 = cp.consts.c1;
  const auto& wa = cp.w_alpha[t.w];
  if (cp.rank() == 1) return cutoff_profile(wa[0].dot(lambda) / n, c1);
  const double aj = wa[t.j].dot(lambda) / n;
  double v = 1.0;
  for (int k = 0; k < cp.rank() && v > 0.0; ++k) {
    if (k == t.j) continue;
    const double ak = wa[k].dot(lambda) / n;
    v *= cutoff_profile(ak, c1) * cutoff_profile(aj - ak, c1);
  }
  return v;
}

// All chi_{w.S_j}(l) in tile order; they sum to one.
inline std::vector<double> chi_all(const ChamberPartition& cp, const Vec& lambda) {
  std::vector<double> v(cp.tile_count());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) total += (v[i] = chi_tilde(cp, cp.tile(i), lambda));
  if (!(total >= 1.0 - 1e-12)) throw DomainError("chi: partition denominator below 1");
  for (auto& x : v) x /= total;
  return v;
}

inline double chi(const ChamberPartition& cp, TileId t, const Vec& lambda) {
  double total = 0.0;
  for (std::size_t i = 0; i < cp.tile_count(); ++i) total += chi_tilde(cp, cp.tile(i), lambda);
  if (!(total >= 1.0 - 1e-12)) throw DomainError("chi: partition denominator below 1");
  return chi_tilde(cp, t, lambda) / total;
}

inline double partition_residual(const ChamberPartition& cp, const Vec& lambda) {
  double s = 0.0;
  for (double x : chi_all(cp, lambda)) s += x;
  return std::abs(s - 1.0);
}

struct SupportViolation {
  TileId tile;
  Vec lambda;
  std::string what;
};

struct SupportReport {
  long long samples = 0;
  long long checks = 0;  // (lambda, tile) pairs inside a support
  long long violations = 0;
  std::vector<SupportViolation> witnesses;  // first few
};

// Checks, on supp chi_{w.S_j}: every root a has <a, w Lambda_j> = 0 or
// |<a, l>| >= c4 |l|; and <w Lambda_j, l> >= c5 |l| (signed form).
inline void check_support_point(const ChamberPartition& cp, TileId t, const Vec& lambda, SupportReport& rep) {
  const double n = lambda.norm();
  const auto& c = cp.consts;
  const Vec& L = cp.w_lambda[t.w][t.j];
  ++rep.checks;
  auto flag = [&](const std::string& what) {
    ++rep.violations;
    if (rep.witnesses.size() < 8) rep.witnesses.push_back({t, lambda, what});
  };
  for (const auto& r : cp.rs->positive_roots) {
    if (std::abs(r.vec.dot(L)) < 1e-12) continue;
    if (std::abs(r.vec.dot(lambda)) < c.c4 * n * (1 - 1e-12)) flag("root bound |<a,l>| >= c4|l|");
  }
  if (L.dot(lambda) < c.c5 * n * (1 - 1e-12)) flag("vertex bound <w Lambda_j, l> >= c5|l|");
}

inline SupportReport support_properties_check(const ChamberPartition& cp, long long samples, std::uint64_t seed) {
  SupportReport rep;
  std::mt19937_64 rng(seed);
  for (long long s = 0; s < samples; ++s) {
    Vec lambda = random_unit(rng, cp.rank()) * std::exp(uniform(rng, -3.0, 3.0));
    ++rep.samples;
    for (std::size_t i = 0; i < cp.tile_count(); ++i)
      if (chi_tilde(cp, cp.tile(i), lambda) > 0.0) check_support_point(cp, cp.tile(i), lambda, rep);
  }
  return rep;
}

inline SupportReport support_properties_check(const ChamberPartition& cp, TileId t, long long samples,
                                              std::uint64_t seed) {
  SupportReport rep;
  std::mt19937_64 rng(seed);
  for (long long s = 0; s < samples; ++s) {
    Vec lambda = random_unit(rng, cp.rank());
    ++rep.samples;
    if (chi_tilde(cp, t, lambda) > 0.0) check_support_point(cp, t, lambda, rep);
  }
  return rep;
}

struct PhaseBoundReport {
  double min_modulus;
  double bound;  // (sqrt 2 - 1)/2 c5
  bool flagged;  // min below the bound
  long long samples;
};

// min |<w Lambda_j, l / sqrt(|l|^2 + |rho|^2) - i A / tau>| over samples in
// supp chi_{w.S_j} with |l| >= |rho|; tau = s - i t.
inline PhaseBoundReport phase_derivative_lower_bound(const ChamberPartition& cp, TileId t, cplx tau, const Vec& x,
                                                     long long samples, std::uint64_t seed) {
  if (!(tau.real() > 0.0 && tau.real() <= 1.0)) throw DomainError("phase bound: Re tau must lie in (0, 1]");
  const double time = -tau.imag();
  if (time == 0.0 || x.norm() / std::abs(time) > cp.consts.C_Sigma * (1 + 1e-12))
    throw DomainError("phase bound: |x|/|t| exceeds C_Sigma");
  const Vec rho = half_sum_rho(*cp.rs);
  const double rn = rho.norm();
  const Vec& L = cp.w_lambda[t.w][t.j];
  const cplx shift = cplx(0.0, -1.0) * L.dot(x) / tau;
  std::mt19937_64 rng(seed);
  PhaseBoundReport rep{1e300, (std::sqrt(2.0) - 1.0) / 2.0 * cp.consts.c5, false, 0};
  long long attempts = 0;
  while (rep.samples < samples) {
    if (++attempts > 1000 * samples + 100000) throw DomainError("phase bound: support sampling stalled");
    Vec dir = random_unit(rng, cp.rank());
    if (chi_tilde(cp, t, dir) <= 0.0) continue;
    const double r = rn * std::exp(uniform(rng, 0.0, std::log(100.0)));
    const Vec lambda = r * dir;
    const double val = std::abs(L.dot(lambda) / std::sqrt(r * r + rn * rn) + shift);
    rep.min_modulus = std::min(rep.min_modulus, val);
    ++rep.samples;
  }
  rep.flagged = rep.min_modulus < rep.bound;
  return rep;
}

}  // namespace symmwave
