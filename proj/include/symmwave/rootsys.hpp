#pragma once
// Root-system catalog (A1, BC1, A2, A3, B2, G2), Weyl group closure and the
// elementary quantities built from roots: rho, Cartan density, d and D.

#include "symmwave/core.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace symmwave {

struct Root {
  Vec vec;
  int mult = 1;
  bool is_reduced = true;  // alpha/2 is not a root
};

struct WeylGroup {
  std::vector<Mat> elements;  // elements[0] is the identity
  std::vector<Mat> generators;
  std::vector<int> det;  // +1 / -1 per element

  std::size_t order() const { return elements.size(); }
};

struct RootSystem {
  int rank = 0;
  std::vector<Root> positive_roots;
  std::vector<int> simple_indices;
  std::string catalog;  // A1, BC1, A2, A3, B2, G2
  std::string label;
  WeylGroup weyl;

  const Vec& simple(int j) const { return positive_roots[simple_indices[j]].vec; }

  // Multiplicity of 2*alpha, or 0 when 2*alpha is not a root.
  int mult_double(const Root& a) const {
    for (const auto& b : positive_roots)
      if ((b.vec - 2.0 * a.vec).norm() < 1e-12) return b.mult;
    return 0;
  }

  bool is_complex_type() const {
    for (const auto& r : positive_roots)
      if (!r.is_reduced || r.mult != 2) return false;
    return true;
  }
};

namespace detail {

inline Vec v2(double a, double b) { Vec v(2); v << a, b; return v; }
inline Vec v3(double a, double b, double c) { Vec v(3); v << a, b, c; return v; }

// Catalog geometry: positive roots (all of them, non-reduced included) and
// simple root indices.
struct Geometry {
  int rank;
  std::vector<Vec> roots;
  std::vector<bool> reduced;
  std::vector<int> simple;
};

inline Geometry catalog_geometry(const std::string& id) {
  const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
  Geometry g;
  if (id == "A1") {
    g.rank = 1;
    g.roots = {Vec::Ones(1)};
    g.simple = {0};
  } else if (id == "BC1") {
    g.rank = 1;
    g.roots = {Vec::Ones(1), 2.0 * Vec::Ones(1)};
    g.reduced = {true, false};
    g.simple = {0};
  } else if (id == "A2") {
    g.rank = 2;
    g.roots = {v2(1, 0), v2(-0.5, s3 / 2), v2(0.5, s3 / 2)};
    g.simple = {0, 1};
  } else if (id == "A3") {
    // D3 realisation of A3, scaled to unit roots.
    g.rank = 3;
    g.roots = {v3(1, -1, 0) / s2, v3(0, 1, -1) / s2, v3(0, 1, 1) / s2,
               v3(1, 0, -1) / s2, v3(1, 0, 1) / s2, v3(1, 1, 0) / s2};
    g.simple = {0, 1, 2};
  } else if (id == "B2") {
    g.rank = 2;
    g.roots = {v2(1, -1), v2(0, 1), v2(1, 0), v2(1, 1)};
    g.simple = {0, 1};
  } else if (id == "G2") {
    g.rank = 2;
    Vec a = v2(1, 0), b = v2(-1.5, s3 / 2);
    g.roots = {a, b, a + b, 2 * a + b, 3 * a + b, 3 * a + 2 * b};
    g.simple = {0, 1};
  } else {
    throw DomainError("unknown root-system label '" + id + "'");
  }
  if (g.reduced.empty()) g.reduced.assign(g.roots.size(), true);
  return g;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

inline int parse_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw DomainError("not an integer: '" + s + "'");
  return v;
}

struct MatKey {
  std::vector<long long> q;
  bool operator==(const MatKey& o) const { return q == o.q; }
};
struct MatKeyHash {
  std::size_t operator()(const MatKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (long long x : k.q) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};
inline MatKey mat_key(const Mat& m) {
  MatKey k;
  for (int i = 0; i < m.size(); ++i) k.q.push_back(std::llround(m.data()[i] * 1e12));
  return k;
}

}  // namespace detail

inline constexpr std::size_t weyl_cap = 10000;

inline Mat reflection(const Vec& a) {
  const int n = static_cast<int>(a.size());
  return Mat::Identity(n, n) - 2.0 * a * a.transpose() / a.squaredNorm();
}

// Breadth-first closure of the simple reflections.
inline WeylGroup weyl_group_from_simple(const std::vector<Vec>& simple, std::size_t cap = weyl_cap) {
  WeylGroup w;
  const int n = static_cast<int>(simple.front().size());
  for (const auto& a : simple) w.generators.push_back(reflection(a));
  std::unordered_set<detail::MatKey, detail::MatKeyHash> seen;
  std::vector<Mat> queue{Mat::Identity(n, n)};
  seen.insert(detail::mat_key(queue[0]));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : w.generators) {
      Mat m = g * queue[head];
      if (seen.insert(detail::mat_key(m)).second) {
        queue.push_back(m);
        if (queue.size() > cap) throw DomainError("Weyl group closure exceeds safety cap");
      }
    }
  }
  w.elements = std::move(queue);
  for (const auto& m : w.elements) w.det.push_back(m.determinant() > 0 ? 1 : -1);
  return w;
}

inline const WeylGroup& weyl_group(const RootSystem& rs) { return rs.weyl; }

// Index of the positive root equal to +-v, with the sign; -1 if none.
inline std::pair<int, int> find_root(const RootSystem& rs, const Vec& v, double tol = 1e-9) {
  for (std::size_t i = 0; i < rs.positive_roots.size(); ++i) {
    if ((rs.positive_roots[i].vec - v).norm() < tol) return {static_cast<int>(i), 1};
    if ((rs.positive_roots[i].vec + v).norm() < tol) return {static_cast<int>(i), -1};
  }
  return {-1, 0};
}

inline int classical_weyl_order(const std::string& catalog) {
  static const std::map<std::string, int> orders{{"A1", 2}, {"BC1", 2}, {"A2", 6},
                                                 {"A3", 24}, {"B2", 8}, {"G2", 12}};
  auto it = orders.find(catalog);
  return it == orders.end() ? 0 : it->second;
}

// Multiplicity presets. "normal": all m = 1; "complex": every reduced root
// m = 2 (reduced catalogs only); "hyperbolic:d": A1 with m = d - 1.
inline std::vector<int> preset_multiplicities(const std::string& catalog, const std::string& preset) {
  auto g = detail::catalog_geometry(catalog);
  if (preset == "normal") return std::vector<int>(g.roots.size(), 1);
  if (preset == "complex") {
    for (bool r : g.reduced)
      if (!r) throw DomainError("complex preset needs a reduced catalog (got " + catalog + ")");
    return std::vector<int>(g.roots.size(), 2);
  }
  if (preset.rfind("hyperbolic", 0) == 0) {
    if (catalog != "A1") throw DomainError("hyperbolic preset is defined for A1 only");
    auto parts = detail::split(preset, ':');
    if (parts.size() != 2) throw DomainError("hyperbolic preset needs a dimension, e.g. hyperbolic:3");
    int d = detail::parse_int(parts[1]);
    if (d < 2) throw DomainError("hyperbolic dimension must be >= 2");
    return {d - 1};
  }
  throw DomainError("unknown multiplicity preset '" + preset + "'");
}

// mults: empty (normal real form), one value (applied to every root; for BC1
// this is rejected), or one value per positive root in catalog order.
inline RootSystem build_root_system(const std::string& catalog_id, const std::vector<int>& mults = {},
                                    const std::string& label = "") {
  auto g = detail::catalog_geometry(catalog_id);
  std::vector<int> m;
  if (mults.empty()) {
    m.assign(g.roots.size(), 1);
  } else if (mults.size() == 1 && g.roots.size() > 1) {
    if (catalog_id == "BC1") throw DomainError("BC1 needs two multiplicities (m1, m2)");
    m.assign(g.roots.size(), mults[0]);
  } else if (mults.size() == g.roots.size()) {
    m = mults;
  } else {
    throw DomainError("catalog " + catalog_id + " expects " + std::to_string(g.roots.size()) +
                      " multiplicities, got " + std::to_string(mults.size()));
  }
  for (int x : m)
    if (x <= 0) throw DomainError("nonpositive multiplicity " + std::to_string(x));

  RootSystem rs;
  rs.rank = g.rank;
  rs.catalog = catalog_id;
  rs.label = label.empty() ? catalog_id : label;
  rs.simple_indices = g.simple;
  for (std::size_t i = 0; i < g.roots.size(); ++i) rs.positive_roots.push_back({g.roots[i], m[i], g.reduced[i]});
  std::vector<Vec> simple;
  for (int j : g.simple) simple.push_back(g.roots[j]);
  rs.weyl = weyl_group_from_simple(simple);

  // Multiplicities must be constant on Weyl orbits.
  for (const auto& w : rs.weyl.elements)
    for (const auto& r : rs.positive_roots) {
      auto [idx, sign] = find_root(rs, w * r.vec);
      if (idx < 0) throw DomainError("Weyl group does not permute the roots");
      if (rs.positive_roots[idx].mult != r.mult)
        throw DomainError("multiplicities are not Weyl-invariant");
    }
  return rs;
}

// d = l + sum m_alpha, D = l + 2 #(reduced positive roots).
struct Dims {
  int d;
  int D;
};

inline Dims dims(const RootSystem& rs) {
  int d = rs.rank, D = rs.rank;
  for (const auto& r : rs.positive_roots) {
    d += r.mult;
    if (r.is_reduced) D += 2;
  }
  return {d, D};
}

inline Vec half_sum_rho(const RootSystem& rs) {
  Vec rho = Vec::Zero(rs.rank);
  for (const auto& r : rs.positive_roots) rho += 0.5 * r.mult * r.vec;
  return rho;
}

inline bool in_closed_chamber(const RootSystem& rs, const Vec& H, double tol = 1e-12) {
  const double scale = std::max(1.0, H.norm());
  for (int j : rs.simple_indices)
    if (rs.positive_roots[j].vec.dot(H) < -tol * scale) return false;
  return true;
}

inline bool in_open_chamber(const RootSystem& rs, const Vec& H) {
  for (int j : rs.simple_indices)
    if (rs.positive_roots[j].vec.dot(H) <= 0.0) return false;
  return true;
}

// delta(H) = prod sinh(<alpha,H>)^{m_alpha}.
inline double cartan_density(const RootSystem& rs, const Vec& H) {
  if (!in_closed_chamber(rs, H)) throw DomainError("cartan_density: H outside the closed chamber");
  double v = 1.0;
  for (const auto& r : rs.positive_roots) v *= std::pow(std::sinh(std::max(0.0, r.vec.dot(H))), r.mult);
  return v;
}

// Chamber representative of H under W (the dominant element of W.H).
inline Vec to_chamber(const RootSystem& rs, const Vec& H) {
  for (const auto& w : rs.weyl.elements) {
    Vec m = w.transpose() * H;
    bool ok = true;
    for (int j : rs.simple_indices)
      if (rs.positive_roots[j].vec.dot(m) < -1e-14 * std::max(1.0, H.norm())) { ok = false; break; }
    if (ok) return m;
  }
  throw DomainError("to_chamber: no dominant representative (malformed system)");
}

// Structural validation of the type invariants; returns a list of failures.
inline std::vector<std::string> validate(const RootSystem& rs) {
  std::vector<std::string> bad;
  const int l = rs.rank;
  Mat S(l, l);
  for (int j = 0; j < l; ++j) S.col(j) = rs.simple(j);
  if (std::abs(S.determinant()) < 1e-12) bad.push_back("simple roots are linearly dependent");
  for (int j = 0; j < l; ++j)
    for (int k = 0; k < l; ++k)
      if (j != k && rs.simple(j).dot(rs.simple(k)) > 0) bad.push_back("positive inner product between simple roots");
  for (const auto& r : rs.positive_roots) {
    if (r.mult < 1) bad.push_back("nonpositive multiplicity");
    Vec c = S.colPivHouseholderQr().solve(r.vec);
    for (int j = 0; j < l; ++j)
      if (c[j] < -1e-9 || std::abs(c[j] - std::round(c[j])) > 1e-9)
        bad.push_back("positive root is not a nonnegative integer combination of simple roots");
  }
  for (const auto& w : rs.weyl.elements) {
    if ((w.transpose() * w - Mat::Identity(l, l)).cwiseAbs().maxCoeff() > 1e-12)
      bad.push_back("Weyl element not orthogonal");
    for (const auto& r : rs.positive_roots)
      if (find_root(rs, w * r.vec).first < 0) bad.push_back("Weyl element does not permute roots");
  }
  int expect = classical_weyl_order(rs.catalog);
  if (expect && static_cast<int>(rs.weyl.order()) != expect) bad.push_back("Weyl group order mismatch");
  return bad;
}

// ---- system files ---------------------------------------------------------
//   # comment
//   catalog = A2
//   multiplicities = 2, 2, 2      (or a preset: normal | complex | hyperbolic:3)
//   label = my-system
inline RootSystem parse_system_file(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) eq = line.find(':');
    if (eq == std::string::npos)
      throw DomainError("system file line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string val = detail::trim(line.substr(eq + 1));
    if (key != "catalog" && key != "multiplicities" && key != "label")
      throw DomainError("system file: unknown key '" + key + "'");
    kv[key] = val;
  }
  if (!kv.count("catalog")) throw DomainError("system file: missing 'catalog'");
  std::string catalog = kv["catalog"];
  std::vector<int> mults;
  if (kv.count("multiplicities") && !kv["multiplicities"].empty()) {
    std::string mv = kv["multiplicities"];
    if (!mv.empty() && (std::isalpha(static_cast<unsigned char>(mv[0])))) {
      mults = preset_multiplicities(catalog, mv);
    } else {
      if (mv.front() == '[' && mv.back() == ']') mv = mv.substr(1, mv.size() - 2);
      for (const auto& tok : detail::split(mv, ',')) mults.push_back(detail::parse_int(tok));
    }
  }
  return build_root_system(catalog, mults, kv.count("label") ? kv["label"] : "");
}

inline RootSystem load_system_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read system file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_system_file(ss.str());
}

}  // namespace symmwave
