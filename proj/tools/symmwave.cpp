// symmwave: command-line front end to the library.
// Exit codes: 0 success/pass, 1 verification failure, 2 usage error.

#include "cli_io.hpp"
#include "verify_suite.hpp"

#include <CLI11.hpp>

using namespace symmwave;
using namespace symmwave::cli;

namespace {

struct Globals {
  std::string system;
  std::string out;
  std::uint64_t seed = 42;
  long long budget = 10'000'000;
  long long samples = 10000;
  double tol = -1.0;  // < 0: command default
};

RootSystem need_system(const Globals& g) {
  if (g.system.empty()) throw UsageError("--system <file> is required");
  return load_system_file(g.system);
}

KernelConfig kernel_config(const Globals& g) {
  KernelConfig c;
  if (g.budget <= 0) throw UsageError("--budget must be positive");
  c.budget = g.budget;
  if (g.tol > 0) c.rel_tol = g.tol;
  return c;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec parse_vec(const std::string& s, int rank, const char* what) {
  const auto v = parse_list(s);
  if (static_cast<int>(v.size()) != rank)
    throw UsageError(std::string(what) + " needs " + std::to_string(rank) + " coordinate(s)");
  Vec x(rank);
  for (int i = 0; i < rank; ++i) x[i] = v[i];
  return x;
}

// Positions given as radial distances along the first simple root in rank
// one, or as full coordinates otherwise.
Vec parse_point(const RootSystem& rs, const std::string& s) {
  if (s.empty()) return Vec::Zero(rs.rank);
  return parse_vec(s, rs.rank, "--x");
}

// ---- rootsys -------------------------------------------------------------------

int cmd_rootsys_info(const Globals& g) {
  const RootSystem rs = need_system(g);
  const auto dm = dims(rs);
  const auto bad = validate(rs);
  Json j;
  j["label"] = rs.label;
  j["catalog"] = rs.catalog;
  j["rank"] = rs.rank;
  j["d"] = dm.d;
  j["D"] = dm.D;
  j["weyl_order"] = rs.weyl.order();
  j["rho"] = vec_json(half_sum_rho(rs));
  j["rho_norm"] = half_sum_rho(rs).norm();
  Json roots = Json::array();
  for (std::size_t i = 0; i < rs.positive_roots.size(); ++i) {
    const auto& r = rs.positive_roots[i];
    const bool simple = std::find(rs.simple_indices.begin(), rs.simple_indices.end(), static_cast<int>(i)) !=
                        rs.simple_indices.end();
    roots.push_back({{"vector", vec_json(r.vec)}, {"mult", r.mult}, {"reduced", r.is_reduced}, {"simple", simple}});
  }
  j["positive_roots"] = roots;
  j["validation_failures"] = bad;
  j["pass"] = bad.empty();
  emit(g.out, j.dump(2) + "\n");
  return bad.empty() ? 0 : 1;
}

// ---- chamber -------------------------------------------------------------------

int cmd_chamber_verify(const Globals& g) {
  const RootSystem rs = need_system(g);
  if (g.samples <= 0) throw UsageError("--samples must be positive");
  const double tol = g.tol > 0 ? g.tol : 1e-10;
  const ChamberPartition cp = make_partition(rs);
  const auto& c = cp.consts;
  const auto dr = dual_residuals(rs, cp.db);
  std::mt19937_64 rng(g.seed);
  double worst = 0.0;
  for (long long k = 0; k < g.samples; ++k)
    worst = std::max(worst, partition_residual(cp, random_unit(rng, rs.rank) * std::exp(uniform(rng, -3.0, 3.0))));
  const SupportReport sup = support_properties_check(cp, g.samples, g.seed + 1);
  const bool pass = worst <= tol && sup.violations == 0 && dr.delta <= 1e-12 && c.c4 > 0 && c.c5 > 0 && c.c1 < c.c2;
  Json j;
  j["system"] = rs.label;
  j["constants"] = {{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}, {"c3_unmargined", c.c3_raw}, {"c4", c.c4},
                    {"c5", c.c5}, {"L1", c.L1}, {"L2", c.L2}, {"M1", c.M1}, {"M2", c.M2}, {"C_Sigma", c.C_Sigma}};
  j["dual_basis_residual"] = dr.delta;
  j["tiles"] = cp.tile_count();
  j["samples"] = g.samples;
  j["partition_residual_max"] = worst;
  j["partition_tolerance"] = tol;
  j["support_checks"] = sup.checks;
  j["support_violations"] = sup.violations;
  j["pass"] = pass;
  emit(g.out, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

// ---- plancherel ----------------------------------------------------------------

int cmd_plancherel_eval(const Globals& g, const std::string& lambdas) {
  const RootSystem rs = need_system(g);
  const PlancherelDensity pd = make_density(rs);
  std::vector<std::string> head;
  for (int i = 0; i < rs.rank; ++i) head.push_back("lambda_" + std::to_string(i + 1));
  head.push_back("density");
  for (std::size_t i = 0; i < pd.factors.size(); ++i) head.push_back("factor_" + std::to_string(i + 1));
  Csv csv(head);
  // Several points are separated by ';'.
  std::stringstream ss(lambdas);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const Vec lam = parse_vec(item, rs.rank, "--lambda");
    std::vector<double> row(lam.data(), lam.data() + lam.size());
    row.push_back(density(pd, lam));
    for (double f : density_factors(pd, lam)) row.push_back(f);
    csv.row(row);
  }
  emit(g.out, csv.str());
  return 0;
}

// ---- kernels -------------------------------------------------------------------

struct KernelArgs {
  std::string kind = "I";  // I | poisson | wave0 | waveinf
  std::string regime = "full";
  double s = 0.1;
  double sigma_re = 2.0, sigma_im = 0.0;
  double tau_re = 0.5;  // Poisson: tau = tau_re - i t
  std::string x;
  double kappa = 0.0;  // 0: wave case
  std::string times = "1";
  double t_min = 4, t_max = 100;
  int points = 10;
  std::string target;  // empty: default per kind
  double tolerance = 0.15;
};

Regime parse_regime(const std::string& r) {
  if (r == "full") return Regime::full;
  if (r == "minus") return Regime::minus;
  if (r == "plus") return Regime::plus;
  throw UsageError("--regime must be full, minus or plus");
}

std::function<QuadratureResult(double)> kernel_fn(const RootSystem& rs, const PlancherelDensity& pd,
                                                  const KernelArgs& a, const KernelConfig& cfg) {
  const Vec x = parse_point(rs, a.x);
  std::optional<double> kg;
  if (a.kappa > 0) kg = a.kappa;
  if (a.kappa < 0) throw UsageError("--kappa must be positive");
  if (a.kind == "I") {
    const Regime reg = parse_regime(a.regime);
    return [&pd, x, reg, a, cfg, kg](double t) { return oscillatory_I(pd, a.s, t, x, reg, cfg, kg); };
  }
  if (a.kind == "poisson")
    return [&pd, x, a, cfg, kg](double t) { return poisson_kernel(pd, cplx(a.tau_re, -t), x, cfg, kg); };
  if (a.kind == "wave0" || a.kind == "waveinf") {
    const bool zero = a.kind == "wave0";
    return [&pd, x, a, cfg, kg, zero](double t) {
      KernelQuery q;
      q.sigma = cplx(a.sigma_re, a.sigma_im);
      q.t = t;
      q.x_plus = x;
      q.kg_kappa = kg;
      return zero ? wave_kernel_tilde0(pd, q, cfg) : wave_kernel_infty(pd, q, cfg);
    };
  }
  throw UsageError("--kind must be I, poisson, wave0 or waveinf");
}

std::vector<QuadratureResult> kernel_values(const std::vector<double>& ts,
                                           const std::function<QuadratureResult(double)>& f) {
  return parallel_map<QuadratureResult>(ts.size(), [&](std::size_t i) {
    progress("kernel at t = " + fmt(ts[i]));
    return f(ts[i]);
  });
}

Csv kernel_csv(const std::vector<double>& ts, const std::vector<QuadratureResult>& res) {
  Csv csv({"t", "re", "im", "abs", "abs_error"});
  for (std::size_t i = 0; i < ts.size(); ++i)
    csv.row({ts[i], res[i].value.real(), res[i].value.imag(), std::abs(res[i].value), res[i].abs_error});
  return csv;
}

int cmd_kernel_eval(const Globals& g, const KernelArgs& a) {
  const RootSystem rs = need_system(g);
  const PlancherelDensity pd = make_density(rs);
  const auto f = kernel_fn(rs, pd, a, kernel_config(g));
  const auto ts = parse_list(a.times);
  emit(g.out, kernel_csv(ts, kernel_values(ts, f)).str());
  return 0;
}

int cmd_kernel_decay(const Globals& g, const KernelArgs& a) {
  const RootSystem rs = need_system(g);
  const PlancherelDensity pd = make_density(rs);
  if (a.points < 8) throw UsageError("--points must be at least 8");
  if (!(a.t_min > 0 && a.t_max > a.t_min)) throw UsageError("need 0 < --t-min < --t-max");
  const auto f = kernel_fn(rs, pd, a, kernel_config(g));
  const auto ts = log_spaced(a.t_min, a.t_max, a.points);
  const auto res = kernel_values(ts, f);
  Csv csv = kernel_csv(ts, res);
  std::vector<std::pair<double, double>> series;
  for (std::size_t i = 0; i < ts.size(); ++i) series.push_back({ts[i], std::abs(res[i].value)});
  const DecayFit fit = decay_fit(series);
  const auto dm = dims(rs);
  Json footer;
  footer["exponent"] = fit.exponent;
  footer["r2"] = fit.r_squared;
  std::optional<double> target;
  if (!a.target.empty()) {
    target = parse_exponent(a.target);
  } else if (a.kind == "I" || a.kind == "waveinf") {
    target = -0.5 * dm.D;
  } else if (a.kind == "wave0") {
    target = -0.5 * (dm.d - 1);
  }
  bool pass = true;
  if (target) {
    pass = std::abs(fit.exponent - *target) <= a.tolerance;
    footer["target"] = *target;
    footer["tolerance"] = a.tolerance;
    footer["pass"] = pass;
  } else {
    footer["target"] = nullptr;
    footer["tolerance"] = a.tolerance;
    footer["pass"] = nullptr;
  }
  csv.raw_line(footer.dump());
  emit(g.out, csv.str());
  return pass ? 0 : 1;
}

// ---- parametrix ----------------------------------------------------------------

GridShape parse_grid(const std::string& s) {
  // "RMAX:H" or "rmax=R,h=H"
  GridShape gs;
  if (s.empty()) return gs;
  if (s.find('=') != std::string::npos) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--grid: expected key=value, got '" + item + "'");
      const std::string k = item.substr(0, eq);
      const double v = parse_exponent(item.substr(eq + 1));
      if (k == "rmax" || k == "r_max") gs.r_max = v;
      else if (k == "h") gs.h = v;
      else throw UsageError("--grid: unknown key '" + k + "'");
    }
    return gs;
  }
  const auto c = s.find(':');
  if (c == std::string::npos) throw UsageError("--grid must be RMAX:H or rmax=R,h=H");
  gs.r_max = parse_exponent(s.substr(0, c));
  gs.h = parse_exponent(s.substr(c + 1));
  return gs;
}

int cmd_parametrix_table(const Globals& g, int K, const std::string& grid) {
  const RootSystem rs = need_system(g);
  const auto t = uk_recursion(rs, parse_grid(grid), K);
  std::vector<std::string> head;
  for (int i = 0; i < rs.rank; ++i) head.push_back("H_" + std::to_string(i + 1));
  head.push_back("omega");
  for (int k = 0; k <= K; ++k) head.push_back("U" + std::to_string(k));
  Csv csv(head);
  for (std::size_t i = 0; i < t.r.size(); ++i) {
    const Vec H = t.r[i] * t.direction;
    std::vector<double> row(H.data(), H.data() + H.size());
    row.push_back(t.omega[i]);
    for (int k = 0; k <= K; ++k) row.push_back(t.U[k][i]);
    csv.row(row);
  }
  emit(g.out, csv.str());
  return 0;
}

int cmd_parametrix_checks(const Globals& g) {
  const RootSystem rs = need_system(g);
  const double tol = g.tol > 0 ? g.tol : 1e-4;
  std::mt19937_64 rng(g.seed);
  Json j;
  j["system"] = rs.label;
  bool pass = true;
  // Cancellation sums at random chamber points.
  double canc = 0.0;
  for (int k = 0; k < 100; ++k) {
    Vec H;
    do {
      H = to_chamber(rs, random_unit(rng, rs.rank)) * std::exp(uniform(rng, std::log(0.1), std::log(5.0)));
    } while (!in_open_chamber(rs, H));
    const auto c = cancellation_check(rs, H);
    canc = std::max({canc, std::abs(c.r1), std::abs(c.r2)});
  }
  j["cancellation_max"] = canc;
  pass = pass && canc <= 1e-9;
  // J >= 1 and omega bounded along the default ray.
  const int d = dims(rs).d;
  const int K = std::min(d / 2, (rs.rank >= 2 && !omega_is_constant(rs)) ? 2 : d / 2);
  const GridShape grid{2.0, rs.rank == 1 ? 1e-3 : 2e-2};
  const auto t = uk_recursion(rs, grid, K);
  double wmax = 0.0;
  for (double w : t.omega) wmax = std::max(wmax, std::abs(w));
  j["K"] = K;
  j["U0"] = t.U0;
  j["omega_max_abs"] = wmax;
  Json tr = Json::array();
  for (const auto& r : transport_residual(t)) {
    tr.push_back({{"k", r.k}, {"max_abs", r.max_abs}, {"max_rel", r.max_rel}});
    pass = pass && r.max_rel <= tol;
  }
  j["transport_residuals"] = tr;
  j["transport_tolerance"] = tol;
  if (rs.rank == 1 && rs.positive_roots.size() == 1) {
    double diff = 0.0;
    for (std::size_t i = 0; i < t.r.size(); ++i)
      diff = std::max(diff, std::abs(t.omega[i] - omega_rank_one_closed_form(rs, t.r[i])));
    j["omega_closed_form_max_diff"] = diff;
    pass = pass && diff <= 1e-8;
  }
  j["pass"] = pass;
  emit(g.out, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

// ---- strichartz / gwp ----------------------------------------------------------

Json exponent_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

int cmd_strichartz(const Globals& g, bool admissible, int d, const std::string& ps, const std::string& qs) {
  const double p = parse_exponent(ps), q = parse_exponent(qs);
  Json j;
  j["d"] = d;
  j["p"] = exponent_json(p);
  j["q"] = exponent_json(q);
  if (admissible) j["admissible"] = is_admissible(d, p, q);
  else j["sigma"] = sigma_pq(d, p, q);
  emit(g.out, j.dump() + "\n");
  return 0;
}

int cmd_gwp_exponents(const Globals& g, int d) {
  const auto f = exponent_family(d);
  Json j;
  j["d"] = d;
  j["gamma_c"] = f.gamma_c;
  j["gamma_0"] = f.gamma_0;
  j["gamma_1"] = f.gamma_1;
  j["gamma_2"] = f.gamma_2;
  j["gamma_3"] = f.gamma_3;
  j["warning_d3"] = f.warning_d3;
  emit(g.out, j.dump() + "\n");
  return 0;
}

int cmd_gwp_sigma(const Globals& g, int d, double gamma) {
  const auto s = sigma_required(d, gamma);
  Json j;
  j["d"] = d;
  j["gamma"] = gamma;
  j["sigma"] = s.sigma;
  j["infimum"] = s.infimum;
  j["range"] = s.range;
  j["warning_d3"] = s.warning_d3;
  emit(g.out, j.dump() + "\n");
  return 0;
}

// ---- verify --------------------------------------------------------------------

int cmd_verify_all(const Globals& g, bool slow, const std::vector<int>& only) {
  SuiteOptions o;
  o.seed = g.seed;
  o.slow = slow;
  o.kernel = kernel_config(g);
  for (int id : only)
    if (id < 1 || id > 12) throw UsageError("--only takes criterion ids 1..12");
  const Json report = run_suite(o, only);
  emit(g.out, report.dump(2) + "\n");
  return report["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmwave: wave kernels and Strichartz exponents on symmetric spaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--system", g.system, "root-system file file");
  app.add_option("--out", g.out, "output file (default: stdout); replaced atomically");
  app.add_option("--seed", g.seed, "seed for sampling");
  app.add_option("--budget", g.budget, "integrand evaluations per kernel query");
  app.add_option("--samples", g.samples, "sample count for sampled checks");
  app.add_option("--tol", g.tol, "tolerance (quadrature rel. tolerance for kernels, threshold for checks)");

  auto fall = [](CLI::App* s) {
    s->fallthrough();
    return s;
  };

  auto* rootsys = fall(app.add_subcommand("rootsys", "root-system information"));
  rootsys->require_subcommand(1);
  auto* rs_info = fall(rootsys->add_subcommand("info", "roots, rho, dimensions and validation"));

  auto* chamber = fall(app.add_subcommand("chamber", "Weyl-chamber partition"));
  chamber->require_subcommand(1);
  auto* ch_verify = fall(chamber->add_subcommand("verify", "constants, partition residual, support properties"));

  auto* planch = fall(app.add_subcommand("plancherel", "Plancherel density"));
  planch->require_subcommand(1);
  std::string lambdas;
  auto* pl_eval = fall(planch->add_subcommand("eval", "density and per-root factors at lambda"));
  pl_eval->add_option("--lambda", lambdas, "coordinates, comma separated; several points separated by ';'")
      ->required();

  auto* kernel = fall(app.add_subcommand("kernel", "oscillatory integrals and kernels"));
  kernel->require_subcommand(1);
  KernelArgs ka;
  auto add_kernel_opts = [&](CLI::App* s) {
    s->add_option("--kind", ka.kind, "I | poisson | wave0 | waveinf")->capture_default_str();
    s->add_option("--regime", ka.regime, "full | minus | plus (kind I)")->capture_default_str();
    s->add_option("--s", ka.s, "damping s > 0 (kind I)")->capture_default_str();
    s->add_option("--sigma-re", ka.sigma_re, "Re sigma")->capture_default_str();
    s->add_option("--sigma-im", ka.sigma_im, "Im sigma")->capture_default_str();
    s->add_option("--tau-re", ka.tau_re, "Re tau for the Poisson kernel, tau = Re tau - i t")->capture_default_str();
    s->add_option("--x", ka.x, "radial point x+ (coordinates, comma separated)");
    s->add_option("--kappa", ka.kappa, "Klein-Gordon parameter (default: wave case)");
  };
  auto* k_eval = fall(kernel->add_subcommand("eval", "evaluate at the given times"));
  add_kernel_opts(k_eval);
  k_eval->add_option("--t", ka.times, "times, comma separated")->capture_default_str();
  auto* k_decay = fall(kernel->add_subcommand("decay", "log-log decay fit over log-spaced times"));
  add_kernel_opts(k_decay);
  k_decay->add_option("--t-min", ka.t_min, "first time")->capture_default_str();
  k_decay->add_option("--t-max", ka.t_max, "last time")->capture_default_str();
  k_decay->add_option("--points", ka.points, "number of times (>= 8)")->capture_default_str();
  k_decay->add_option("--target", ka.target, "target exponent (default from d or D)");
  k_decay->add_option("--tolerance", ka.tolerance, "allowed deviation from the target")->capture_default_str();

  auto* param = fall(app.add_subcommand("parametrix", "Hadamard parametrix"));
  param->require_subcommand(1);
  int K = 1;
  std::string grid;
  auto* p_table = fall(param->add_subcommand("table", "omega and U_0..U_K on a radial grid"));
  p_table->add_option("--K", K, "highest transport order")->capture_default_str();
  p_table->add_option("--grid", grid, "RMAX:H or rmax=R,h=H (default 2:1e-3)");
  auto* p_checks = fall(param->add_subcommand("checks", "cancellations, transport residuals, omega cross-check"));

  int d = 3;
  std::string ps, qs;
  double gamma = 2.0;
  auto* stri = fall(app.add_subcommand("strichartz", "admissible pairs and sigma(p,q)"));
  stri->require_subcommand(1);
  auto add_pq = [&](CLI::App* s) {
    s->add_option("--d", d, "dimension")->required();
    s->add_option("--p", ps, "time exponent (number or inf)")->required();
    s->add_option("--q", qs, "space exponent (number or inf)")->required();
  };
  auto* s_adm = fall(stri->add_subcommand("admissible", "is (p,q) admissible"));
  add_pq(s_adm);
  auto* s_sig = fall(stri->add_subcommand("sigma", "sigma(p,q)"));
  add_pq(s_sig);

  auto* gwp = fall(app.add_subcommand("gwp", "global well-posedness exponents"));
  gwp->require_subcommand(1);
  auto* g_exp = fall(gwp->add_subcommand("exponents", "gamma_c, gamma_0..gamma_3"));
  g_exp->add_option("--d", d, "dimension")->required();
  auto* g_sig = fall(gwp->add_subcommand("sigma", "regularity needed at power gamma"));
  g_sig->add_option("--d", d, "dimension")->required();
  g_sig->add_option("--gamma", gamma, "nonlinearity power")->required();

  auto* verify = fall(app.add_subcommand("verify", "acceptance suite"));
  verify->require_subcommand(1);
  bool slow = false;
  std::vector<int> only;
  auto* v_all = fall(verify->add_subcommand("all", "run criteria 1-12"));
  v_all->add_flag("--slow", slow, "include the slow higher-rank decay fit");
  v_all->add_option("--only", only, "restrict to these criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "symmwave: usage error: " << msg << '\n';
    return 2;
  }

  try {
    if (*rs_info) return cmd_rootsys_info(g);
    if (*ch_verify) return cmd_chamber_verify(g);
    if (*pl_eval) return cmd_plancherel_eval(g, lambdas);
    if (*k_eval) return cmd_kernel_eval(g, ka);
    if (*k_decay) return cmd_kernel_decay(g, ka);
    if (*p_table) return cmd_parametrix_table(g, K, grid);
    if (*p_checks) return cmd_parametrix_checks(g);
    if (*s_adm) return cmd_strichartz(g, true, d, ps, qs);
    if (*s_sig) return cmd_strichartz(g, false, d, ps, qs);
    if (*g_exp) return cmd_gwp_exponents(g, d);
    if (*g_sig) return cmd_gwp_sigma(g, d, gamma);
    if (*v_all) return cmd_verify_all(g, slow, only);
  } catch (const UsageError& e) {
    std::cerr << "symmwave: usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "symmwave: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const Unsupported& e) {
    std::cerr << "symmwave: unsupported: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "symmwave: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "symmwave: error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "symmwave: usage error: missing subcommand\n";
  return 2;
}
