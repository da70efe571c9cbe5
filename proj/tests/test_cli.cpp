// End-to-end runs of the command-line tool: output formats, exit codes,
// atomic output files and determinism.
#include "symmwave/kernels.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("symmwave_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args, const std::string& env = "") {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = env + std::string(SYMMWAVE_CLI) + " " + args + " 2>" + err.string();
  Run r{};
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = ::pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.err = slurp(err);
  return r;
}

std::string sys(const std::string& name) { return std::string("--system ") + SYMMWAVE_SYSTEMS + "/" + name + ".sys"; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& s, char c = ',') {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, c);) v.push_back(f);
  return v;
}

}  // namespace

TEST(Cli, RootsysInfoJson) {
  const auto r = run("rootsys info " + sys("a2"));
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(j["d"], 5);
  EXPECT_EQ(j["weyl_order"], 6);
  EXPECT_TRUE(j["pass"].get<bool>());
  // Key order is fixed.
  auto it = j.begin();
  EXPECT_EQ(it.key(), "label");
}

TEST(Cli, UsageErrorsExitTwoWithOneLine) {
  for (const std::string& a : std::vector<std::string>{"", "nosuchcommand", "kernel eval --system /nonexistent.sys",
                               "strichartz sigma --d 3 --p 2", "kernel eval --kind bogus " + sys("h3"),
                               "gwp sigma --d 5 --gamma 0.5"}) {
    const auto r = run(a);
    EXPECT_EQ(r.code, 2) << a;
    EXPECT_EQ(lines(r.err).size(), 1u) << a << ": " << r.err;
    EXPECT_TRUE(r.out.empty()) << a;
  }
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, StrichartzAndGwpAreSingleLineJson) {
  auto r = run("strichartz admissible --d 3 --p 2 --q 6");
  ASSERT_EQ(r.code, 0);
  ASSERT_EQ(lines(r.out).size(), 1u);
  EXPECT_TRUE(Json::parse(r.out)["admissible"].get<bool>());
  r = run("strichartz sigma --d 4 --p inf --q 2");
  EXPECT_EQ(Json::parse(r.out)["sigma"].get<double>(), 0.0);
  r = run("gwp exponents --d 4");
  ASSERT_EQ(lines(r.out).size(), 1u);
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["gamma_c"].get<double>(), 7.0 / 3.0, 1e-14);
  EXPECT_EQ(j.begin().key(), "d");
  r = run("gwp sigma --d 5 --gamma 1.7");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["range"], 2);
}

TEST(Cli, KernelEvalCsvMatchesLibrary) {
  const auto r = run("kernel eval " + sys("h3") + " --kind poisson --tau-re 1 --t 0,1.5 --x 0.5");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], "t,re,im,abs,abs_error");
  EXPECT_EQ(r.out.find("[symmwave]"), std::string::npos);  // progress stays on stderr
  const auto rs = symmwave::load_system_file(std::string(SYMMWAVE_SYSTEMS) + "/h3.sys");
  const auto pd = symmwave::make_density(rs);
  symmwave::Vec x(1);
  x << 0.5;
  const auto f = split(ls[2]);
  ASSERT_EQ(f.size(), 5u);
  const auto ref = symmwave::poisson_kernel(pd, symmwave::cplx(1.0, -1.5), x);
  EXPECT_DOUBLE_EQ(std::stod(f[1]), ref.value.real());
  EXPECT_DOUBLE_EQ(std::stod(f[2]), ref.value.imag());
  // Round trip at 17 significant digits is exact.
  EXPECT_EQ(std::stod(f[1]), ref.value.real());
}

TEST(Cli, KernelDecayFooterAndExitCode) {
  const std::string base = "kernel decay " + sys("h3") + " --kind I --s 0.1 --t-min 2 --t-max 40 --points 8";
  auto r = run(base);
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 10u);
  EXPECT_EQ(ls[0], "t,re,im,abs,abs_error");
  Json footer = Json::parse(ls.back());
  EXPECT_EQ(footer.begin().key(), "exponent");
  EXPECT_NEAR(footer["exponent"].get<double>(), -1.5, 0.15);
  EXPECT_TRUE(footer["pass"].get<bool>());
  // An unreachable target fails honestly with exit code 1.
  r = run(base + " --target -4 --tolerance 0.1");
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(Json::parse(lines(r.out).back())["pass"].get<bool>());
}

TEST(Cli, BudgetExhaustionIsAFailureNotUsage) {
  const auto r = run("kernel eval " + sys("h3") + " --kind I --budget 10 --t 5");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(Cli, ParametrixTableHeader) {
  const auto r = run("parametrix table " + sys("h3") + " --K 1 --grid 0.05:0.005");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "H_1,omega,U0,U1");
  EXPECT_EQ(ls.size(), 11u);
  const auto f = split(ls[1]);
  EXPECT_NEAR(std::stod(f[2]), 4 * symmwave::pi, 1e-12);
  EXPECT_EQ(run("parametrix table " + sys("h3") + " --K 1 --grid nonsense").code, 2);
}

TEST(Cli, OutFileIsWrittenAtomically) {
  const fs::path out = scratch() / "chamber.json";
  std::ofstream(out) << "stale";
  const auto r = run("chamber verify " + sys("b2") + " --samples 300 --seed 5 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Json j = Json::parse(slurp(out));
  EXPECT_EQ(j["support_violations"], 0);
  for (const auto& e : fs::directory_iterator(scratch()))
    EXPECT_EQ(e.path().string().find(".tmp"), std::string::npos) << e.path();
}

TEST(Cli, DeterministicUnderSeed) {
  const std::string a = "chamber verify " + sys("g2") + " --samples 500 --seed 11";
  const auto r1 = run(a), r2 = run(a);
  ASSERT_EQ(r1.code, 0);
  EXPECT_EQ(r1.out, r2.out);
}

TEST(Cli, VerifySubset) {
  const auto r = run("verify all --only 1,12 --seed 42");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["criteria"].size(), 2u);
  EXPECT_EQ(j["criteria"][0]["id"], 1);
  EXPECT_EQ(j["criteria"][1]["id"], 12);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(run("verify all --only 99").code, 2);
}

TEST(Cli, ThreadCapDoesNotChangeResults) {
  const std::string a = "chamber verify " + sys("a3") + " --samples 400 --seed 3";
  const auto r1 = run(a), r2 = run(a, "SYMMWAVE_THREADS=1 ");
  ASSERT_EQ(r1.code, 0) << r1.err;
  EXPECT_EQ(r1.out, r2.out);
}
