// Runs the verification suite twice with a fixed seed and prints one line per
// criterion. Criterion 13 is the byte comparison of the two reports.
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_suite(const fs::path& out) {
  const std::string cmd = std::string(SYMMWAVE_CLI) + " verify all --seed 42 --out " + out.string();
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / ("symmwave_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path a = dir / "report1.json", b = dir / "report2.json";
  const int ca = run_suite(a);
  const int cb = run_suite(b);
  if (ca > 1 || cb > 1 || !fs::exists(a) || !fs::exists(b)) {
    std::cout << "acceptance: suite did not produce a report (exit codes " << ca << ", " << cb << ")\n";
    return 1;
  }
  const std::string ra = slurp(a), rb = slurp(b);
  bool all = true;
  try {
    const auto j = nlohmann::ordered_json::parse(ra);
    for (const auto& c : j["criteria"]) {
      const bool pass = c["pass"].get<bool>() && c["within_time_limit"].get<bool>();
      all = all && pass;
      std::cout << "criterion " << c["id"].get<int>() << ": " << (pass ? "PASS" : "FAIL") << "  "
                << c["name"].get<std::string>() << '\n';
    }
  } catch (const std::exception& e) {
    std::cout << "acceptance: unreadable report: " << e.what() << '\n';
    return 1;
  }
  const bool same = ra == rb;
  all = all && same;
  std::cout << "criterion 13: " << (same ? "PASS" : "FAIL") << "  reports byte-identical under --seed 42\n";
  std::cout << "acceptance: " << (all ? "PASS" : "FAIL") << '\n';
  fs::remove_all(dir);
  return all ? 0 : 1;
}
