#pragma once
// Output plumbing for the command-line tool: CSV with 17 significant digits,
// ordered JSON, atomic file replacement, progress on stderr.

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

namespace symmwave::cli {

using Json = nlohmann::ordered_json;

// Bad invocation: maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : cols_(header.size()) { row_strings(header); }

  void row(const std::vector<double>& v) {
    if (v.size() != cols_) throw std::logic_error("csv: column count mismatch");
    std::vector<std::string> s;
    for (double x : v) s.push_back(fmt(x));
    row_strings(s);
  }
  void raw_line(const std::string& line) { out_ << line << '\n'; }
  std::string str() const { return out_.str(); }

 private:
  void row_strings(const std::vector<std::string>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) out_ << (i ? "," : "") << s[i];
    out_ << '\n';
  }
  std::size_t cols_;
  std::ostringstream out_;
};

// Writes `text` to `path` through a sibling temp file and a rename, or to
// stdout when path is empty or "-".
inline void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open output file " + path);
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + path);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot replace " + path + ": " + ec.message());
  }
}

inline void progress(const std::string& msg) { std::cerr << "[symmwave] " << msg << '\n'; }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// "1,2.5,3" -> {1, 2.5, 3}; "inf" accepted.
inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty entry in list '" + s + "'");
    item = item.substr(b, e - b + 1);
    try {
      std::size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

inline double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return std::numeric_limits<double>::infinity();
  const auto v = parse_list(s);
  if (v.size() != 1) throw UsageError("expected a single number, got '" + s + "'");
  return v[0];
}

}  // namespace symmwave::cli
