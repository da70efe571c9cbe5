#pragma once
// Shared vocabulary: vectors, complex scalars, error types, seeded sampling
// and a deterministic parallel map.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace symmwave {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Precondition or domain violation (bad input to an operation).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// The requested case is outside what the library evaluates.
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature ran out of its evaluation budget before reaching the tolerance.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double dot(const Vec& a, const Vec& b) { return a.dot(b); }

// Uniform direction on the unit sphere of R^n.
inline Vec random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) v[i] = nd(rng);
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

// Worker count: hardware concurrency capped by SYMMWAVE_THREADS.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SYMMWAVE_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

// Evaluates f(i) for i in [0, n) and returns results in index order, so the
// outcome never depends on scheduling. The first exception is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
  std::vector<T> out(n);
  unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errs(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace symmwave
