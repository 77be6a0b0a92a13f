// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Hard failure of a numeric routine (non-convergence, overflow, NaN input).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed user input (config files, expressions, invalid specs).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BisectOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  int max_iter = 200;
};

// Root of f(x) = target for nondecreasing f on [lo, hi].
// Requires f(lo) <= target <= f(hi); returns the midpoint of the final bracket.
template <typename F>
double bisect_monotone(F&& f, double target, double lo, double hi,
                       BisectOptions opt = {}) {
  for (int i = 0; i < opt.max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= opt.abs_tol + opt.rel_tol * std::abs(mid)) break;
    const double v = f(mid);
    if (std::isnan(v)) throw numeric_error("bisection: NaN sample");
    if (v < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Argmax of a unimodal f on [a, b] by golden-section search.
template <typename F>
double golden_max(F&& f, double a, double b, int iters = 60) {
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && d - c > 1e-15 * (1.0 + std::abs(c)); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

// Log-spaced grid over [lo, hi], endpoints included.
inline std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo)) throw numeric_error("log_grid: bad range");
  const double l0 = std::log10(lo), l1 = std::log10(hi);
  const int n = std::max(2, static_cast<int>(std::ceil((l1 - l0) * per_decade)) + 1);
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = std::pow(10.0, l0 + (l1 - l0) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

// Seeded generator used by the oracle. Uniform doubles are derived from the
// raw 64-bit stream directly so results do not depend on the standard
// library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Index in [0, n).
  std::size_t index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return i >= n ? n - 1 : i;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace orlicz
