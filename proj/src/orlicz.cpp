// SPDX-License-Identifier: Apache-2.0
#include "orlicz/orlicz.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

IntegralResult modular(const YoungFunction& phi, const MeasurableFunction& f,
                       const MeasureSpace& mu, IntegrateOptions opt) {
  MeasurableFunction g = map_fn(f, [phi](double v) { return phi(v); });
  return integrate(g, mu, opt);
}

IntegralResult weighted_modular(const YoungFunction& phi, const MeasurableFunction& f,
                                const MeasurableFunction& h, const MeasureSpace& mu,
                                IntegrateOptions opt) {
  // Nonsingularity probe: h must be nonnegative wherever we can see it.
  auto check = [](double v, const char* where) {
    if (std::isnan(v) || v < 0.0)
      throw numeric_error(std::string("weighted_modular: negative weight sample (") +
                          where + ")");
  };
  for (double v : h.atom_values) check(v, "atom");
  if (mu.has_interval() && h.on_interval)
    for (double t : interval_sample_points(mu.interval(), 64))
      check(h.on_interval(t), "interval");
  if (mu.has_tail() && h.on_tail)
    for (long j : tail_probe_points(mu.explicit_atoms(),
                                    mu.explicit_atoms() + (1L << 14), 4))
      check(h.on_tail(static_cast<double>(j)), "tail");

  MeasurableFunction g =
      product_fn(h, map_fn(f, [phi](double v) { return phi(v); }));
  return integrate(g, mu, opt);
}

namespace {

// Largest |f| over a cheap probe set; decides the f == 0 case.
double probe_sup_abs(const MeasurableFunction& f, const MeasureSpace& mu) {
  double m = 0.0;
  for (double v : f.atom_values) m = std::max(m, std::abs(v));
  if (mu.has_interval() && f.on_interval)
    for (double t : interval_sample_points(mu.interval(), 512))
      m = std::max(m, std::abs(f.on_interval(t)));
  if (mu.has_tail() && f.on_tail) {
    const long n = mu.explicit_atoms();
    const long deep = std::max(n + (1L << 16), 2 * f.min_tail_probe + 2);
    for (long j : tail_probe_points(n, deep, 8))
      m = std::max(m, std::abs(f.on_tail(static_cast<double>(j))));
    if (f.min_tail_probe > n)
      m = std::max(m, std::abs(f.on_tail(static_cast<double>(f.min_tail_probe))));
  }
  return m;
}

}  // namespace

double luxemburg_norm(const YoungFunction& phi, const MeasurableFunction& f,
                      const MeasureSpace& mu, NormOptions opt) {
  if (probe_sup_abs(f, mu) < opt.zero_threshold) return 0.0;

  auto over_one = [&](double k) {
    const IntegralResult m = modular(phi, scale_fn(f, 1.0 / k), mu, opt.integrate);
    // An undecided tail is treated as mass above 1: pushes the norm up, never
    // below the true value.
    return m.value > 1.0 || !m.converged;
  };

  double lo, hi;
  if (over_one(1.0)) {
    lo = 1.0;
    hi = 2.0;
    while (over_one(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > opt.bracket_hi) return kInf;
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (!over_one(lo)) {
      hi = lo;
      lo *= 0.5;
      if (lo < opt.bracket_lo) return lo;
    }
  }
  for (int i = 0; i < 300; ++i) {
    if (hi - lo <= opt.rel_tol * hi) break;
    const double mid = hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (over_one(mid))
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace orlicz
