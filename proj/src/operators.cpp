// SPDX-License-Identifier: Apache-2.0
#include "orlicz/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orlicz {

namespace {

long round_to_id(double r, double j) {
  const double rounded = std::round(r);
  if (std::isnan(r) || std::abs(r - rounded) > 1e-9 * std::max(1.0, std::abs(r)))
    throw numeric_error("atom map: non-integer target " + std::to_string(r) +
                        " at j = " + std::to_string(j));
  if (rounded < 1.0)
    throw numeric_error("atom map: target below 1 at j = " + std::to_string(j));
  if (rounded > 9e15) throw numeric_error("atom map: target overflows at j = " +
                                          std::to_string(j));
  return static_cast<long>(rounded);
}

}  // namespace

long Transformation::map_atom(long j, long explicit_count) const {
  if (j < 1) throw numeric_error("map_atom: ids start at 1");
  if (j <= explicit_count) {
    if (j > static_cast<long>(atom_map.size()))
      throw numeric_error("map_atom: explicit map shorter than atom list");
    const long target = atom_map[static_cast<std::size_t>(j - 1)];
    if (target < 1) throw numeric_error("map_atom: target below 1");
    return target;
  }
  if (!tail_map) throw numeric_error("map_atom: no tail map past the horizon");
  const double jd = static_cast<double>(j);
  return round_to_id(tail_map(jd), jd);
}

MeasurableFunction apply_composition(const Transformation& t, const MeasurableFunction& f,
                                     const MeasureSpace& mu) {
  const long n = mu.explicit_atoms();
  MeasurableFunction out;

  if (mu.has_interval()) {
    if (t.branches.empty())
      throw numeric_error("apply_composition: space has an interval but the map has no branches");
    if (!f.on_interval)
      throw numeric_error("apply_composition: function lacks an interval evaluator");
    auto branches = t.branches;
    auto fi = f.on_interval;
    out.on_interval = [branches, fi](double s) {
      for (const auto& b : branches)
        if (s >= b.lo && s < b.hi) return fi(b.forward(s));
      // Quadrature samples the closed right endpoint of a half-open piece;
      // the map extends continuously there, so the edge belongs to its branch.
      for (const auto& b : branches)
        if (s == b.hi) return fi(b.forward(s));
      throw numeric_error("apply_composition: point outside every branch");
    };
  }

  out.atom_values.reserve(static_cast<std::size_t>(n));
  for (long j = 1; j <= n; ++j) out.atom_values.push_back(f.atom_value(t.map_atom(j, n)));

  if (mu.has_tail()) {
    out.on_tail = [t, f, n](double jd) {
      return f.atom_value(t.map_atom(static_cast<long>(std::llround(jd)), n));
    };
    // The composed tail inherits f's limit when the tail map provably walks
    // off to infinity.
    if (f.tail_limit && t.tail_map) {
      const long c = t.probe_cap;
      bool to_inf = true;
      long prev = 0;
      for (long j : {n + 16, std::max(n + 32, c / 16), std::max(n + 64, c / 2), c}) {
        const long m = t.map_atom(j, n);
        if (m < prev) to_inf = false;
        prev = m;
      }
      if (to_inf && prev > std::max(4096L, 4 * n)) out.tail_limit = f.tail_limit;
    }
    if (f.min_tail_probe > 0 || !f.atom_values.empty()) {
      const long support = std::max(f.min_tail_probe,
                                    static_cast<long>(f.atom_values.size()));
      try {
        out.min_tail_probe = tail_preimage_bound(t, mu, support);
      } catch (const numeric_error&) {
        out.min_tail_probe = 0;  // preimage unbounded: no useful hint
      }
    }
  }
  return out;
}

long tail_preimage_bound(const Transformation& t, const MeasureSpace& mu, long target) {
  if (!mu.has_tail() || !t.tail_map) return 0;
  const long n = mu.explicit_atoms();
  auto value = [&](long j) { return t.map_atom(j, n); };
  if (value(n + 1) > target) return 0;
  long lo = n + 1, hi = n + 1;
  long step = 1;
  while (value(std::min(hi + step, t.probe_cap)) <= target) {
    hi = std::min(hi + step, t.probe_cap);
    if (hi >= t.probe_cap)
      throw numeric_error("tail map: preimage not bounded within the probe cap");
    step *= 2;
  }
  hi += step;  // value(hi) > target now
  while (lo + 1 < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (value(mid) <= target)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

namespace {

// Sum of tail-atom weights mapping exactly onto `target`, assuming the tail
// map is nondecreasing (checked by the caller on probes).
double tail_preimage_weight(const Transformation& t, const MeasureSpace& mu, long target) {
  if (!mu.has_tail() || !t.tail_map) return 0.0;
  const long n = mu.explicit_atoms();
  auto value = [&](long j) { return t.map_atom(j, n); };

  // First j with value >= target.
  long lo = n + 1;
  if (value(lo) > target) return 0.0;
  long hi = lo, step = 1;
  bool overshoot = false;
  while (true) {
    const long probe = std::min(hi + step, t.probe_cap);
    if (value(probe) >= target) {
      hi = probe;
      overshoot = true;
      break;
    }
    hi = probe;
    if (hi >= t.probe_cap) break;
    step *= 2;
  }
  if (!overshoot) return 0.0;  // never reaches target within the cap
  while (lo + 1 < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (value(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  const long first = value(lo) >= target ? lo : hi;
  if (value(first) != target) return 0.0;

  double sum = 0.0;
  const long plateau_cap = 1L << 22;
  for (long j = first; j <= t.probe_cap; ++j) {
    if (value(j) != target) break;
    sum += mu.atom_weight(j);
    if (j - first > plateau_cap)
      throw numeric_error("tail map: preimage plateau too wide to sum");
  }
  return sum;
}

void check_tail_map_monotone(const Transformation& t, const MeasureSpace& mu) {
  if (!mu.has_tail() || !t.tail_map) return;
  const long n = mu.explicit_atoms();
  long prev = 0;
  for (long j : tail_probe_points(n, t.probe_cap, 8)) {
    const long v = t.map_atom(j, n);
    if (v < prev)
      throw numeric_error("tail map: must be nondecreasing past the horizon (fails at j = " +
                          std::to_string(j) + ")");
    prev = v;
  }
}

// h on the interval: sum over branches covering s of 1/|m'(m^{-1}(s))|.
double interval_density(const std::vector<IntervalBranch>& branches, double s) {
  double total = 0.0;
  for (const auto& b : branches) {
    const double fa = b.forward(b.lo);
    const double fb = b.forward(b.hi);
    const double img_lo = std::min(fa, fb), img_hi = std::max(fa, fb);
    if (s < img_lo || s > img_hi) continue;
    const bool increasing = fb >= fa;
    double lo = b.lo, hi = b.hi;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++i) {
      const double mid = 0.5 * (lo + hi);
      const double v = b.forward(mid);
      if ((v < s) == increasing)
        lo = mid;
      else
        hi = mid;
    }
    const double x = 0.5 * (lo + hi);
    const double d = std::abs(b.derivative(x));
    // The inversion resolves x only to the final bracket width. A derivative
    // below the mean branch slope at that resolution cannot be told apart
    // from an exact zero, where the density truly diverges; report infinity
    // and let the quadrature treat the point as an integrable singularity.
    const double mean_slope = std::abs(fb - fa) / std::max(b.hi - b.lo, 1e-300);
    const double resolution = 1e-11 * (1.0 + std::abs(x)) * mean_slope;
    total += d > resolution ? 1.0 / d : kInf;
  }
  return total;
}

}  // namespace

RadonNikodym radon_nikodym(const Transformation& t, const MeasureSpace& mu) {
  check_tail_map_monotone(t, mu);
  const long n = mu.explicit_atoms();

  // Explicit-atom preimage weights under the explicit part of the map.
  std::vector<double> explicit_pre(static_cast<std::size_t>(n), 0.0);
  auto add_explicit = [&](long target, double w) {
    if (target >= 1 && target <= n) explicit_pre[static_cast<std::size_t>(target - 1)] += w;
  };
  for (long j = 1; j <= n && j <= static_cast<long>(t.atom_map.size()); ++j)
    add_explicit(t.atom_map[static_cast<std::size_t>(j - 1)], mu.atom_weight(j));

  RadonNikodym rn;
  rn.declared = false;

  rn.h.atom_values.reserve(static_cast<std::size_t>(n));
  for (long m = 1; m <= n; ++m) {
    const double pre =
        explicit_pre[static_cast<std::size_t>(m - 1)] + tail_preimage_weight(t, mu, m);
    rn.h.atom_values.push_back(pre / mu.atom_weight(m));
  }

  if (mu.has_tail()) {
    // Explicit atoms can also map past the horizon; scan them per query.
    auto atom_map = t.atom_map;
    std::vector<double> explicit_w(static_cast<std::size_t>(n));
    for (long j = 1; j <= n; ++j)
      explicit_w[static_cast<std::size_t>(j - 1)] = mu.atom_weight(j);
    Transformation tc = t;
    MeasureSpace muc = mu;
    rn.h.on_tail = [tc, muc, atom_map, explicit_w, n](double md) {
      const long m = static_cast<long>(std::llround(md));
      double pre = 0.0;
      for (long j = 1; j <= n && j <= static_cast<long>(atom_map.size()); ++j)
        if (atom_map[static_cast<std::size_t>(j - 1)] == m)
          pre += explicit_w[static_cast<std::size_t>(j - 1)];
      pre += tail_preimage_weight(tc, muc, m);
      return pre / muc.atom_weight(m);
    };
  }

  if (mu.has_interval()) {
    if (t.branches.empty())
      throw numeric_error("radon_nikodym: space has an interval but the map has no branches");
    auto branches = t.branches;
    rn.h.on_interval = [branches](double s) { return interval_density(branches, s); };
  }
  return rn;
}

RadonNikodym declare_radon_nikodym(const Transformation& t, const MeasureSpace& mu,
                                   MeasurableFunction h, double rtol) {
  const RadonNikodym computed = radon_nikodym(t, mu);
  const long n = mu.explicit_atoms();

  auto mismatch = [&](double got, double want, const std::string& where) {
    if (std::abs(got - want) > rtol * std::max(1.0, std::abs(want)))
      throw numeric_error("declared density mismatch at " + where + ": declared " +
                          std::to_string(got) + ", measured " + std::to_string(want));
  };
  for (long m = 1; m <= n; ++m)
    mismatch(h.atom_value(m), computed.h.atom_value(m), "atom " + std::to_string(m));
  if (mu.has_tail()) {
    if (!h.on_tail) throw numeric_error("declared density lacks a tail evaluator");
    for (long m : tail_probe_points(n, n + 4096, 4))
      mismatch(h.atom_value(m), computed.h.atom_value(m), "tail atom " + std::to_string(m));
  }
  if (mu.has_interval()) {
    if (!h.on_interval) throw numeric_error("declared density lacks an interval evaluator");
    const auto& iv = mu.interval();
    for (int i = 0; i < 8; ++i) {
      const double a = iv.lo + (iv.hi - iv.lo) * i / 8.0;
      const double b = iv.lo + (iv.hi - iv.lo) * (i + 1) / 8.0;
      QuadOptions q;
      q.atol = 1e-9;
      const double got = adaptive_simpson(h.on_interval, a, b, q).value;
      const double want = adaptive_simpson(computed.h.on_interval, a, b, q).value;
      mismatch(got, want, "subinterval [" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  }
  RadonNikodym rn;
  rn.h = std::move(h);
  rn.declared = true;
  return rn;
}

double change_of_variables_check(const Transformation& t, const YoungFunction& phi2,
                                 const MeasurableFunction& f, const RadonNikodym& rn,
                                 const MeasureSpace& mu, IntegrateOptions opt) {
  if (!t.surjective)
    throw config_error("change of variables check requires surjective_flag = true");
  const IntegralResult lhs = modular(phi2, apply_composition(t, f, mu), mu, opt);
  const IntegralResult rhs = weighted_modular(phi2, f, rn.h, mu, opt);
  const bool lhs_inf = !lhs.converged || std::isinf(lhs.value);
  const bool rhs_inf = !rhs.converged || std::isinf(rhs.value);
  if (lhs_inf && rhs_inf) return 0.0;
  if (lhs_inf || rhs_inf) return kInf;
  return std::abs(lhs.value - rhs.value);
}

const MeasurableFunction& operator_weight(const OperatorVariant& op) {
  if (const auto* m = std::get_if<MultiplicationOp>(&op)) return m->u.modulus();
  return std::get<CompositionOp>(op).density.h;
}

MeasurableFunction apply_operator(const OperatorVariant& op, const MeasurableFunction& f,
                                  const MeasureSpace& mu) {
  if (const auto* m = std::get_if<MultiplicationOp>(&op)) return m->u.apply(f);
  return apply_composition(std::get<CompositionOp>(op).phi, f, mu);
}

}  // namespace orlicz
