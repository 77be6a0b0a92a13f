// SPDX-License-Identifier: Apache-2.0
#include "orlicz/measure.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace orlicz {

MeasureSpace MeasureSpace::make(std::optional<Interval> interval,
                                std::vector<double> atom_weights,
                                std::optional<TailRule> tail) {
  if (!interval && atom_weights.empty() && !tail)
    throw config_error("measure space: empty specification");
  if (interval) {
    if (!(interval->hi > interval->lo))
      throw config_error("measure space: interval needs hi > lo");
    if (interval->grid < 2) throw config_error("measure space: grid must be >= 2");
  }
  for (std::size_t i = 0; i < atom_weights.size(); ++i) {
    if (!(atom_weights[i] > 0.0) || !std::isfinite(atom_weights[i]))
      throw config_error("measure space: atom " + std::to_string(i + 1) +
                         " has nonpositive weight");
  }
  if (tail) {
    if (!tail->weight) throw config_error("measure space: tail rule lacks weight");
    const long h = static_cast<long>(atom_weights.size());
    for (long j : tail_probe_points(h, h + (1L << 16), 4)) {
      const double w = tail->weight(static_cast<double>(j));
      if (!(w > 0.0) || !std::isfinite(w))
        throw config_error("measure space: tail weight nonpositive at j = " +
                           std::to_string(j));
    }
  }
  MeasureSpace mu;
  mu.interval_ = interval;
  mu.weights_ = std::move(atom_weights);
  mu.tail_ = std::move(tail);
  return mu;
}

double MeasureSpace::atom_weight(long j) const {
  if (j < 1) throw numeric_error("atom_weight: ids start at 1");
  if (j <= explicit_atoms()) return weights_[static_cast<std::size_t>(j - 1)];
  if (!tail_) throw numeric_error("atom_weight: id beyond explicit atoms and no tail rule");
  const double w = tail_->weight(static_cast<double>(j));
  if (!(w > 0.0)) throw numeric_error("atom_weight: tail weight nonpositive");
  return w;
}

double MeasurableFunction::atom_value(long j) const {
  if (j < 1) throw numeric_error("atom_value: ids start at 1");
  const long n = static_cast<long>(atom_values.size());
  if (j <= n) return atom_values[static_cast<std::size_t>(j - 1)];
  if (!on_tail) throw numeric_error("atom_value: id beyond explicit atoms and no tail evaluator");
  return on_tail(static_cast<double>(j));
}

namespace {

std::optional<double> guard_limit(double v) {
  if (std::isnan(v)) return std::nullopt;
  return v;
}

}  // namespace

MeasurableFunction constant_fn(const MeasureSpace& mu, double c) {
  MeasurableFunction f;
  if (mu.has_interval()) f.on_interval = [c](double) { return c; };
  f.atom_values.assign(static_cast<std::size_t>(mu.explicit_atoms()), c);
  if (mu.has_tail()) {
    f.on_tail = [c](double) { return c; };
    f.tail_limit = c;
  }
  return f;
}

MeasurableFunction indicator_atom(const MeasureSpace& mu, long j) {
  if (j < 1) throw config_error("indicator_atom: ids start at 1");
  MeasurableFunction f = constant_fn(mu, 0.0);
  if (j <= mu.explicit_atoms()) {
    f.atom_values[static_cast<std::size_t>(j - 1)] = 1.0;
  } else {
    if (!mu.has_tail()) throw config_error("indicator_atom: id beyond the atom list");
    const double jd = static_cast<double>(j);
    f.on_tail = [jd](double k) { return k == jd ? 1.0 : 0.0; };
    f.tail_limit = 0.0;
    f.min_tail_probe = j;
  }
  return f;
}

MeasurableFunction indicator_interval(const MeasureSpace& mu, double a, double b) {
  if (!mu.has_interval()) throw config_error("indicator_interval: space has no interval");
  MeasurableFunction f = constant_fn(mu, 0.0);
  f.on_interval = [a, b](double t) { return (t >= a && t < b) ? 1.0 : 0.0; };
  return f;
}

MeasurableFunction scale_fn(const MeasurableFunction& f, double c) {
  MeasurableFunction g;
  if (f.on_interval) g.on_interval = [fi = f.on_interval, c](double t) { return c * fi(t); };
  g.atom_values.reserve(f.atom_values.size());
  for (double v : f.atom_values) g.atom_values.push_back(c * v);
  if (f.on_tail) g.on_tail = [ft = f.on_tail, c](double j) { return c * ft(j); };
  if (c == 0.0)
    g.tail_limit = f.on_tail ? std::optional<double>(0.0) : std::nullopt;
  else if (f.tail_limit)
    g.tail_limit = guard_limit(c * *f.tail_limit);
  g.min_tail_probe = f.min_tail_probe;
  return g;
}

MeasurableFunction abs_fn(const MeasurableFunction& f) {
  MeasurableFunction g;
  if (f.on_interval) g.on_interval = [fi = f.on_interval](double t) { return std::abs(fi(t)); };
  g.atom_values.reserve(f.atom_values.size());
  for (double v : f.atom_values) g.atom_values.push_back(std::abs(v));
  if (f.on_tail) g.on_tail = [ft = f.on_tail](double j) { return std::abs(ft(j)); };
  if (f.tail_limit) g.tail_limit = std::abs(*f.tail_limit);
  g.min_tail_probe = f.min_tail_probe;
  return g;
}

MeasurableFunction product_fn(const MeasurableFunction& a, const MeasurableFunction& b) {
  if (a.atom_values.size() != b.atom_values.size())
    throw numeric_error("product_fn: atom lists differ in length");
  MeasurableFunction g;
  if (a.on_interval && b.on_interval)
    g.on_interval = [fa = a.on_interval, fb = b.on_interval](double t) {
      return fa(t) * fb(t);
    };
  g.atom_values.reserve(a.atom_values.size());
  for (std::size_t i = 0; i < a.atom_values.size(); ++i)
    g.atom_values.push_back(a.atom_values[i] * b.atom_values[i]);
  if (a.on_tail && b.on_tail)
    g.on_tail = [fa = a.on_tail, fb = b.on_tail](double j) { return fa(j) * fb(j); };
  if (a.tail_limit && b.tail_limit)
    g.tail_limit = guard_limit(*a.tail_limit * *b.tail_limit);
  g.min_tail_probe = std::max(a.min_tail_probe, b.min_tail_probe);
  return g;
}

MeasurableFunction difference_fn(const MeasurableFunction& a, const MeasurableFunction& b) {
  if (a.atom_values.size() != b.atom_values.size())
    throw numeric_error("difference_fn: atom lists differ in length");
  MeasurableFunction g;
  if (a.on_interval && b.on_interval)
    g.on_interval = [fa = a.on_interval, fb = b.on_interval](double t) {
      return fa(t) - fb(t);
    };
  g.atom_values.reserve(a.atom_values.size());
  for (std::size_t i = 0; i < a.atom_values.size(); ++i)
    g.atom_values.push_back(a.atom_values[i] - b.atom_values[i]);
  if (a.on_tail && b.on_tail)
    g.on_tail = [fa = a.on_tail, fb = b.on_tail](double j) { return fa(j) - fb(j); };
  if (a.tail_limit && b.tail_limit)
    g.tail_limit = guard_limit(*a.tail_limit - *b.tail_limit);
  g.min_tail_probe = std::max(a.min_tail_probe, b.min_tail_probe);
  return g;
}

MeasurableFunction map_fn(const MeasurableFunction& f, std::function<double(double)> g) {
  MeasurableFunction out;
  if (f.on_interval)
    out.on_interval = [fi = f.on_interval, g](double t) { return g(fi(t)); };
  out.atom_values.reserve(f.atom_values.size());
  for (double v : f.atom_values) out.atom_values.push_back(g(v));
  if (f.on_tail) out.on_tail = [ft = f.on_tail, g](double j) { return g(ft(j)); };
  if (f.tail_limit) out.tail_limit = guard_limit(g(*f.tail_limit));
  out.min_tail_probe = f.min_tail_probe;
  return out;
}

std::vector<long> tail_probe_points(long start, long cap, int per_octave) {
  std::vector<long> pts;
  if (cap <= start) return pts;
  double j = static_cast<double>(start + 1);
  const double step = std::pow(2.0, 1.0 / per_octave);
  long last = start;
  while (true) {
    long ji = static_cast<long>(std::llround(j));
    if (ji <= last) ji = last + 1;
    if (ji > cap) break;
    pts.push_back(ji);
    last = ji;
    j *= step;
  }
  return pts;
}

std::vector<double> interval_sample_points(const Interval& iv, int max_samples) {
  const int n = std::max(1, std::min(iv.grid, max_samples));
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    pts[static_cast<std::size_t>(i)] = iv.lo + (iv.hi - iv.lo) * (i + 0.5) / n;
  return pts;
}

IntegralResult integrate(const MeasurableFunction& f, const MeasureSpace& mu,
                         IntegrateOptions opt) {
  IntegralResult r;

  if (mu.has_interval()) {
    if (!f.on_interval)
      throw numeric_error("integrate: function lacks an interval evaluator");
    QuadOptions q = opt.quad;
    q.atol = std::min(q.atol, opt.atol);
    const double ilo = mu.interval().lo, ihi = mu.interval().hi;
    QuadResult qr;
    std::exception_ptr panel_error;
    try {
      qr = adaptive_simpson(f.on_interval, ilo, ihi, q);
    } catch (const numeric_error&) {
      // A singular endpoint can defeat the panel rule's interior nudge once
      // panels shrink below double spacing; give the fallback a chance.
      panel_error = std::current_exception();
      qr.converged = false;
    }
    if (!qr.converged) {
      // Fixed-order panels stall on integrable endpoint singularities, e.g.
      // pushforward densities whose branch derivative vanishes at an edge.
      // The double-exponential rule settles there; use it when it does.
      QuadResult ts;
      ts.converged = true;
      QuadOptions qp = q;
      qp.atol = q.atol / q.base_panels;
      for (int i = 0; i < q.base_panels && ts.converged; ++i) {
        const double pa = ilo + (ihi - ilo) * i / q.base_panels;
        const double pb = ilo + (ihi - ilo) * (i + 1) / q.base_panels;
        const QuadResult piece = tanh_sinh(f.on_interval, pa, pb, qp);
        ts.value += piece.value;
        ts.abs_error += piece.abs_error;
        ts.converged = ts.converged && piece.converged;
      }
      if (ts.converged)
        qr = ts;
      else if (panel_error)
        std::rethrow_exception(panel_error);
    }
    r.value += qr.value;
    r.abs_error += qr.abs_error;
    r.converged = r.converged && qr.converged;
  }

  const long n = mu.explicit_atoms();
  if (static_cast<long>(f.atom_values.size()) != n)
    throw numeric_error("integrate: atom value list does not match the space");
  for (long j = 1; j <= n; ++j) {
    const double term =
        f.atom_values[static_cast<std::size_t>(j - 1)] * mu.atom_weight(j);
    if (std::isnan(term)) throw numeric_error("integrate: NaN atom term");
    r.value += term;
  }

  if (mu.has_tail()) {
    if (!f.on_tail) throw numeric_error("integrate: function lacks a tail evaluator");
    // Declared limits settle divergence before any walking: when the summand
    // w(j) f(j) tends to a nonzero value the series cannot converge. Only a
    // weight limit of zero (or an undeclared one) leaves the question open.
    if (f.tail_limit && mu.tail().weight_limit) {
      const double fl = *f.tail_limit;
      const double wl = *mu.tail().weight_limit;
      if (wl > 0.0 && fl != 0.0) {
        r.value += fl > 0.0 ? kInf : -kInf;
        return r;
      }
    }
    const long floor_j =
        std::min(opt.tail_cap, std::max(f.min_tail_probe, opt.tail_floor));
    long j = n + 1;
    // Doubling blocks (N, 2N], (2N, 4N], ... seeded so the first block is at
    // least tail_block0 atoms wide.
    long edge = std::max(2 * n, n + opt.tail_block0);
    double prev_block = 0.0, block = 0.0;
    int nondecreasing_run = 0;
    bool first = true;
    while (j <= opt.tail_cap) {
      const long end = std::min(opt.tail_cap, edge);
      double sum = 0.0;
      for (long k = j; k <= end; ++k) {
        sum += f.on_tail(static_cast<double>(k)) * mu.atom_weight(k);
      }
      if (std::isnan(sum)) throw numeric_error("integrate: NaN tail block");
      r.value += sum;
      prev_block = block;
      block = std::abs(sum);
      if (!first && block >= prev_block * 0.999 && block >= opt.atol) {
        if (++nondecreasing_run >= 3) {
          // Blocks are not shrinking: the tail series diverges.
          r.converged = false;
          if (sum > 0.0) r.value = kInf;
          if (sum < 0.0) r.value = -kInf;
          return r;
        }
      } else {
        nondecreasing_run = 0;
      }
      first = false;
      j = end + 1;
      if (block < opt.atol && j > floor_j) {
        // A locally tiny block may precede late growth. Stop only when
        // geometric probes out to the cap also look negligible; |term| * p
        // bounds the octave block ending at p for a monotone-ish summand.
        bool resurgent = false;
        for (long p = 2 * edge; p < 2 * opt.tail_cap; p *= 2) {
          const long q = std::min(p, opt.tail_cap);
          const double term =
              f.on_tail(static_cast<double>(q)) * mu.atom_weight(q);
          if (!(std::abs(term) * static_cast<double>(q) < opt.atol)) {
            resurgent = true;
            break;
          }
          if (q == opt.tail_cap) break;
        }
        if (!resurgent) {
          r.abs_error += block;
          return r;
        }
      }
      edge *= 2;
    }
    // Cap reached: extrapolate geometrically from the observed decay; blocks
    // shrinking slower than a factor ~1/2 leave the sum undecided.
    const double ratio =
        prev_block > 0.0 ? std::min(block / prev_block, 0.9) : 0.0;
    if (prev_block > 0.0 && block / prev_block > 0.55) {
      r.converged = false;
      r.abs_error += block;
    } else {
      r.abs_error += block * (ratio > 0.0 ? ratio / (1.0 - ratio) : 1.0);
    }
  }

  if (std::isnan(r.value)) throw numeric_error("integrate: NaN total");
  return r;
}

LimsupResult tail_limsup(const MeasurableFunction& f, const MeasureSpace& mu,
                         long cap) {
  if (!mu.has_tail()) return {0.0, true};
  if (f.tail_limit) return {*f.tail_limit, true};
  if (!f.on_tail) throw numeric_error("tail_limsup: function lacks a tail evaluator");

  const long start = mu.explicit_atoms();
  cap = std::max(cap, start + 1024);
  const long half = std::max(start + 1, cap / 2);
  const long quarter = std::max(start + 1, cap / 4);

  auto block_max = [&](long lo, long hi) {
    double m = -kInf;
    for (long j : tail_probe_points(lo - 1, hi)) {
      const double v = f.on_tail(static_cast<double>(j));
      if (std::isnan(v)) throw numeric_error("tail_limsup: NaN sample");
      m = std::max(m, v);
    }
    return m;
  };
  const double m_prev = block_max(quarter, half);
  const double m_last = block_max(half + 1, cap);
  double est = std::max(m_prev, m_last);
  // Still climbing steeply at the cap: treat the limsup as infinite.
  if (std::isfinite(m_prev) && std::isfinite(m_last) && m_prev > 0.0 &&
      m_last >= 1.25 * m_prev) {
    const double tip = f.on_tail(static_cast<double>(cap));
    if (tip >= m_last * (1.0 - 1e-9)) est = kInf;
  }
  return {est, false};
}

}  // namespace orlicz
