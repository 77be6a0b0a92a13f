// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "orlicz/numeric.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

// Nonatomic part: Lebesgue measure on [lo, hi) with a resolution hint used
// by samplers (not by the adaptive integrator).
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  int grid = 4096;
};

// Atom weights beyond the explicit list: weight(j) for j > horizon, where
// horizon equals the number of explicit atoms.
struct TailRule {
  std::function<double(double)> weight;
  std::optional<double> weight_limit;  // limit of weight(j) as j grows, if declared
};

// sigma-finite space: optional interval, explicit atoms with ids 1..N, and an
// optional tail rule extending the atom list to all of N.
class MeasureSpace {
 public:
  static MeasureSpace make(std::optional<Interval> interval,
                           std::vector<double> atom_weights,
                           std::optional<TailRule> tail);

  bool has_interval() const { return interval_.has_value(); }
  const Interval& interval() const { return *interval_; }

  long explicit_atoms() const { return static_cast<long>(weights_.size()); }
  bool has_atoms() const { return !weights_.empty() || tail_.has_value(); }
  bool has_tail() const { return tail_.has_value(); }
  const TailRule& tail() const { return *tail_; }

  // Weight of atom id j (1-based); consults the tail rule past the explicit
  // list and rejects nonpositive weights.
  double atom_weight(long j) const;

 private:
  std::optional<Interval> interval_;
  std::vector<double> weights_;
  std::optional<TailRule> tail_;
};

// A function given channel-wise: an evaluator on the interval, one value per
// explicit atom, and an evaluator for tail atoms. Channels may be absent when
// the space lacks the corresponding part.
struct MeasurableFunction {
  std::function<double(double)> on_interval;
  std::vector<double> atom_values;
  std::function<double(double)> on_tail;

  // Limit of on_tail(j) as j -> inf when known for certain (may be +inf).
  std::optional<double> tail_limit;

  // Integration must walk the tail at least this far before it may stop
  // early; lets deep finite-support functions (e.g. an indicator of atom
  // 10^5) survive the zero-block cutoff.
  long min_tail_probe = 0;

  double atom_value(long j) const;
};

// Builders and pointwise combinators. Combinators propagate tail limits and
// probe depths conservatively (a limit is dropped when arithmetic on the
// inputs' limits is indeterminate).
MeasurableFunction constant_fn(const MeasureSpace& mu, double c);
MeasurableFunction indicator_atom(const MeasureSpace& mu, long j);
MeasurableFunction indicator_interval(const MeasureSpace& mu, double a, double b);
MeasurableFunction scale_fn(const MeasurableFunction& f, double c);
MeasurableFunction abs_fn(const MeasurableFunction& f);
MeasurableFunction product_fn(const MeasurableFunction& a, const MeasurableFunction& b);
MeasurableFunction difference_fn(const MeasurableFunction& a, const MeasurableFunction& b);
MeasurableFunction map_fn(const MeasurableFunction& f, std::function<double(double)> g);

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
};

struct IntegrateOptions {
  double atol = 1e-10;
  long tail_cap = 1L << 20;
  long tail_block0 = 64;    // first tail block width; widths double
  long tail_floor = 4096;   // walk at least this many tail atoms
  QuadOptions quad{};
};

// Integral over the whole space: adaptive quadrature on the interval, exact
// sums over explicit atoms, doubling geometric blocks over the tail with
// early stop, divergence detection, and extrapolated error at the cap.
IntegralResult integrate(const MeasurableFunction& f, const MeasureSpace& mu,
                         IntegrateOptions opt = {});

struct LimsupResult {
  double value = 0.0;
  bool declared = false;  // true when taken from a declared tail limit
};

// Estimate of limsup_{j->inf} f(j) over the atom tail: the declared limit
// when present, otherwise the max over geometric probes in the last two
// octaves below the cap (+inf when those octaves still climb steeply).
LimsupResult tail_limsup(const MeasurableFunction& f, const MeasureSpace& mu,
                         long cap = 1L << 20);

// Geometric ladder of integer probe points in (start, cap]: roughly
// per_octave points per doubling, deduplicated, sorted.
std::vector<long> tail_probe_points(long start, long cap, int per_octave = 16);

// Midpoints of an even subdivision of the interval, at most max_samples.
std::vector<double> interval_sample_points(const Interval& iv, int max_samples);

}  // namespace orlicz
