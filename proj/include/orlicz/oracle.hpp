// SPDX-License-Identifier: Apache-2.0
//
// Brute-force finite-dimensional checks: empirical operator norms over
// truncated atomic supports, finite-rank truncation distances, and
// separation of indicator images. Everything here is a lower-bound
// estimator; upper bounds come from analysis certificates only.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orlicz/operators.hpp"

namespace orlicz {

struct NormEstimate {
  double lower = 0.0;            // empirical lower bound for the operator norm
  MeasurableFunction maximizer;  // best f found (zero function when lower = 0)
  std::vector<long> support;     // atom ids carrying the maximizer
  std::vector<double> values;    // values on those ids
};

// Maximizes N_phi2(T f) / N_phi1(f) over nonnegative vectors supported on
// atom ids 1..trunc_atoms: every coordinate indicator, `samples` seeded
// random vectors, then coordinate-ascent polish (factors 0.5/0.9/1.1/2,
// at most 50 sweeps). Deterministic for a fixed seed.
NormEstimate operator_norm_estimate(const YoungFunction& phi1, const YoungFunction& phi2,
                                    const OperatorVariant& op, const MeasureSpace& mu,
                                    long trunc_atoms, int samples, std::uint64_t seed);

// Empirical norm of T restricted to functions vanishing on atoms <= keep
// (equals ||T - T_keep|| for the finite-rank cut through the first atoms).
// Search window: ids in (keep, keep + max(128, keep)], clipped to the space.
double truncation_distance(const YoungFunction& phi1, const YoungFunction& phi2,
                           const OperatorVariant& op, const MeasureSpace& mu,
                           long keep_atoms, int samples, std::uint64_t seed);

// Disjoint pieces to build normalized indicators on: distinct atom ids, or
// an interval to be split into equal subintervals.
struct WitnessRegion {
  std::vector<long> atom_ids;
  std::optional<Interval> interval;
};

struct WitnessResult {
  double min_pairwise = 0.0;    // min over pairs of N_phi2(T f_k - T f_m)
  double min_image_norm = 0.0;  // min over k of N_phi2(T f_k)
  long pieces = 0;
};

// Builds f_k = indicator(piece_k) / N_phi1(indicator(piece_k)) and measures
// how separated their images stay; a positive min_pairwise is empirical
// noncompactness evidence at that level.
WitnessResult witness_separation(const YoungFunction& phi1, const YoungFunction& phi2,
                                 const OperatorVariant& op, const MeasureSpace& mu,
                                 const WitnessRegion& region, long count);

}  // namespace orlicz
