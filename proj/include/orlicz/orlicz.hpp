// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "orlicz/measure.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// I_phi(f) = integral of phi(|f|) over the space. A divergent tail shows up
// as value = +inf with converged = false.
IntegralResult modular(const YoungFunction& phi, const MeasurableFunction& f,
                       const MeasureSpace& mu, IntegrateOptions opt = {});

// Integral of h * phi(|f|); h must be nonnegative at every probe.
IntegralResult weighted_modular(const YoungFunction& phi, const MeasurableFunction& f,
                                const MeasurableFunction& h, const MeasureSpace& mu,
                                IntegrateOptions opt = {});

struct NormOptions {
  double rel_tol = 1e-9;
  double zero_threshold = 1e-300;
  double bracket_hi = 1e150;  // give up (norm = +inf) past this scale
  double bracket_lo = 1e-150;
  IntegrateOptions integrate{};
};

// Luxemburg norm N_phi(f) = inf{ k > 0 : I_phi(f/k) <= 1 }, by bracketing and
// bisection on k. Returns 0 for the zero function, +inf when no finite k
// brings the modular under 1. The returned k sits on the modular <= 1 side of
// the final bracket.
double luxemburg_norm(const YoungFunction& phi, const MeasurableFunction& f,
                      const MeasureSpace& mu, NormOptions opt = {});

}  // namespace orlicz
