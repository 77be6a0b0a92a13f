// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlicz/numeric.hpp"

namespace orlicz {

// How a piecewise-linear Young function continues past its last breakpoint:
// the final slope repeats, grows by one multiple per segment, or doubles per
// segment.
enum class TailGrowth { constant, linear, geometric };

struct Delta2Result {
  double sup_ratio = 0.0;  // sup of phi(2x)/phi(x) over the probed window
  bool diverges = false;   // ratio still climbing at the window's right edge
  bool satisfied = false;  // bounded ratio across the window
  double at_x = 0.0;       // where the sup (or the growth evidence) occurred
};

struct YoungDiagnostic {
  std::string check;
  bool pass = false;
  double at_x = 0.0;
  std::string detail;
};

// A Young function: convex, vanishing at zero, superlinear at infinity.
// Negative arguments fold through |x|. Values may saturate to +inf; callers
// treat that as an overflow flag, not an error.
class YoungFunction {
 public:
  static YoungFunction power(double p, double c);
  static YoungFunction exp_minus_linear();
  static YoungFunction piecewise_linear(std::vector<std::pair<double, double>> points,
                                        TailGrowth growth);
  // post * inner(pre * x); both factors positive.
  static YoungFunction scaled(const YoungFunction& inner, double pre, double post);

  // Legendre transform sup_x { x|y| - phi(x) }, evaluated per query.
  YoungFunction conjugate() const;

  YoungFunction() = default;

  double operator()(double x) const;

  // Smallest x >= 0 with phi(x) = y, for y >= 0.
  double inverse(double y) const;

  // Right slope at x (numeric; exact closed forms are not exposed so every
  // kind goes through the same code path).
  double derivative(double x) const;

  // Probes phi(2x)/phi(x) over [x_lo, x_hi]; zeros default to probe_window().
  Delta2Result delta2_index(double x_lo = 0.0, double x_hi = 0.0) const;

  // Structural checks: phi(0) = 0, monotone, midpoint-convex, superlinear.
  std::vector<YoungDiagnostic> validate() const;

  // Sampling window used by delta2_index and validate; chosen per kind so
  // probing stays inside the representable range.
  std::pair<double, double> probe_window() const;

  std::string describe() const;

 private:
  struct Power {
    double p, c;
  };
  struct ExpMinusLinear {};
  struct Piecewise {
    std::vector<std::pair<double, double>> pts;
    TailGrowth growth;
  };
  struct Scaled {
    std::shared_ptr<const YoungFunction> inner;
    double pre, post;
  };
  struct Conjugate {
    std::shared_ptr<const YoungFunction> inner;
  };

  using Kind = std::variant<Power, ExpMinusLinear, Piecewise, Scaled, Conjugate>;

  explicit YoungFunction(Kind kind) : kind_(std::move(kind)) {}

  double eval_abs(double x) const;  // assumes x >= 0

  Kind kind_ = Power{2.0, 0.5};
};

}  // namespace orlicz
