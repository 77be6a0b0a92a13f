// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "orlicz/measure.hpp"
#include "orlicz/orlicz.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// M_u. The modulus is what every criterion consumes; the signed channel only
// matters when the operator is applied to a function.
class Multiplier {
 public:
  explicit Multiplier(MeasurableFunction u)
      : signed_(std::move(u)), modulus_(abs_fn(signed_)) {}

  const MeasurableFunction& modulus() const { return modulus_; }
  const MeasurableFunction& signed_fn() const { return signed_; }

  MeasurableFunction apply(const MeasurableFunction& f) const {
    return product_fn(signed_, f);
  }

 private:
  MeasurableFunction signed_;
  MeasurableFunction modulus_;
};

// One strictly monotone differentiable piece of the interval map.
struct IntervalBranch {
  double lo = 0.0, hi = 0.0;                // domain piece [lo, hi)
  std::function<double(double)> forward;    // the map on the piece
  std::function<double(double)> derivative; // its derivative (signed)
};

// phi for C_phi: a total map on atom ids (explicit list + closed-form tail,
// which must be nondecreasing and integer-valued past the horizon) plus
// monotone branches on the interval.
struct Transformation {
  std::vector<long> atom_map;               // targets for explicit ids 1..N
  std::function<double(double)> tail_map;   // j -> target id for j > N
  std::vector<IntervalBranch> branches;
  bool surjective = false;
  long probe_cap = 1L << 21;

  // Target atom id for atom j; tail values must round to integers.
  long map_atom(long j, long explicit_count) const;
};

// f o phi.
MeasurableFunction apply_composition(const Transformation& t, const MeasurableFunction& f,
                                     const MeasureSpace& mu);

struct RadonNikodym {
  MeasurableFunction h;
  bool declared = false;  // provenance: declared by the user vs computed here
};

// Computes h = d(mu o phi^{-1})/d(mu): preimage weight sums on atoms (tail
// preimages resolved by monotone inversion probing), branch-derivative sums
// on the interval.
RadonNikodym radon_nikodym(const Transformation& t, const MeasureSpace& mu);

// Accepts a user-supplied h after checking int_A h = mu(phi^{-1}(A)) on probe
// sets (every explicit atom, sampled tail atoms, dyadic subintervals).
RadonNikodym declare_radon_nikodym(const Transformation& t, const MeasureSpace& mu,
                                   MeasurableFunction h, double rtol = 1e-6);

// |I_{phi2}(f o phi) - int h phi2(|f|) dmu|; the identity behind it needs a
// surjective map, so the flag is required.
double change_of_variables_check(const Transformation& t, const YoungFunction& phi2,
                                 const MeasurableFunction& f, const RadonNikodym& rn,
                                 const MeasureSpace& mu, IntegrateOptions opt = {});

struct MultiplicationOp {
  Multiplier u;
};
struct CompositionOp {
  Transformation phi;
  RadonNikodym density;
};
using OperatorVariant = std::variant<MultiplicationOp, CompositionOp>;

// The weight the criteria see: |u| for multiplication, h for composition.
const MeasurableFunction& operator_weight(const OperatorVariant& op);

// T f for either operator kind.
MeasurableFunction apply_operator(const OperatorVariant& op, const MeasurableFunction& f,
                                  const MeasureSpace& mu);

// Largest tail atom id that can influence atoms <= target under the tail map
// (by monotone probing); 0 when none. Used to bound preimage supports.
long tail_preimage_bound(const Transformation& t, const MeasureSpace& mu, long target);

}  // namespace orlicz
