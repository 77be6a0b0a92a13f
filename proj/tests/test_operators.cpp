// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "orlicz/operators.hpp"

using namespace orlicz;

namespace {

MeasureSpace counting() {
  TailRule tail;
  tail.weight = [](double) { return 1.0; };
  tail.weight_limit = 1.0;
  return MeasureSpace::make(std::nullopt, {}, tail);
}

MeasureSpace unit_interval() {
  return MeasureSpace::make(Interval{0.0, 1.0, 512}, {}, std::nullopt);
}

Transformation ceil_half_map() {
  Transformation t;
  t.tail_map = [](double j) { return std::ceil(j / 2.0); };
  t.surjective = true;
  return t;
}

Transformation doubling_map() {
  Transformation t;
  t.tail_map = [](double j) { return 2.0 * j; };
  return t;
}

}  // namespace

TEST_CASE("multiplier separates sign from modulus") {
  const MeasureSpace mu = counting();
  MeasurableFunction u;
  u.on_tail = [](double j) { return j == 3.0 ? -2.0 : 0.5; };
  u.tail_limit = 0.5;
  const Multiplier m(u);
  CHECK(m.signed_fn().on_tail(3.0) == doctest::Approx(-2.0));
  CHECK(m.modulus().on_tail(3.0) == doctest::Approx(2.0));
  REQUIRE(m.modulus().tail_limit.has_value());
  CHECK(*m.modulus().tail_limit == doctest::Approx(0.5));

  const MeasurableFunction uf = m.apply(constant_fn(mu, 3.0));
  CHECK(uf.on_tail(3.0) == doctest::Approx(-6.0));
  CHECK(uf.on_tail(4.0) == doctest::Approx(1.5));
}

TEST_CASE("atom map resolves explicit then tail targets") {
  Transformation t;
  t.atom_map = {2, 1};
  t.tail_map = [](double j) { return j + 1.0; };
  CHECK(t.map_atom(1, 2) == 2);
  CHECK(t.map_atom(2, 2) == 1);
  CHECK(t.map_atom(5, 2) == 6);
}

TEST_CASE("atom map rejects malformed targets") {
  Transformation frac;
  frac.tail_map = [](double j) { return j / 2.0 + 0.25; };
  CHECK_THROWS_AS(frac.map_atom(1, 0), numeric_error);

  Transformation low;
  low.tail_map = [](double j) { return j - 5.0; };
  CHECK_THROWS_AS(low.map_atom(1, 0), numeric_error);

  Transformation none;
  CHECK_THROWS_AS(none.map_atom(1, 0), numeric_error);
}

TEST_CASE("composition pulls back along the atom map") {
  const MeasureSpace mu = counting();
  const MeasurableFunction f = indicator_atom(mu, 4);
  const MeasurableFunction g = apply_composition(doubling_map(), f, mu);
  // (f o phi)(j) = f(2j): hits 1 exactly at j = 2.
  CHECK(g.on_tail(1.0) == doctest::Approx(0.0));
  CHECK(g.on_tail(2.0) == doctest::Approx(1.0));
  CHECK(g.on_tail(3.0) == doctest::Approx(0.0));
  REQUIRE(g.tail_limit.has_value());
  CHECK(*g.tail_limit == doctest::Approx(0.0));
  CHECK(g.min_tail_probe == 2);
}

TEST_CASE("composition pulls back along interval branches") {
  const MeasureSpace mu = unit_interval();
  Transformation t;
  t.branches.push_back(IntervalBranch{0.0, 1.0, [](double s) { return s * s; },
                                      [](double s) { return 2.0 * s; }});
  MeasurableFunction f;
  f.on_interval = [](double x) { return x; };
  const MeasurableFunction g = apply_composition(t, f, mu);
  CHECK(g.on_interval(0.5) == doctest::Approx(0.25));
  CHECK(g.on_interval(0.9) == doctest::Approx(0.81));
}

TEST_CASE("density of the two-to-one folding map is 2") {
  const MeasureSpace mu = counting();
  const RadonNikodym rn = radon_nikodym(ceil_half_map(), mu);
  CHECK_FALSE(rn.declared);
  CHECK(rn.h.atom_value(1) == doctest::Approx(2.0));
  CHECK(rn.h.atom_value(7) == doctest::Approx(2.0));
  CHECK(rn.h.atom_value(100) == doctest::Approx(2.0));
}

TEST_CASE("density of the shift map vanishes at the orphaned atom") {
  const MeasureSpace mu = counting();
  Transformation t;
  t.tail_map = [](double j) { return j + 1.0; };
  const RadonNikodym rn = radon_nikodym(t, mu);
  CHECK(rn.h.atom_value(1) == doctest::Approx(0.0));
  CHECK(rn.h.atom_value(2) == doctest::Approx(1.0));
  CHECK(rn.h.atom_value(50) == doctest::Approx(1.0));
}

TEST_CASE("density of the doubling map charges even atoms only") {
  const MeasureSpace mu = counting();
  const RadonNikodym rn = radon_nikodym(doubling_map(), mu);
  CHECK(rn.h.atom_value(4) == doctest::Approx(1.0));
  CHECK(rn.h.atom_value(5) == doctest::Approx(0.0));
  CHECK(rn.h.atom_value(64) == doctest::Approx(1.0));
}

TEST_CASE("density on the interval inverts the branch derivative") {
  const MeasureSpace mu = unit_interval();
  Transformation t;
  t.branches.push_back(IntervalBranch{0.0, 1.0, [](double s) { return s * s; },
                                      [](double s) { return 2.0 * s; }});
  const RadonNikodym rn = radon_nikodym(t, mu);
  // phi(t) = t^2 pushes Lebesgue measure to h(s) = 1 / (2 sqrt(s)).
  CHECK(rn.h.on_interval(0.25) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rn.h.on_interval(0.64) == doctest::Approx(1.0 / 1.6).epsilon(1e-6));
}

TEST_CASE("declared densities are audited against the measured one") {
  const MeasureSpace mu = counting();
  MeasurableFunction good;
  good.on_tail = [](double) { return 2.0; };
  good.tail_limit = 2.0;
  const RadonNikodym rn = declare_radon_nikodym(ceil_half_map(), mu, good);
  CHECK(rn.declared);
  CHECK(rn.h.atom_value(3) == doctest::Approx(2.0));

  MeasurableFunction bad;
  bad.on_tail = [](double) { return 1.5; };
  CHECK_THROWS_AS(declare_radon_nikodym(ceil_half_map(), mu, bad), numeric_error);
}

TEST_CASE("change of variables requires the surjectivity flag") {
  const MeasureSpace mu = counting();
  const MeasurableFunction f = indicator_atom(mu, 3);
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  Transformation t = ceil_half_map();
  const RadonNikodym rn = radon_nikodym(t, mu);
  t.surjective = false;
  CHECK_THROWS_AS(change_of_variables_check(t, phi, f, rn, mu), config_error);
}

TEST_CASE("change of variables holds for the folding map") {
  const MeasureSpace mu = counting();
  const MeasurableFunction f = indicator_atom(mu, 3);
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const Transformation t = ceil_half_map();
  const RadonNikodym rn = radon_nikodym(t, mu);
  CHECK(change_of_variables_check(t, phi, f, rn, mu) < 1e-9);
}

TEST_CASE("tail preimage bound inverts monotone tail maps") {
  const MeasureSpace mu = counting();
  CHECK(tail_preimage_bound(ceil_half_map(), mu, 5) == 10);
  CHECK(tail_preimage_bound(doubling_map(), mu, 5) == 2);
  CHECK(tail_preimage_bound(doubling_map(), mu, 4) == 2);

  Transformation t;
  t.tail_map = [](double) { return 1.0; };
  CHECK_THROWS_AS(tail_preimage_bound(t, mu, 1), numeric_error);
}

TEST_CASE("operator weight and application dispatch per kind") {
  const MeasureSpace mu = counting();
  MeasurableFunction u;
  u.on_tail = [](double) { return -2.0; };
  u.tail_limit = -2.0;
  const OperatorVariant mult = MultiplicationOp{Multiplier(u)};
  CHECK(operator_weight(mult).on_tail(9.0) == doctest::Approx(2.0));
  CHECK(apply_operator(mult, constant_fn(mu, 3.0), mu).on_tail(9.0) ==
        doctest::Approx(-6.0));

  const Transformation t = ceil_half_map();
  const OperatorVariant comp = CompositionOp{t, radon_nikodym(t, mu)};
  CHECK(operator_weight(comp).atom_value(5) == doctest::Approx(2.0));
  CHECK(apply_operator(comp, indicator_atom(mu, 2), mu).on_tail(4.0) ==
        doctest::Approx(1.0));
}
