// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "orlicz/analysis.hpp"

using namespace orlicz;

namespace {

MeasureSpace counting() {
  TailRule tail;
  tail.weight = [](double) { return 1.0; };
  tail.weight_limit = 1.0;
  return MeasureSpace::make(std::nullopt, {}, tail);
}

MeasureSpace summable_tail() {
  TailRule tail;
  tail.weight = [](double j) { return 1.0 / (j * j); };
  tail.weight_limit = 0.0;
  return MeasureSpace::make(std::nullopt, {}, tail);
}

MeasurableFunction tail_weight(double (*f)(double), double limit) {
  MeasurableFunction u;
  u.on_tail = f;
  u.tail_limit = limit;
  return u;
}

}  // namespace

TEST_CASE("critical epsilon equals the weight for a shared shape") {
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  for (double w : {0.25, 1.0, 3.0}) {
    CHECK(critical_epsilon(phi, phi, OperatorMode::multiplication, w,
                           Quantifier::exists) == doctest::Approx(w).epsilon(1e-9));
    CHECK(critical_epsilon(phi, phi, OperatorMode::multiplication, w,
                           Quantifier::forall) == doctest::Approx(w).epsilon(1e-9));
  }
}

TEST_CASE("critical epsilon takes the p-th root in composition mode") {
  const YoungFunction p2 = YoungFunction::power(2.0, 0.5);
  CHECK(critical_epsilon(p2, p2, OperatorMode::composition, 4.0,
                         Quantifier::exists) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(critical_epsilon(p2, p2, OperatorMode::composition, 4.0,
                         Quantifier::forall) == doctest::Approx(2.0).epsilon(1e-9));

  const YoungFunction p3 = YoungFunction::power(3.0, 1.0 / 3.0);
  CHECK(critical_epsilon(p3, p3, OperatorMode::composition, 8.0,
                         Quantifier::exists) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("mismatched growth splits the two quantifiers") {
  const YoungFunction p2 = YoungFunction::power(2.0, 0.5);
  const YoungFunction p3 = YoungFunction::power(3.0, 1.0 / 3.0);

  // Domain grows faster: the ratio blows up at small scales, dies at large.
  CHECK(std::isinf(critical_epsilon(p3, p2, OperatorMode::multiplication, 1.0,
                                    Quantifier::exists)));
  CHECK(critical_epsilon(p3, p2, OperatorMode::multiplication, 1.0,
                         Quantifier::forall) == doctest::Approx(0.0));

  // Codomain grows faster: blows up at large scales, dies at small.
  CHECK(std::isinf(critical_epsilon(p2, p3, OperatorMode::multiplication, 1.0,
                                    Quantifier::exists)));
  CHECK(critical_epsilon(p2, p3, OperatorMode::multiplication, 1.0,
                         Quantifier::forall) == doctest::Approx(0.0));
}

TEST_CASE("critical epsilon degenerate and invalid weights") {
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  CHECK(critical_epsilon(phi, phi, OperatorMode::multiplication, 0.0,
                         Quantifier::exists) == 0.0);
  CHECK(std::isinf(critical_epsilon(phi, phi, OperatorMode::multiplication, kInf,
                                    Quantifier::forall)));
  CHECK_THROWS_AS(critical_epsilon(phi, phi, OperatorMode::multiplication, -1.0,
                                   Quantifier::exists),
                  numeric_error);
}

TEST_CASE("epsilon profile orders the quantifiers and tracks the weight") {
  const MeasureSpace mu = counting();
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const MeasurableFunction u =
      tail_weight(+[](double j) { return 1.0 + 1.0 / j; }, 1.0);
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::multiplication, u, mu);
  for (double j : {1.0, 2.0, 7.0, 100.0}) {
    const double ee = prof.eps_exists.on_tail(j);
    const double ef = prof.eps_forall.on_tail(j);
    CHECK(ee == doctest::Approx(1.0 + 1.0 / j).epsilon(1e-6));
    CHECK(ef <= ee + 1e-12);
  }
}

TEST_CASE("epsilon profile adopts a declared limit only when probes agree") {
  const MeasureSpace mu = counting();
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);

  const MeasurableFunction fast =
      tail_weight(+[](double j) { return 1.0 + std::exp(-j); }, 1.0);
  const EpsilonProfile pf =
      epsilon_profile(phi, phi, OperatorMode::multiplication, fast, mu);
  REQUIRE(pf.eps_exists.tail_limit.has_value());
  CHECK(*pf.eps_exists.tail_limit == doctest::Approx(1.0));

  // 1 + 1/j is still 2e-6 away from its limit at the probe depth, so the
  // declared value must not be adopted.
  const MeasurableFunction slow =
      tail_weight(+[](double j) { return 1.0 + 1.0 / j; }, 1.0);
  const EpsilonProfile ps =
      epsilon_profile(phi, phi, OperatorMode::multiplication, slow, mu);
  CHECK_FALSE(ps.eps_exists.tail_limit.has_value());
}

TEST_CASE("threshold sets shrink as eps grows") {
  const MeasureSpace mu = MeasureSpace::make(std::nullopt, {1.0, 1.0, 1.0, 1.0},
                                             std::nullopt);
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  MeasurableFunction u;
  u.atom_values = {2.0, 1.5, 1.1, 0.5};
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::multiplication, u, mu);

  const NEpsilonSet hi = n_epsilon_set(prof, mu, 1.2, Quantifier::exists);
  const NEpsilonSet lo = n_epsilon_set(prof, mu, 1.05, Quantifier::exists);
  CHECK(hi.atoms == std::vector<long>{1, 2});
  CHECK(lo.atoms == std::vector<long>{1, 2, 3});
  CHECK(hi.tail == TailVerdict::empty);
  CHECK(std::includes(lo.atoms.begin(), lo.atoms.end(), hi.atoms.begin(),
                      hi.atoms.end()));
  CHECK_THROWS_AS(n_epsilon_set(prof, mu, 0.0, Quantifier::exists), numeric_error);
}

TEST_CASE("threshold set tail verdicts follow the limsup") {
  const MeasureSpace mu = counting();
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const MeasurableFunction u =
      tail_weight(+[](double j) { return 1.0 + std::exp(-j); }, 1.0);
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::multiplication, u, mu);

  CHECK(n_epsilon_set(prof, mu, 1.05, Quantifier::exists).tail == TailVerdict::finite);
  CHECK(n_epsilon_set(prof, mu, 0.5, Quantifier::exists).tail == TailVerdict::infinite);
  CHECK(n_epsilon_set(prof, mu, 1.0, Quantifier::exists).tail == TailVerdict::unknown);
}

TEST_CASE("threshold set measures the nonatomic part") {
  const MeasureSpace mu = MeasureSpace::make(Interval{0.0, 1.0, 256}, {}, std::nullopt);
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  MeasurableFunction u;
  u.on_interval = [](double t) { return t < 0.5 ? 2.0 : 0.25; };
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::multiplication, u, mu);
  const NEpsilonSet s = n_epsilon_set(prof, mu, 1.0, Quantifier::exists);
  CHECK(s.nonatomic_measure == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("essential norm bracket for a weight tending to one") {
  const MeasureSpace mu = counting();
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const MeasurableFunction u =
      tail_weight(+[](double j) { return 1.0 + 1.0 / j; }, 1.0);
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::multiplication, u, mu);
  const EssentialNormBounds b = essential_norm_bounds(prof, phi, mu);
  CHECK(b.beta_exists == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(b.beta_forall == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(b.beta_forall <= b.beta_exists + 1e-12);
  CHECK(b.phi1_delta2);
  // Counting weights neither vanish nor spread, so the lower-bound hypothesis
  // stays unestablished.
  CHECK_FALSE(b.atom_hypothesis);
  bool noted = false;
  for (const auto& n : b.notes)
    if (n.find("not established") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("essential norm vanishes for a decaying weight") {
  const MeasureSpace mu = counting();
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const MeasurableFunction u =
      tail_weight(+[](double j) { return 1.0 / (j * j); }, 0.0);
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::multiplication, u, mu);
  const EssentialNormBounds b = essential_norm_bounds(prof, phi, mu);
  CHECK(b.beta_exists <= 1e-9);
  CHECK(b.beta_forall <= 1e-9);
}

TEST_CASE("certificate finds the first ladder rung above a constant weight") {
  const MeasureSpace mu = counting();
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const EpsilonProfile prof = epsilon_profile(
      phi, phi, OperatorMode::multiplication, constant_fn(mu, 3.0), mu);
  const BoundednessCertificate c = boundedness_certificate(phi, phi, prof, mu);
  CHECK(c.status == BoundStatus::bounded_with_certificate);
  CHECK(c.M == doctest::Approx(4.0));
  CHECK(c.g_norm <= 1e-9);
  CHECK(c.norm_bound == doctest::Approx(4.0).epsilon(1e-9));
  CHECK_FALSE(c.witness.has_value());
  CHECK_FALSE(c.notes.empty());
}

TEST_CASE("certificate proves the identity bounded on the interval") {
  const MeasureSpace mu = MeasureSpace::make(Interval{0.0, 1.0, 256}, {}, std::nullopt);
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const EpsilonProfile prof = epsilon_profile(
      phi, phi, OperatorMode::multiplication, constant_fn(mu, 1.0), mu);
  const BoundednessCertificate c = boundedness_certificate(phi, phi, prof, mu);
  CHECK(c.status == BoundStatus::bounded_with_certificate);
  CHECK(c.M == doctest::Approx(1.0));
  CHECK(c.norm_bound == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("certificate rejects an unbounded weight with a witness") {
  const MeasureSpace mu = counting();
  const YoungFunction p3 = YoungFunction::power(3.0, 1.0 / 3.0);
  const YoungFunction p2 = YoungFunction::power(2.0, 0.5);
  const MeasurableFunction u =
      tail_weight(+[](double j) { return j * j / (j + 1.0); }, kInf);
  const EpsilonProfile prof =
      epsilon_profile(p3, p2, OperatorMode::multiplication, u, mu);
  const BoundednessCertificate c = boundedness_certificate(p3, p2, prof, mu);
  CHECK(c.status == BoundStatus::unbounded_with_witness);
  REQUIRE(c.witness.has_value());
  CHECK_FALSE(c.notes.empty());
}

TEST_CASE("verdict: nonzero weight on the nonatomic part is noncompact") {
  const MeasureSpace mu = MeasureSpace::make(Interval{0.0, 1.0, 512}, {}, std::nullopt);
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const EpsilonProfile prof = epsilon_profile(
      phi, phi, OperatorMode::multiplication, constant_fn(mu, 1.0), mu);
  const EssentialNormBounds b = essential_norm_bounds(prof, phi, mu);
  const CompactnessVerdict v = compactness_verdict(prof, b, mu);
  CHECK(v.verdict == Verdict::noncompact);
  REQUIRE_FALSE(v.rules.empty());
  CHECK(v.rules.front() == "Cor 3.4");
  CHECK_FALSE(v.compact_sufficient);
  CHECK_FALSE(v.compact_necessary);
}

TEST_CASE("verdict: finite atom lists are compact with the beta equivalence") {
  const MeasureSpace mu =
      MeasureSpace::make(std::nullopt, {1.0, 1.0, 1.0, 1.0, 1.0}, std::nullopt);
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  MeasurableFunction u;
  u.atom_values = {5.0, 4.0, 3.0, 2.0, 1.0};
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::multiplication, u, mu);
  const EssentialNormBounds b = essential_norm_bounds(prof, phi, mu);
  CHECK(b.beta_exists == 0.0);
  CHECK(b.atom_hypothesis);
  const CompactnessVerdict v = compactness_verdict(prof, b, mu);
  CHECK(v.verdict == Verdict::compact);
  REQUIRE(v.rules.size() == 2);
  CHECK(v.rules[0] == "Thm 3.3");
  CHECK(v.rules[1] == "Cor 4.4");
  CHECK(v.compact_sufficient);
  CHECK(v.compact_necessary);
}

TEST_CASE("verdict: positive beta without the atom hypothesis stays unknown") {
  const MeasureSpace mu = counting();
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const MeasurableFunction u =
      tail_weight(+[](double j) { return 1.0 + 1.0 / j; }, 1.0);
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::multiplication, u, mu);
  const EssentialNormBounds b = essential_norm_bounds(prof, phi, mu);
  const CompactnessVerdict v = compactness_verdict(prof, b, mu);
  CHECK(v.verdict == Verdict::unknown);
  CHECK_FALSE(v.compact_sufficient);
  CHECK_FALSE(v.compact_necessary);
  REQUIRE_FALSE(v.reasons.empty());
  CHECK(v.reasons.front().find("consult the oracle evidence") != std::string::npos);
}

TEST_CASE("verdict: composition over vanishing weights is noncompact") {
  const MeasureSpace mu = summable_tail();
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  Transformation t;
  t.tail_map = [](double j) { return std::ceil(j / 2.0); };
  t.surjective = true;
  const RadonNikodym rn = radon_nikodym(t, mu);
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::composition, rn.h, mu);
  const EssentialNormBounds b = essential_norm_bounds(prof, phi, mu);
  CHECK(b.atom_hypothesis);
  // h(m) = m^2 (1/(2m-1)^2 + 1/(2m)^2) -> 1/2, so beta = sqrt(1/2).
  CHECK(b.beta_forall == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));
  const CompactnessVerdict v = compactness_verdict(prof, b, mu);
  CHECK(v.verdict == Verdict::noncompact);
  REQUIRE(v.rules.size() == 2);
  CHECK(v.rules[0] == "Thm 3.1 (necessity)");
  CHECK(v.rules[1] == "Thm 4.1(b)");
}

TEST_CASE("verdict: decaying multiplier over infinite mass is compact") {
  const MeasureSpace mu = counting();
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const MeasurableFunction u =
      tail_weight(+[](double j) { return 1.0 / (j * j); }, 0.0);
  const EpsilonProfile prof =
      epsilon_profile(phi, phi, OperatorMode::multiplication, u, mu);
  const EssentialNormBounds b = essential_norm_bounds(prof, phi, mu);
  const CompactnessVerdict v = compactness_verdict(prof, b, mu);
  CHECK(v.verdict == Verdict::compact);
  // Infinite total mass: the equivalence corollary must not be cited.
  REQUIRE(v.rules.size() == 1);
  CHECK(v.rules[0] == "Thm 3.3");
}
