// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "orlicz/young.hpp"

using namespace orlicz;

namespace {
bool has_failing_check(const YoungFunction& phi, const std::string& name) {
  for (const auto& d : phi.validate())
    if (d.check == name && !d.pass) return true;
  return false;
}
bool all_checks_pass(const YoungFunction& phi) {
  for (const auto& d : phi.validate())
    if (!d.pass) return false;
  return true;
}
}  // namespace

TEST_CASE("power evaluation and constructor guards") {
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  CHECK(phi(0.0) == 0.0);
  CHECK(phi(2.0) == doctest::Approx(2.0));
  CHECK(phi(-2.0) == doctest::Approx(2.0));  // acts on the modulus
  CHECK(std::isinf(phi(kInf)));
  CHECK_THROWS_AS(YoungFunction::power(1.0, 1.0), config_error);
  CHECK_THROWS_AS(YoungFunction::power(2.0, 0.0), config_error);
  CHECK_THROWS_AS(YoungFunction::power(2.0, -1.0), config_error);
}

TEST_CASE("exponential-minus-linear evaluation") {
  const YoungFunction phi = YoungFunction::exp_minus_linear();
  CHECK(phi(0.0) == 0.0);
  // e - 2, from an independent high-precision evaluation
  CHECK(phi(1.0) == doctest::Approx(0.71828182845904524).epsilon(1e-12));
  CHECK(std::isinf(phi(kInf)));
}

TEST_CASE("inverse closed forms and frozen values") {
  const YoungFunction p2 = YoungFunction::power(2.0, 0.5);
  CHECK(p2.inverse(2.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(p2.inverse(0.0) == 0.0);
  CHECK(std::isinf(p2.inverse(kInf)));
  CHECK_THROWS_AS(p2.inverse(-1.0), numeric_error);

  // mpmath-frozen inverses of e^x - x - 1
  const YoungFunction e = YoungFunction::exp_minus_linear();
  CHECK(e.inverse(0.25) == doctest::Approx(0.63271475258259476).epsilon(1e-9));
  CHECK(e.inverse(1.0) == doctest::Approx(1.1461932206205826).epsilon(1e-9));
  CHECK(e.inverse(4.0) == doctest::Approx(1.9368474072202187).epsilon(1e-9));
  CHECK(e.inverse(e(0.7)) == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("numeric derivative") {
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);  // phi'(x) = x
  CHECK(phi.derivative(2.0) == doctest::Approx(2.0).epsilon(1e-4));
  const YoungFunction e = YoungFunction::exp_minus_linear();  // phi'(x) = e^x - 1
  CHECK(e.derivative(1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-4));
}

TEST_CASE("conjugate closed-form values") {
  // (x^3/3)* = (2/3) y^{3/2}
  const YoungFunction c3 = YoungFunction::power(3.0, 1.0 / 3.0).conjugate();
  CHECK(c3(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  // x^2/2 is self-conjugate
  const YoungFunction c2 = YoungFunction::power(2.0, 0.5).conjugate();
  CHECK(c2(3.0) == doctest::Approx(4.5).epsilon(1e-6));
  CHECK(c2(0.0) == 0.0);
}

TEST_CASE("biconjugation recovers the original") {
  const YoungFunction phi = YoungFunction::power(2.0, 0.5);
  const YoungFunction bi = phi.conjugate().conjugate();
  for (double x : {0.25, 1.0, 3.0, 10.0})
    CHECK(bi(x) == doctest::Approx(phi(x)).epsilon(1e-5));
}

TEST_CASE("Young inequality with near-equality along the gradient") {
  const YoungFunction phi = YoungFunction::exp_minus_linear();
  const YoungFunction psi = phi.conjugate();
  for (double x : {0.3, 0.8, 1.5}) {
    for (double y : {0.2, 1.0, 2.5}) CHECK(x * y <= phi(x) + psi(y) + 1e-9);
    const double y = std::exp(x) - 1.0;  // phi'(x)
    const double gap = phi(x) + psi(y) - x * y;
    CHECK(gap >= -1e-9);
    CHECK(gap <= 1e-4 * (1.0 + x * y));
  }
}

TEST_CASE("delta2 classification") {
  CHECK(YoungFunction::power(2.0, 0.5).delta2_index().satisfied);
  CHECK(YoungFunction::power(2.0, 0.5).delta2_index().sup_ratio ==
        doctest::Approx(4.0).epsilon(1e-6));
  CHECK(YoungFunction::power(3.0, 1.0 / 3.0).delta2_index().sup_ratio ==
        doctest::Approx(8.0).epsilon(1e-6));
  const Delta2Result d = YoungFunction::exp_minus_linear().delta2_index();
  CHECK(d.diverges);
  CHECK_FALSE(d.satisfied);
}

TEST_CASE("piecewise linear: evaluation and tail growth modes") {
  using P = std::vector<std::pair<double, double>>;
  const P pts = {{0.0, 0.0}, {1.0, 2.0}};
  const YoungFunction lin =
      YoungFunction::piecewise_linear(pts, TailGrowth::linear);
  CHECK(lin(0.5) == doctest::Approx(1.0));
  CHECK(lin(1.0) == doctest::Approx(2.0));
  // slope of tail step k is s*(k+1): y(1.5) = 2 + 0.5*4, y(2) = 6, y(3) = 12
  CHECK(lin(1.5) == doctest::Approx(4.0));
  CHECK(lin(2.0) == doctest::Approx(6.0));
  CHECK(lin(3.0) == doctest::Approx(12.0));

  const YoungFunction geo =
      YoungFunction::piecewise_linear(pts, TailGrowth::geometric);
  CHECK(geo(2.0) == doctest::Approx(6.0));   // step slopes 4, 8, ...
  CHECK(geo(3.0) == doctest::Approx(14.0));

  const YoungFunction con =
      YoungFunction::piecewise_linear(pts, TailGrowth::constant);
  CHECK(con(3.0) == doctest::Approx(6.0));   // straight-line continuation
}

TEST_CASE("piecewise constructor guards") {
  using P = std::vector<std::pair<double, double>>;
  const P one_point = {{0.0, 0.0}};
  const P bad_origin = {{0.5, 0.0}, {1.0, 1.0}};
  const P repeated_x = {{0.0, 0.0}, {1.0, 1.0}, {1.0, 2.0}};
  CHECK_THROWS_AS(YoungFunction::piecewise_linear(one_point, TailGrowth::linear),
                  config_error);
  CHECK_THROWS_AS(YoungFunction::piecewise_linear(bad_origin, TailGrowth::linear),
                  config_error);
  CHECK_THROWS_AS(YoungFunction::piecewise_linear(repeated_x, TailGrowth::linear),
                  config_error);
}

TEST_CASE("validate flags convexity violations but passes honest functions") {
  CHECK(all_checks_pass(YoungFunction::power(2.0, 0.5)));
  CHECK(all_checks_pass(YoungFunction::power(1.5, 2.0)));
  CHECK(all_checks_pass(YoungFunction::exp_minus_linear()));

  using P = std::vector<std::pair<double, double>>;
  // decreasing segment: constructible, but validation must fail it
  const YoungFunction bad = YoungFunction::piecewise_linear(
      P{{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}, TailGrowth::linear);
  CHECK((has_failing_check(bad, "nondecreasing") ||
         has_failing_check(bad, "midpoint_convex")));

  // concave kink: nondecreasing but not convex
  const YoungFunction kink = YoungFunction::piecewise_linear(
      P{{0.0, 0.0}, {1.0, 2.0}, {2.0, 2.5}}, TailGrowth::linear);
  CHECK(has_failing_check(kink, "midpoint_convex"));

  // linear tail growth is superlinear; constant tail growth is not
  const YoungFunction con = YoungFunction::piecewise_linear(
      P{{0.0, 0.0}, {1.0, 2.0}}, TailGrowth::constant);
  CHECK(has_failing_check(con, "superlinear"));
}

TEST_CASE("scaled wrapper") {
  const YoungFunction s = YoungFunction::scaled(YoungFunction::power(2.0, 0.5), 2.0, 3.0);
  CHECK(s(1.0) == doctest::Approx(6.0));  // 3 * (2x)^2 / 2 at x = 1
  CHECK(s.inverse(6.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("describe names the shape") {
  CHECK(YoungFunction::power(2.0, 0.5).describe().find("power") != std::string::npos);
}
