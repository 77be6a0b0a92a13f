// SPDX-License-Identifier: Apache-2.0
#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/numeric.hpp"

namespace orlicz {

namespace {

// Slope accumulated over m full extension segments plus remainder r, where the
// base slope is s, the segment width is w, and slopes follow the growth rule.
double tail_value(double y_end, double s, double w, double m_done, double r,
                  TailGrowth growth) {
  switch (growth) {
    case TailGrowth::constant:
      return y_end + s * (m_done * w + r);
    case TailGrowth::linear:
      // Segment m (1-based) has slope s*(m+1).
      return y_end + s * w * (m_done * (m_done + 3.0) / 2.0) +
             r * s * (m_done + 2.0);
    case TailGrowth::geometric:
      // Segment m has slope s*2^m.
      return y_end + s * w * (std::pow(2.0, m_done + 1.0) - 2.0) +
             r * s * std::pow(2.0, m_done + 1.0);
  }
  throw numeric_error("piecewise: corrupt growth tag");
}

}  // namespace

YoungFunction YoungFunction::power(double p, double c) {
  if (!(p > 1.0)) throw config_error("power Young function requires p > 1");
  if (!(c > 0.0)) throw config_error("power Young function requires c > 0");
  return YoungFunction(Kind{Power{p, c}});
}

YoungFunction YoungFunction::exp_minus_linear() {
  return YoungFunction(Kind{ExpMinusLinear{}});
}

YoungFunction YoungFunction::piecewise_linear(
    std::vector<std::pair<double, double>> points, TailGrowth growth) {
  if (points.size() < 2) throw config_error("piecewise: need at least two points");
  if (points.front().first != 0.0 || points.front().second != 0.0)
    throw config_error("piecewise: first point must be (0, 0)");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].first > points[i - 1].first))
      throw config_error("piecewise: x coordinates must strictly increase");
    if (!std::isfinite(points[i].second))
      throw config_error("piecewise: y coordinates must be finite");
  }
  // Decreasing or non-convex y lists are representable on purpose: validate()
  // reports them as diagnostics instead of refusing construction.
  return YoungFunction(Kind{Piecewise{std::move(points), growth}});
}

YoungFunction YoungFunction::scaled(const YoungFunction& inner, double pre,
                                    double post) {
  if (!(pre > 0.0) || !(post > 0.0))
    throw config_error("scaled: both factors must be positive");
  return YoungFunction(
      Kind{Scaled{std::make_shared<YoungFunction>(inner), pre, post}});
}

YoungFunction YoungFunction::conjugate() const {
  return YoungFunction(Kind{Conjugate{std::make_shared<YoungFunction>(*this)}});
}

double YoungFunction::operator()(double x) const { return eval_abs(std::abs(x)); }

double YoungFunction::eval_abs(double x) const {
  if (std::isnan(x)) throw numeric_error("young: NaN argument");
  if (std::isinf(x)) return kInf;
  if (const auto* k = std::get_if<Power>(&kind_)) {
    if (x == 0.0) return 0.0;
    return k->c * std::pow(x, k->p);
  }
  if (std::get_if<ExpMinusLinear>(&kind_)) {
    return std::expm1(x) - x;
  }
  if (const auto* k = std::get_if<Piecewise>(&kind_)) {
    const auto& pts = k->pts;
    if (x >= pts.back().first) {
      const auto& [xn, yn] = pts.back();
      const auto& [xp, yp] = pts[pts.size() - 2];
      const double s = (yn - yp) / (xn - xp);
      const double w = xn - xp;
      const double over = x - xn;
      const double m_done = std::floor(over / w);
      const double r = over - m_done * w;
      return tail_value(yn, s, w, m_done, r, k->growth);
    }
    auto it = std::upper_bound(pts.begin(), pts.end(), x,
                               [](double v, const auto& p) { return v < p.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }
  if (const auto* k = std::get_if<Scaled>(&kind_)) {
    return k->post * k->inner->eval_abs(k->pre * x);
  }
  const auto& k = std::get<Conjugate>(kind_);
  const YoungFunction& phi = *k.inner;
  const double y = x;
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return kInf;

  // Stationary point: phi'(x*) = y, found by bisection on the slope.
  double hi = 1.0, lo = 0.0;
  bool unbounded = false;
  while (phi.derivative(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e14) {
      unbounded = true;
      break;
    }
  }
  if (unbounded) return kInf;  // slope never reaches y: sup is infinite
  if (lo == 0.0) {
    lo = hi;
    while (lo > 1e-18 && phi.derivative(lo) > y) lo *= 0.5;
  }
  double cand = 0.0;
  if (phi.derivative(lo) <= y) {
    const double xs =
        bisect_monotone([&](double v) { return phi.derivative(v); }, y, lo, hi);
    const double g = xs * y - phi.eval_abs(xs);
    if (std::isfinite(g)) cand = std::max(cand, g);
  }

  // Safety net for kinked or numerically awkward inner functions: coarse
  // grid scan with local refinement whenever it beats the stationary value.
  const double gmax = std::max(4.0 * hi, 100.0);
  const auto grid = log_grid(1e-8, gmax, 4);
  double best = -kInf, best_x = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = phi.eval_abs(grid[i]);
    if (!std::isfinite(p)) break;
    const double g = grid[i] * y - p;
    if (g > best) {
      best = g;
      best_x = grid[i];
      best_i = i;
    }
  }
  if (best > cand + 1e-9 * (1.0 + std::abs(cand))) {
    const double a = best_i > 0 ? grid[best_i - 1] : best_x * 0.5;
    const double b = best_i + 1 < grid.size() ? grid[best_i + 1] : best_x * 2.0;
    const double xr = golden_max(
        [&](double v) {
          const double p = phi.eval_abs(v);
          return std::isfinite(p) ? v * y - p : -kInf;
        },
        a, b, 80);
    const double g = xr * y - phi.eval_abs(xr);
    cand = std::max({cand, best, g});
  }
  return std::max(0.0, cand);
}

double YoungFunction::derivative(double x) const {
  x = std::abs(x);
  const double h = std::max(1e-5 * x, 1e-10);
  const double fp = eval_abs(x + h);
  if (!std::isfinite(fp)) return kInf;
  if (x < h) return (fp - eval_abs(x)) / h;
  return (fp - eval_abs(x - h)) / (2.0 * h);
}

double YoungFunction::inverse(double y) const {
  if (std::isnan(y) || y < 0.0)
    throw numeric_error("young inverse: argument must be >= 0");
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return kInf;
  if (const auto* k = std::get_if<Power>(&kind_))
    return std::pow(y / k->c, 1.0 / k->p);
  if (const auto* k = std::get_if<Scaled>(&kind_))
    return k->inner->inverse(y / k->post) / k->pre;

  double hi = 1.0;
  while (eval_abs(hi) < y) {
    hi *= 2.0;
    if (hi > 1e300) throw numeric_error("young inverse: argument out of range");
  }
  double lo = hi * 0.5;
  while (lo > 1e-300 && eval_abs(lo) > y) lo *= 0.5;
  if (eval_abs(lo) > y) return 0.0;
  return bisect_monotone([&](double v) { return eval_abs(v); }, y, lo, hi);
}

Delta2Result YoungFunction::delta2_index(double x_lo, double x_hi) const {
  const auto [wlo, whi] = probe_window();
  if (x_lo <= 0.0) x_lo = wlo;
  if (x_hi <= 0.0) x_hi = whi;
  if (!(x_hi > x_lo)) throw numeric_error("delta2_index: bad window");

  Delta2Result r;
  const auto grid = log_grid(x_lo, x_hi, 16);
  std::vector<std::pair<double, double>> ratios;  // (x, ratio)
  for (double x : grid) {
    const double a = eval_abs(x), b = eval_abs(2.0 * x);
    if (!(a > 0.0) || !std::isfinite(a)) continue;
    if (!std::isfinite(b)) {
      r.diverges = true;
      r.sup_ratio = kInf;
      r.at_x = x;
      return r;
    }
    ratios.emplace_back(x, b / a);
  }
  if (ratios.empty()) throw numeric_error("delta2_index: no usable samples");
  for (const auto& [x, q] : ratios) {
    if (q > r.sup_ratio) {
      r.sup_ratio = q;
      r.at_x = x;
    }
  }
  // Growth test over the final two octaves of the usable range.
  const double edge = ratios.back().first;
  std::vector<double> tail;
  for (const auto& [x, q] : ratios)
    if (x >= edge / 4.0) tail.push_back(q);
  if (tail.size() >= 3) {
    bool rising = true;
    for (std::size_t i = 1; i < tail.size(); ++i)
      if (tail[i] < tail[i - 1] * (1.0 - 1e-12)) rising = false;
    if (rising && tail.back() >= 1.25 * tail.front()) {
      r.diverges = true;
      r.sup_ratio = kInf;
      r.at_x = edge;
    }
  }
  r.satisfied = !r.diverges;
  return r;
}

std::vector<YoungDiagnostic> YoungFunction::validate() const {
  std::vector<YoungDiagnostic> out;
  const auto [wlo, whi] = probe_window();
  const auto grid = log_grid(wlo, whi, 16);

  std::vector<std::pair<double, double>> vals;  // finite samples (x, phi(x))
  for (double x : grid) {
    const double v = eval_abs(x);
    if (std::isnan(v)) {
      out.push_back({"finite", false, x, "phi produced NaN"});
      return out;
    }
    if (std::isfinite(v)) vals.emplace_back(x, v);
  }

  {
    const double z = eval_abs(0.0);
    out.push_back({"zero_at_zero", z == 0.0, 0.0,
                   z == 0.0 ? "phi(0) = 0" : "phi(0) = " + std::to_string(z)});
  }
  {
    YoungDiagnostic d{"nondecreasing", true, 0.0, "monotone on the probe grid"};
    for (std::size_t i = 1; i < vals.size(); ++i) {
      if (vals[i].second < vals[i - 1].second * (1.0 - 1e-12) - 1e-300) {
        d = {"nondecreasing", false, vals[i].first, "phi decreases here"};
        break;
      }
    }
    out.push_back(d);
  }
  {
    YoungDiagnostic d{"midpoint_convex", true, 0.0, "convex on sampled pairs"};
    auto test_pair = [&](std::size_t i, std::size_t k) {
      const double a = vals[i].first, b = vals[k].first;
      const double mid = eval_abs(0.5 * (a + b));
      const double chord = 0.5 * (vals[i].second + vals[k].second);
      if (!std::isfinite(mid) || !std::isfinite(chord)) return true;
      return mid <= chord + 1e-9 * (1.0 + std::abs(chord));
    };
    for (std::size_t i = 0; i + 1 < vals.size() && d.pass; ++i) {
      if (!test_pair(i, i + 1)) d = {"midpoint_convex", false, vals[i].first, "chord dips below phi"};
      if (d.pass && i + 8 < vals.size() && !test_pair(i, i + 8))
        d = {"midpoint_convex", false, vals[i].first, "chord dips below phi"};
    }
    out.push_back(d);
  }
  {
    // phi(x)/x must climb, and keep climbing near the window edge; a merely
    // linear tail flattens out and fails the second part.
    YoungDiagnostic d{"superlinear", true, 0.0, "phi(x)/x grows"};
    std::vector<std::pair<double, double>> q;
    for (const auto& [x, v] : vals)
      if (x > 0.0) q.emplace_back(x, v / x);
    for (std::size_t i = 1; i < q.size(); ++i) {
      if (q[i].second < q[i - 1].second * (1.0 - 1e-9)) {
        d = {"superlinear", false, q[i].first, "phi(x)/x decreases here"};
        break;
      }
    }
    if (d.pass && q.size() >= 2) {
      const double edge = q.back().first;
      double inner = q.back().second;
      for (const auto& [x, r] : q)
        if (x >= edge / 4.0) {
          inner = r;
          break;
        }
      if (!(q.back().second > 1.05 * inner)) {
        d = {"superlinear", false, edge, "phi(x)/x levels off toward the window edge"};
      }
    }
    out.push_back(d);
  }
  return out;
}

std::pair<double, double> YoungFunction::probe_window() const {
  if (std::get_if<ExpMinusLinear>(&kind_)) return {1e-6, 50.0};
  if (const auto* k = std::get_if<Piecewise>(&kind_))
    return {1e-6, std::max(100.0, 10.0 * k->pts.back().first)};
  if (const auto* k = std::get_if<Scaled>(&kind_)) {
    const auto [lo, hi] = k->inner->probe_window();
    return {lo / k->pre, hi / k->pre};
  }
  if (std::get_if<Conjugate>(&kind_)) return {1e-6, 1e4};
  return {1e-6, 1e6};
}

std::string YoungFunction::describe() const {
  std::ostringstream os;
  if (const auto* k = std::get_if<Power>(&kind_)) {
    os << "power(p=" << k->p << ", c=" << k->c << ")";
  } else if (std::get_if<ExpMinusLinear>(&kind_)) {
    os << "exp_minus_linear";
  } else if (const auto* k = std::get_if<Piecewise>(&kind_)) {
    os << "piecewise(" << k->pts.size() << " points, ";
    switch (k->growth) {
      case TailGrowth::constant: os << "constant"; break;
      case TailGrowth::linear: os << "linear"; break;
      case TailGrowth::geometric: os << "geometric"; break;
    }
    os << " tail)";
  } else if (const auto* k = std::get_if<Scaled>(&kind_)) {
    os << "scaled(" << k->inner->describe() << ", pre=" << k->pre
       << ", post=" << k->post << ")";
  } else {
    os << "conjugate(" << std::get<Conjugate>(kind_).inner->describe() << ")";
  }
  return os.str();
}

}  // namespace orlicz
