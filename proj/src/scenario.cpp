// SPDX-License-Identifier: Apache-2.0
#include "orlicz/scenario.hpp"

#include <cmath>
#include <fstream>
#include <utility>

#include "orlicz/expr.hpp"

namespace orlicz {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw config_error("scenario: " + where + ": " + what);
}

double number_or_inf(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    fail(where, "expected a number or \"inf\"");
  }
  if (!v.is_number()) fail(where, "expected a number or \"inf\"");
  return v.get<double>();
}

Expression expr_field(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected an expression string");
  try {
    return Expression::parse(v.get<std::string>());
  } catch (const config_error& e) {
    fail(where, e.what());
  }
}

TailGrowth growth_from_string(const std::string& s, const std::string& where) {
  if (s == "constant") return TailGrowth::constant;
  if (s == "linear") return TailGrowth::linear;
  if (s == "geometric") return TailGrowth::geometric;
  fail(where, "growth must be constant, linear, or geometric");
}

}  // namespace

YoungFunction young_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    fail("phi", "expected an object with a \"kind\" field");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "power") {
    return YoungFunction::power(j.at("p").get<double>(),
                                j.value("c", 1.0));
  }
  if (kind == "exp_minus_linear") return YoungFunction::exp_minus_linear();
  if (kind == "piecewise") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 2) fail("phi.points", "expected [x, y] pairs");
      pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return YoungFunction::piecewise_linear(
        std::move(pts), growth_from_string(j.value("growth", "linear"), "phi.growth"));
  }
  if (kind == "scaled") {
    return YoungFunction::scaled(young_from_json(j.at("of")), j.value("pre", 1.0),
                                 j.value("post", 1.0));
  }
  if (kind == "conjugate") return young_from_json(j.at("of")).conjugate();
  fail("phi.kind", "unknown kind \"" + kind + "\"");
}

MeasureSpace space_from_json(const json& j) {
  if (!j.is_object()) fail("space", "expected an object");
  std::optional<Interval> iv;
  if (j.contains("interval")) {
    const auto& i = j.at("interval");
    Interval v;
    v.lo = i.value("lo", 0.0);
    v.hi = i.value("hi", 1.0);
    v.grid = i.value("grid", 4096);
    iv = v;
  }
  std::vector<double> atoms;
  if (j.contains("atoms")) {
    for (const auto& a : j.at("atoms")) atoms.push_back(a.get<double>());
  }
  std::optional<TailRule> tail;
  if (j.contains("tail")) {
    const auto& t = j.at("tail");
    TailRule rule;
    Expression e = expr_field(t.at("weight"), "space.tail.weight");
    rule.weight = [e](double x) { return e(x); };
    if (t.contains("limit")) rule.weight_limit = number_or_inf(t.at("limit"), "space.tail.limit");
    tail = std::move(rule);
  }
  try {
    return MeasureSpace::make(iv, std::move(atoms), std::move(tail));
  } catch (const config_error& e) {
    fail("space", e.what());
  }
}

MeasurableFunction function_from_expression(const std::string& expr,
                                            const MeasureSpace& mu) {
  Expression e;
  try {
    e = Expression::parse(expr);
  } catch (const config_error& err) {
    fail("function", err.what());
  }
  MeasurableFunction f;
  if (mu.has_interval()) f.on_interval = [e](double t) { return e(t); };
  const long n = mu.explicit_atoms();
  f.atom_values.reserve(static_cast<std::size_t>(n));
  for (long j = 1; j <= n; ++j) f.atom_values.push_back(e(static_cast<double>(j)));
  if (mu.has_tail()) f.on_tail = [e](double j) { return e(j); };
  return f;
}

MeasurableFunction function_from_json(const json& j, const MeasureSpace& mu) {
  if (j.is_string()) return function_from_expression(j.get<std::string>(), mu);
  if (j.is_number()) return constant_fn(mu, j.get<double>());
  if (!j.is_object()) fail("function", "expected an expression, number, or object");

  MeasurableFunction f;
  if (j.contains("expr")) f = function_from_expression(j.at("expr").get<std::string>(), mu);

  if (j.contains("interval")) {
    if (!mu.has_interval()) fail("function.interval", "space has no interval part");
    Expression e = expr_field(j.at("interval"), "function.interval");
    f.on_interval = [e](double t) { return e(t); };
  }
  const long n = mu.explicit_atoms();
  if (j.contains("atoms")) {
    const auto& a = j.at("atoms");
    f.atom_values.clear();
    if (a.is_string()) {
      Expression e = expr_field(a, "function.atoms");
      for (long i = 1; i <= n; ++i) f.atom_values.push_back(e(static_cast<double>(i)));
    } else if (a.is_array()) {
      for (const auto& v : a) f.atom_values.push_back(v.get<double>());
      if (static_cast<long>(f.atom_values.size()) != n)
        fail("function.atoms", "length must match the explicit atom count");
    } else {
      fail("function.atoms", "expected an array or expression string");
    }
  }
  if (j.contains("tail")) {
    if (!mu.has_tail()) fail("function.tail", "space has no tail part");
    Expression e = expr_field(j.at("tail"), "function.tail");
    f.on_tail = [e](double t) { return e(t); };
  }
  if (j.contains("tail_limit"))
    f.tail_limit = number_or_inf(j.at("tail_limit"), "function.tail_limit");
  if (j.contains("min_tail_probe")) f.min_tail_probe = j.at("min_tail_probe").get<long>();

  if (mu.has_interval() && !f.on_interval)
    fail("function", "missing interval channel for a space with an interval part");
  if (static_cast<long>(f.atom_values.size()) != n)
    fail("function", "missing atom values for the explicit atoms");
  if (mu.has_tail() && !f.on_tail)
    fail("function", "missing tail channel for a space with an atom tail");
  return f;
}

namespace {

OperatorVariant operator_from_json(const json& j, const MeasureSpace& mu,
                                   OperatorMode& mode) {
  if (!j.is_object() || !j.contains("op"))
    fail("operator", "expected an object with an \"op\" field");
  const auto op = j.at("op").get<std::string>();
  if (op == "mult") {
    mode = OperatorMode::multiplication;
    return MultiplicationOp{Multiplier(function_from_json(j.at("u"), mu))};
  }
  if (op != "comp") fail("operator.op", "must be \"mult\" or \"comp\"");
  mode = OperatorMode::composition;

  Transformation t;
  if (j.contains("atom_map")) {
    for (const auto& v : j.at("atom_map")) t.atom_map.push_back(v.get<long>());
  }
  if (static_cast<long>(t.atom_map.size()) != mu.explicit_atoms())
    fail("operator.atom_map", "length must match the explicit atom count");
  if (mu.has_tail()) {
    if (!j.contains("tail_map"))
      fail("operator.tail_map", "required for a space with an atom tail");
    Expression e = expr_field(j.at("tail_map"), "operator.tail_map");
    t.tail_map = [e](double x) { return e(x); };
  }
  if (mu.has_interval()) {
    if (!j.contains("branches"))
      fail("operator.branches", "required for a space with an interval part");
    for (const auto& b : j.at("branches")) {
      IntervalBranch br;
      br.lo = b.at("lo").get<double>();
      br.hi = b.at("hi").get<double>();
      Expression fwd = expr_field(b.at("map"), "operator.branches.map");
      Expression der = expr_field(b.at("derivative"), "operator.branches.derivative");
      br.forward = [fwd](double t_) { return fwd(t_); };
      br.derivative = [der](double t_) { return der(t_); };
      t.branches.push_back(std::move(br));
    }
  }
  t.surjective = j.value("surjective", false);
  if (j.contains("probe_cap")) t.probe_cap = j.at("probe_cap").get<long>();

  RadonNikodym rn;
  if (j.contains("h")) {
    rn = declare_radon_nikodym(t, mu, function_from_json(j.at("h"), mu));
  } else {
    rn = radon_nikodym(t, mu);
  }
  return CompositionOp{std::move(t), std::move(rn)};
}

AnalysisSettings settings_from_json(const json& j) {
  AnalysisSettings s;
  if (j.is_null()) return s;
  if (!j.is_object()) fail("analysis", "expected an object");
  s.seed = j.value("seed", static_cast<std::uint64_t>(1));
  s.trunc = j.value("trunc", 64L);
  s.samples = j.value("samples", 100);
  if (j.contains("keep"))
    for (const auto& k : j.at("keep")) s.keep.push_back(k.get<long>());
  s.witness_count = j.value("witness_count", 8L);
  if (j.contains("witness_atoms"))
    for (const auto& a : j.at("witness_atoms")) s.witness_atoms.push_back(a.get<long>());
  s.interval_samples = j.value("interval_samples", 1024);
  return s;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  try {
    Scenario sc;
    sc.name = j.value("name", "unnamed");
    sc.phi1 = young_from_json(j.at("phi1"));
    sc.phi2 = young_from_json(j.at("phi2"));
    sc.space = space_from_json(j.at("space"));
    sc.op = operator_from_json(j.at("operator"), sc.space, sc.mode);
    sc.settings = settings_from_json(j.contains("analysis") ? j.at("analysis") : json());
    if (j.contains("comment")) {
      const auto& c = j.at("comment");
      if (c.is_string()) {
        sc.comments.push_back(c.get<std::string>());
      } else if (c.is_array()) {
        for (const auto& line : c) sc.comments.push_back(line.get<std::string>());
      }
    }
    return sc;
  } catch (const json::exception& e) {
    fail("json", e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("scenario: cannot open " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);  // allow // comments in configs
  } catch (const json::exception& e) {
    throw config_error("scenario: " + path + ": " + e.what());
  }
  return scenario_from_json(j);
}

ordered_json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

namespace {

const char* bound_status_name(BoundStatus s) {
  switch (s) {
    case BoundStatus::bounded_with_certificate: return "bounded_with_certificate";
    case BoundStatus::unbounded_with_witness: return "unbounded_with_witness";
    default: return "inconclusive";
  }
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::compact: return "compact";
    case Verdict::noncompact: return "noncompact";
    default: return "unknown";
  }
}

}  // namespace

ordered_json make_report(const Scenario& sc) {
  const MeasurableFunction& w = operator_weight(sc.op);
  const EpsilonProfile prof = epsilon_profile(sc.phi1, sc.phi2, sc.mode, w, sc.space,
                                              sc.settings.interval_samples);
  const EssentialNormBounds betas = essential_norm_bounds(prof, sc.phi1, sc.space);
  const BoundednessCertificate cert =
      boundedness_certificate(sc.phi1, sc.phi2, prof, sc.space);
  const CompactnessVerdict verdict = compactness_verdict(prof, betas, sc.space);

  ordered_json r;
  r["schema"] = 1;
  r["scenario"] = sc.name;

  ordered_json b;
  b["status"] = bound_status_name(cert.status);
  if (cert.status == BoundStatus::bounded_with_certificate) {
    b["M"] = json_number(cert.M);
    b["g_norm"] = json_number(cert.g_norm);
    b["M_prime"] = json_number(cert.M_prime);
    b["norm_bound"] = json_number(cert.norm_bound);
  }
  if (cert.witness) {
    b["witness"] = ordered_json{{"channel", cert.witness->channel},
                                {"at", json_number(cert.witness->at)},
                                {"alpha", json_number(cert.witness->alpha)}};
  }
  b["notes"] = cert.notes;
  r["bounded"] = std::move(b);

  r["compact"] = verdict_name(verdict.verdict);
  r["rules"] = verdict.rules;
  r["reasons"] = verdict.reasons;
  r["compact_sufficient"] = verdict.compact_sufficient;
  r["compact_necessary"] = verdict.compact_necessary;
  r["beta"] = ordered_json{{"forall", json_number(betas.beta_forall)},
                           {"exists", json_number(betas.beta_exists)},
                           {"forall_declared", betas.beta_forall_declared},
                           {"exists_declared", betas.beta_exists_declared}};

  ordered_json o;
  o["label"] = "empirical lower bounds only";
  const auto& st = sc.settings;
  if (!sc.space.has_atoms()) {
    o["note"] = "space has no atomic part; the finite-dimensional search covers atoms only";
  } else {
    try {
      const NormEstimate est = operator_norm_estimate(sc.phi1, sc.phi2, sc.op, sc.space,
                                                      st.trunc, st.samples, st.seed);
      ordered_json sup = ordered_json::array();
      for (std::size_t i = 0; i < est.support.size(); ++i)
        sup.push_back(ordered_json::array({est.support[i], json_number(est.values[i])}));
      o["norm"] = ordered_json{{"lower", json_number(est.lower)}, {"maximizer", sup}};
    } catch (const numeric_error& e) {
      o["norm"] = ordered_json{{"error", e.what()}};
    }
    try {
      std::vector<long> ladder = st.keep;
      if (ladder.empty()) ladder = {std::max<long>(1, st.trunc / 2), st.trunc};
      ordered_json tr = ordered_json::array();
      for (long k : ladder) {
        const double d =
            truncation_distance(sc.phi1, sc.phi2, sc.op, sc.space, k, st.samples, st.seed);
        tr.push_back(ordered_json::array({k, json_number(d)}));
      }
      o["truncation"] = std::move(tr);
    } catch (const numeric_error& e) {
      o["truncation"] = ordered_json{{"error", e.what()}};
    }
    try {
      WitnessRegion region;
      region.atom_ids = st.witness_atoms;
      long count = st.witness_count;
      if (region.atom_ids.empty()) {
        long avail = sc.space.has_tail() ? count : sc.space.explicit_atoms();
        count = std::max<long>(1, std::min(count, avail));
        for (long j = 1; j <= count; ++j) region.atom_ids.push_back(j);
      } else {
        count = std::min<long>(count, static_cast<long>(region.atom_ids.size()));
      }
      const WitnessResult wr =
          witness_separation(sc.phi1, sc.phi2, sc.op, sc.space, region, count);
      o["witness"] = ordered_json{{"atoms", region.atom_ids},
                                  {"pieces", wr.pieces},
                                  {"min_pairwise", json_number(wr.min_pairwise)},
                                  {"min_image_norm", json_number(wr.min_image_norm)}};
    } catch (const std::exception& e) {
      o["witness"] = ordered_json{{"error", e.what()}};
    }
  }
  r["oracle"] = std::move(o);

  ordered_json notes = ordered_json::array();
  for (const auto& n : betas.notes) notes.push_back(n);
  for (const auto& c : sc.comments) notes.push_back(c);
  r["notes"] = std::move(notes);
  return r;
}

}  // namespace orlicz
