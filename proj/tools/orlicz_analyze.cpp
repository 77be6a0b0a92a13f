// SPDX-License-Identifier: Apache-2.0
//
// Batch front end: load a scenario config, run the requested analysis, and
// print a summary (or write the JSON report). Exit codes: 0 success,
// 2 configuration error, 3 numeric non-convergence.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "orlicz/scenario.hpp"

namespace {

using namespace orlicz;

int run_validate(Scenario& sc) {
  bool ok = true;
  for (const auto& [label, phi] :
       {std::pair<const char*, const YoungFunction*>{"phi1", &sc.phi1},
        std::pair<const char*, const YoungFunction*>{"phi2", &sc.phi2}}) {
    for (const auto& d : phi->validate()) {
      if (d.pass) continue;
      ok = false;
      std::cout << label << ": check \"" << d.check << "\" failed near x = " << d.at_x
                << ": " << d.detail << "\n";
    }
  }
  if (!ok) return 2;
  std::cout << "scenario \"" << sc.name << "\" validates\n"
            << "  phi1: " << sc.phi1.describe() << "\n"
            << "  phi2: " << sc.phi2.describe() << "\n";
  return 0;
}

int run_norm(const Scenario& sc, const std::string& expr) {
  const MeasurableFunction f = function_from_expression(expr, sc.space);
  std::cout << "N_phi1 = " << luxemburg_norm(sc.phi1, f, sc.space) << "\n"
            << "N_phi2 = " << luxemburg_norm(sc.phi2, f, sc.space) << "\n";
  return 0;
}

EpsilonProfile profile_of(const Scenario& sc) {
  return epsilon_profile(sc.phi1, sc.phi2, sc.mode, operator_weight(sc.op), sc.space,
                         sc.settings.interval_samples);
}

int run_bounded(const Scenario& sc) {
  const EpsilonProfile prof = profile_of(sc);
  const BoundednessCertificate cert =
      boundedness_certificate(sc.phi1, sc.phi2, prof, sc.space);
  switch (cert.status) {
    case BoundStatus::bounded_with_certificate:
      std::cout << "bounded: M = " << cert.M << ", ||g||_1 = " << cert.g_norm
                << ", norm bound M*M' = " << cert.norm_bound << "\n";
      break;
    case BoundStatus::unbounded_with_witness:
      std::cout << "unbounded: divergence at " << cert.witness->channel << " "
                << cert.witness->at << " (alpha = " << cert.witness->alpha << ")\n";
      break;
    default:
      std::cout << "inconclusive\n";
  }
  for (const auto& n : cert.notes) std::cout << "  note: " << n << "\n";
  return 0;
}

int run_essnorm(const Scenario& sc) {
  const EpsilonProfile prof = profile_of(sc);
  const EssentialNormBounds betas = essential_norm_bounds(prof, sc.phi1, sc.space);
  std::cout << "beta_forall = " << betas.beta_forall
            << (betas.beta_forall_declared ? "" : " (probed)") << "\n"
            << "beta_exists = " << betas.beta_exists
            << (betas.beta_exists_declared ? "" : " (probed)") << "\n";
  for (const auto& n : betas.notes) std::cout << "  note: " << n << "\n";
  return 0;
}

int run_compact(const Scenario& sc) {
  const EpsilonProfile prof = profile_of(sc);
  const EssentialNormBounds betas = essential_norm_bounds(prof, sc.phi1, sc.space);
  const CompactnessVerdict v = compactness_verdict(prof, betas, sc.space);
  std::cout << "verdict: "
            << (v.verdict == Verdict::compact
                    ? "compact"
                    : v.verdict == Verdict::noncompact ? "noncompact" : "unknown")
            << "\n";
  std::cout << "rules:";
  for (const auto& rl : v.rules) std::cout << " [" << rl << "]";
  std::cout << "\n";
  for (const auto& rs : v.reasons) std::cout << "  " << rs << "\n";
  std::cout << "beta sandwich: [" << betas.beta_forall << ", " << betas.beta_exists
            << "]\n";
  return 0;
}

int run_oracle(const Scenario& sc, long keep_override, bool keep_given) {
  const auto& st = sc.settings;
  const NormEstimate est = operator_norm_estimate(sc.phi1, sc.phi2, sc.op, sc.space,
                                                  st.trunc, st.samples, st.seed);
  std::cout << "norm lower bound (empirical): " << est.lower << "\n";
  std::cout << "maximizer support:";
  for (std::size_t i = 0; i < est.support.size(); ++i)
    std::cout << " (" << est.support[i] << ", " << est.values[i] << ")";
  std::cout << "\n";

  std::vector<long> ladder = st.keep;
  if (keep_given) ladder = {keep_override};
  if (ladder.empty()) ladder = {std::max<long>(1, st.trunc / 2), st.trunc};
  for (long k : ladder)
    std::cout << "truncation distance keep=" << k << ": "
              << truncation_distance(sc.phi1, sc.phi2, sc.op, sc.space, k, st.samples,
                                     st.seed)
              << "\n";

  WitnessRegion region;
  region.atom_ids = st.witness_atoms;
  long count = st.witness_count;
  if (region.atom_ids.empty() && sc.space.has_atoms()) {
    const long avail = sc.space.has_tail() ? count : sc.space.explicit_atoms();
    count = std::max<long>(1, std::min(count, avail));
    for (long j = 1; j <= count; ++j) region.atom_ids.push_back(j);
  } else if (!region.atom_ids.empty()) {
    count = std::min<long>(count, static_cast<long>(region.atom_ids.size()));
  }
  if (!region.atom_ids.empty() || region.interval) {
    const WitnessResult wr =
        witness_separation(sc.phi1, sc.phi2, sc.op, sc.space, region, count);
    std::cout << "witness separation over " << wr.pieces
              << " pieces: min pairwise = " << wr.min_pairwise
              << ", min image norm = " << wr.min_image_norm << "\n";
  }
  return 0;
}

int run_report(const Scenario& sc, const std::string& out_path) {
  const nlohmann::ordered_json r = make_report(sc);
  const std::string body = r.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw config_error("cannot open output file " + out_path);
    out << body;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz-space multiplication/composition operator analyzer"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, function_expr;
  std::uint64_t seed = 1;
  long trunc = 64, keep = 0, witness_count = 8;
  int samples = 100;

  CLI::Option *seed_opt = nullptr, *trunc_opt = nullptr, *samples_opt = nullptr,
              *keep_opt = nullptr, *wc_opt = nullptr;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    s->add_option("--out", out_path, "write output to this file");
    seed_opt = s->add_option("--seed", seed, "override the scenario RNG seed");
    trunc_opt = s->add_option("--trunc", trunc, "override the oracle truncation");
    samples_opt = s->add_option("--samples", samples, "override the oracle samples");
  };

  CLI::App* validate = app.add_subcommand("validate", "check all scenario invariants");
  add_common(validate);
  CLI::App* norm = app.add_subcommand("norm", "Luxemburg norms of a function");
  add_common(norm);
  norm->add_option("--function", function_expr, "expression to measure")->required();
  CLI::App* bounded = app.add_subcommand("bounded", "boundedness certificate");
  add_common(bounded);
  CLI::App* compact = app.add_subcommand("compact", "compactness verdict");
  add_common(compact);
  CLI::App* essnorm = app.add_subcommand("essnorm", "essential norm sandwich");
  add_common(essnorm);
  CLI::App* oracle = app.add_subcommand("oracle", "finite-dimensional estimates");
  add_common(oracle);
  keep_opt = oracle->add_option("--keep", keep, "truncation cut for the distance");
  wc_opt = oracle->add_option("--witness-count", witness_count, "witness pieces");
  CLI::App* report = app.add_subcommand("report", "full JSON report");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Scenario sc = load_scenario(scenario_path);
    if (seed_opt && seed_opt->count()) sc.settings.seed = seed;
    if (trunc_opt && trunc_opt->count()) sc.settings.trunc = trunc;
    if (samples_opt && samples_opt->count()) sc.settings.samples = samples;
    if (wc_opt && wc_opt->count()) sc.settings.witness_count = witness_count;

    if (app.got_subcommand(validate)) return run_validate(sc);
    if (app.got_subcommand(norm)) return run_norm(sc, function_expr);
    if (app.got_subcommand(bounded)) return run_bounded(sc);
    if (app.got_subcommand(compact)) return run_compact(sc);
    if (app.got_subcommand(essnorm)) return run_essnorm(sc);
    if (app.got_subcommand(oracle))
      return run_oracle(sc, keep, keep_opt && keep_opt->count());
    if (app.got_subcommand(report)) return run_report(sc, out_path);
    return 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
