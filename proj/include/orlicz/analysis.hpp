// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlicz/measure.hpp"
#include "orlicz/operators.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class OperatorMode { multiplication, composition };
enum class Quantifier { exists, forall };

struct CriticalEpsilonOptions {
  double alpha_lo = 1e-8;
  double alpha_hi = 1e8;
  int per_decade = 16;
  // A sup (resp. inf) still changing by this factor over the last two octaves
  // of the grid is declared +inf (resp. 0).
  double growth_factor = 1.25;
  int golden_iters = 60;
  double overflow_cut = 1e300;
};

// The threshold scale of the operator at a point of weight w:
//   eps(alpha) = phi1^{-1}(phi2(w*alpha))/alpha        (multiplication, w = |u(x)|)
//   eps(alpha) = phi1^{-1}(w*phi2(alpha))/alpha        (composition, w = h(x))
// returning sup over alpha > 0 (exists) or inf (forall), with grid +
// golden-section refinement and edge-divergence detection.
double critical_epsilon(const YoungFunction& phi1, const YoungFunction& phi2,
                        OperatorMode mode, double w, Quantifier q,
                        const CriticalEpsilonOptions& opt = {});

// eps* evaluated across the whole space, both quantifiers. Interval values
// are precomputed on a sample grid (kept for measure counting); atom and tail
// channels evaluate lazily through the same routine.
struct EpsilonProfile {
  OperatorMode mode{};
  MeasurableFunction weight;       // |u| or h
  MeasurableFunction eps_exists;
  MeasurableFunction eps_forall;
  std::vector<double> interval_points;
  std::vector<double> interval_eps_exists;
  std::vector<double> interval_eps_forall;
  CriticalEpsilonOptions alpha_grid;

  const MeasurableFunction& of(Quantifier q) const {
    return q == Quantifier::exists ? eps_exists : eps_forall;
  }
};

EpsilonProfile epsilon_profile(const YoungFunction& phi1, const YoungFunction& phi2,
                               OperatorMode mode, const MeasurableFunction& weight,
                               const MeasureSpace& mu, int max_interval_samples = 1024,
                               CriticalEpsilonOptions opt = {});

enum class TailVerdict { empty, finite, infinite, unknown };

struct NEpsilonSet {
  double eps = 0.0;
  Quantifier q = Quantifier::exists;
  std::vector<long> atoms;      // explicit ids with eps*(j) > eps
  TailVerdict tail = TailVerdict::empty;
  double tail_limsup_value = 0.0;
  double nonatomic_measure = 0.0;
};

// N_eps = {x : eps*(x) > eps}: explicit members, a tail verdict from the
// limsup (band-tolerant), and the Lebesgue mass of the interval part.
NEpsilonSet n_epsilon_set(const EpsilonProfile& prof, const MeasureSpace& mu,
                          double eps, Quantifier q, double band = 1e-6);

struct EssentialNormBounds {
  double beta_forall = 0.0;
  double beta_exists = 0.0;
  bool beta_forall_declared = false;  // tail contribution came from a declared limit
  bool beta_exists_declared = false;
  bool phi1_delta2 = false;
  bool atom_hypothesis = false;  // tail weights -> 0, or diverging range (heuristic)
  std::vector<std::string> notes;
};

// beta = max(ess-sup of eps* over the interval, tail limsup of eps* over the
// atoms); explicit atoms never raise beta. The pair ([beta_forall,
// beta_exists]) brackets the essential norm when the lower-bound hypotheses
// hold; notes record their probed status.
EssentialNormBounds essential_norm_bounds(const EpsilonProfile& prof,
                                          const YoungFunction& phi1,
                                          const MeasureSpace& mu);

enum class BoundStatus { bounded_with_certificate, unbounded_with_witness, inconclusive };

struct BoundednessCertificate {
  BoundStatus status = BoundStatus::inconclusive;
  double M = 0.0;
  double g_norm = 0.0;             // L1 norm of the slack g
  double M_prime = 1.0;            // 1 + g_norm
  double norm_bound = 0.0;         // M * M_prime, a bound on the operator norm
  MeasurableFunction g;            // when bounded
  struct Witness {
    std::string channel;  // "atom", "tail", or "interval"
    double at = 0.0;      // atom id or interval point
    double alpha = 0.0;   // scalar where the gap blows up
  };
  std::optional<Witness> witness;  // when unbounded
  std::vector<std::string> notes;
};

struct CertificateOptions {
  int ladder_lo = -20, ladder_hi = 40;  // M = 2^k
  CriticalEpsilonOptions sup_grid{};
  IntegrateOptions integrate{};
  int interval_probes = 129;
  long tail_probe_span = 1L << 17;
};

// Searches the ladder M = 2^k for the pointwise bound
//   phi2(w(x) v) <= phi1(M v) + g_M(x)   (composition: w phi2(v) <= phi1(Mv) + g)
// with g_M the positive part of the sup gap. Bounded: the smallest ladder M
// whose slack integrates finitely. Unbounded: every M fails with divergence
// evidence (a pointwise blow-up at a probe, or a divergent slack integral).
BoundednessCertificate boundedness_certificate(const YoungFunction& phi1,
                                               const YoungFunction& phi2,
                                               const EpsilonProfile& prof,
                                               const MeasureSpace& mu,
                                               CertificateOptions opt = {});

enum class Verdict { compact, noncompact, unknown };

struct CompactnessVerdict {
  Verdict verdict = Verdict::unknown;
  std::vector<std::string> rules;    // theorem/corollary labels that fired
  std::vector<std::string> reasons;  // prose, one per rule
  bool compact_sufficient = false;   // the exists-criterion certifies compactness
  bool compact_necessary = false;    // the forall-criterion fails to forbid it
};

struct VerdictOptions {
  double zero_tol = 1e-9;
  double pos_tol = 1e-9;
  std::vector<double> eps_ladder{1e-3, 1e-2, 1e-1, 1.0};
};

// Decision ladder: (i) nonzero weight on the nonatomic part -> noncompact;
// (ii) beta_exists = 0 with all N_eps tails finite -> compact; (iii)
// beta_forall > 0 under the necessity hypotheses -> noncompact; (iv) unknown.
CompactnessVerdict compactness_verdict(const EpsilonProfile& prof,
                                       const EssentialNormBounds& betas,
                                       const MeasureSpace& mu,
                                       VerdictOptions opt = {});

}  // namespace orlicz
