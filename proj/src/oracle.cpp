// SPDX-License-Identifier: Apache-2.0
#include "orlicz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>

#include "orlicz/orlicz.hpp"

namespace orlicz {

namespace {

constexpr int kMaxSweeps = 50;

struct Sparse {
  std::vector<long> ids;     // strictly increasing atom ids
  std::vector<double> vals;  // nonnegative values
};

// Exact Luxemburg norm of an atomic vector with the given per-entry masses.
double sparse_norm(const YoungFunction& phi, const std::vector<double>& vals,
                   const std::vector<double>& masses) {
  double vmax = 0.0;
  bool infinite_mass = false;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (masses[i] <= 0.0 || vals[i] == 0.0) continue;
    vmax = std::max(vmax, std::abs(vals[i]));
    if (std::isinf(masses[i])) infinite_mass = true;
  }
  if (vmax == 0.0) return 0.0;
  if (infinite_mass) return kInf;

  auto over = [&](double k) {
    double m = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (masses[i] <= 0.0 || vals[i] == 0.0) continue;
      m += masses[i] * phi(std::abs(vals[i]) / k);
      if (!(m <= 1.0)) return true;
    }
    return false;
  };

  double lo, hi;
  if (over(1.0)) {
    lo = 1.0;
    hi = 2.0;
    while (over(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) return kInf;
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (!over(lo)) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return hi;
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    (over(mid) ? lo : hi) = mid;
  }
  return hi;
}

double fn_at_atom(const MeasurableFunction& f, const MeasureSpace& mu, long j) {
  const long n = mu.explicit_atoms();
  if (j <= n) return f.atom_values[static_cast<std::size_t>(j - 1)];
  if (!f.on_tail) throw numeric_error("oracle: function lacks a tail evaluator");
  return f.on_tail(static_cast<double>(j));
}

// mu(phi^{-1}({m})) for the atomic part: explicit scan plus the monotone
// plateau of the tail map. +inf when the plateau escapes the probe cap.
double preimage_weight(const CompositionOp& c, const MeasureSpace& mu, long m) {
  double s = 0.0;
  const long n = mu.explicit_atoms();
  for (long j = 1; j <= n; ++j)
    if (c.phi.atom_map[static_cast<std::size_t>(j - 1)] == m) s += mu.atom_weight(j);
  if (!mu.has_tail() || !c.phi.tail_map) return s;

  long hi;
  try {
    hi = tail_preimage_bound(c.phi, mu, m);
  } catch (const numeric_error&) {
    // Map stays <= m past the cap; unbounded preimage iff it actually sits at m.
    return c.phi.map_atom(c.phi.probe_cap, n) == m ? kInf : s;
  }
  long lo;
  try {
    lo = tail_preimage_bound(c.phi, mu, m - 1);
  } catch (const numeric_error&) {
    return s;  // map <= m-1 through the cap: no tail preimage of m in reach
  }
  for (long j = std::max(lo, n) + 1; j <= hi; ++j)
    if (c.phi.map_atom(j, n) == m) s += mu.atom_weight(j);
  return s;
}

class RatioEngine {
 public:
  RatioEngine(const YoungFunction& phi1, const YoungFunction& phi2,
              const OperatorVariant& op, const MeasureSpace& mu)
      : phi1_(phi1), phi2_(phi2), op_(op), mu_(mu) {}

  // N_phi2(T f) / N_phi1(f); 0 when f is trivial, +inf on blow-up.
  double ratio(const Sparse& f) {
    std::vector<double> mus(f.ids.size());
    for (std::size_t i = 0; i < f.ids.size(); ++i) mus[i] = mu_.atom_weight(f.ids[i]);
    const double n1 = sparse_norm(phi1_, f.vals, mus);
    if (n1 <= 0.0) return 0.0;

    double n2;
    if (const auto* m = std::get_if<MultiplicationOp>(&op_)) {
      std::vector<double> image(f.ids.size());
      for (std::size_t i = 0; i < f.ids.size(); ++i)
        image[i] = weight_at(m->u.modulus(), f.ids[i]) * f.vals[i];
      n2 = sparse_norm(phi2_, image, mus);
    } else {
      const auto& c = std::get<CompositionOp>(op_);
      std::vector<double> pre(f.ids.size());
      for (std::size_t i = 0; i < f.ids.size(); ++i) pre[i] = pre_weight(c, f.ids[i]);
      n2 = sparse_norm(phi2_, f.vals, pre);
    }
    return n2 / n1;
  }

  double image_norm(const Sparse& f) {
    if (const auto* m = std::get_if<MultiplicationOp>(&op_)) {
      std::vector<double> mus(f.ids.size()), image(f.ids.size());
      for (std::size_t i = 0; i < f.ids.size(); ++i) {
        mus[i] = mu_.atom_weight(f.ids[i]);
        image[i] = weight_at(m->u.modulus(), f.ids[i]) * f.vals[i];
      }
      return sparse_norm(phi2_, image, mus);
    }
    const auto& c = std::get<CompositionOp>(op_);
    std::vector<double> pre(f.ids.size());
    for (std::size_t i = 0; i < f.ids.size(); ++i) pre[i] = pre_weight(c, f.ids[i]);
    return sparse_norm(phi2_, f.vals, pre);
  }

  double norm1(const Sparse& f) {
    std::vector<double> mus(f.ids.size());
    for (std::size_t i = 0; i < f.ids.size(); ++i) mus[i] = mu_.atom_weight(f.ids[i]);
    return sparse_norm(phi1_, f.vals, mus);
  }

 private:
  double weight_at(const MeasurableFunction& w, long j) {
    return fn_at_atom(w, mu_, j);
  }
  double pre_weight(const CompositionOp& c, long id) {
    auto it = pre_cache_.find(id);
    if (it != pre_cache_.end()) return it->second;
    const double w = preimage_weight(c, mu_, id);
    pre_cache_.emplace(id, w);
    return w;
  }

  const YoungFunction& phi1_;
  const YoungFunction& phi2_;
  const OperatorVariant& op_;
  const MeasureSpace& mu_;
  std::map<long, double> pre_cache_;
};

MeasurableFunction sparse_to_fn(const Sparse& f, const MeasureSpace& mu) {
  MeasurableFunction g;
  const long n = mu.explicit_atoms();
  g.atom_values.assign(static_cast<std::size_t>(n), 0.0);
  auto tail = std::make_shared<std::map<long, double>>();
  long max_id = 0;
  for (std::size_t i = 0; i < f.ids.size(); ++i) {
    if (f.ids[i] <= n) {
      g.atom_values[static_cast<std::size_t>(f.ids[i] - 1)] = f.vals[i];
    } else {
      (*tail)[f.ids[i]] = f.vals[i];
      max_id = std::max(max_id, f.ids[i]);
    }
  }
  if (mu.has_interval()) g.on_interval = [](double) { return 0.0; };
  if (mu.has_tail()) {
    g.on_tail = [tail](double j) {
      const auto it = tail->find(std::lround(j));
      return it == tail->end() ? 0.0 : it->second;
    };
    g.tail_limit = 0.0;
    g.min_tail_probe = max_id;
  }
  return g;
}

// Shared search used by the norm estimate and the truncation distance:
// indicators, seeded random vectors, then greedy coordinate ascent.
NormEstimate norm_search(const YoungFunction& phi1, const YoungFunction& phi2,
                         const OperatorVariant& op, const MeasureSpace& mu,
                         const std::vector<long>& ids, int samples,
                         std::uint64_t seed) {
  NormEstimate est;
  if (ids.empty()) {
    est.maximizer = sparse_to_fn({}, mu);
    return est;
  }
  RatioEngine eng(phi1, phi2, op, mu);

  Sparse best;
  double best_ratio = 0.0;
  auto consider = [&](const Sparse& f) {
    const double r = eng.ratio(f);
    if (r > best_ratio) {
      best_ratio = r;
      best = f;
    }
    return r;
  };

  for (long id : ids) {
    consider({{id}, {1.0}});
    if (std::isinf(best_ratio)) break;
  }

  Rng rng(seed);
  const long span = static_cast<long>(ids.size());
  for (int s = 0; s < samples && !std::isinf(best_ratio); ++s) {
    const long want = 1 + static_cast<long>(rng.index(
                              static_cast<std::size_t>(std::min<long>(span, 8))));
    std::set<long> chosen;
    for (int tries = 0; tries < 64 && static_cast<long>(chosen.size()) < want; ++tries)
      chosen.insert(ids[rng.index(static_cast<std::size_t>(span))]);
    Sparse f;
    for (long id : chosen) {
      f.ids.push_back(id);
      f.vals.push_back(0.001 + 0.999 * rng.uniform01());
    }
    consider(f);
  }

  if (best_ratio > 0.0 && !std::isinf(best_ratio)) {
    static constexpr double kFactors[] = {0.5, 0.9, 1.1, 2.0};
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      bool improved = false;
      for (std::size_t i = 0; i < best.ids.size(); ++i) {
        for (double fac : kFactors) {
          Sparse trial = best;
          trial.vals[i] *= fac;
          const double r = eng.ratio(trial);
          if (r > best_ratio * (1.0 + 1e-12)) {
            best_ratio = r;
            best = std::move(trial);
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
  }

  est.lower = best_ratio;
  est.support = best.ids;
  est.values = best.vals;
  est.maximizer = sparse_to_fn(best, mu);
  return est;
}

std::vector<long> id_range(long lo, long hi) {
  std::vector<long> ids;
  ids.reserve(static_cast<std::size_t>(std::max<long>(0, hi - lo)));
  for (long j = lo + 1; j <= hi; ++j) ids.push_back(j);
  return ids;
}

}  // namespace

NormEstimate operator_norm_estimate(const YoungFunction& phi1, const YoungFunction& phi2,
                                    const OperatorVariant& op, const MeasureSpace& mu,
                                    long trunc_atoms, int samples, std::uint64_t seed) {
  if (trunc_atoms < 0) throw config_error("operator_norm_estimate: trunc must be >= 0");
  long hi = trunc_atoms;
  if (!mu.has_tail()) hi = std::min(hi, mu.explicit_atoms());
  return norm_search(phi1, phi2, op, mu, id_range(0, hi), samples, seed);
}

double truncation_distance(const YoungFunction& phi1, const YoungFunction& phi2,
                           const OperatorVariant& op, const MeasureSpace& mu,
                           long keep_atoms, int samples, std::uint64_t seed) {
  if (keep_atoms < 0) throw config_error("truncation_distance: keep must be >= 0");
  long hi = keep_atoms + std::max<long>(128, keep_atoms);
  if (!mu.has_tail()) hi = std::min(hi, mu.explicit_atoms());
  return norm_search(phi1, phi2, op, mu, id_range(keep_atoms, hi), samples, seed)
      .lower;
}

WitnessResult witness_separation(const YoungFunction& phi1, const YoungFunction& phi2,
                                 const OperatorVariant& op, const MeasureSpace& mu,
                                 const WitnessRegion& region, long count) {
  if (count < 1) throw config_error("witness_separation: count must be >= 1");
  WitnessResult res;

  if (!region.atom_ids.empty()) {
    std::vector<long> ids = region.atom_ids;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (static_cast<long>(ids.size()) < count)
      throw config_error("witness_separation: fewer disjoint atoms than requested");
    ids.resize(static_cast<std::size_t>(count));

    RatioEngine eng(phi1, phi2, op, mu);
    std::vector<double> scale(ids.size());
    std::vector<double> image(ids.size());
    double min_image = kInf;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const double n1 = eng.norm1({{ids[k]}, {1.0}});
      if (n1 <= 0.0)
        throw numeric_error("witness_separation: indicator has zero norm");
      scale[k] = 1.0 / n1;
      image[k] = eng.image_norm({{ids[k]}, {scale[k]}});
      min_image = std::min(min_image, image[k]);
    }
    double min_pair = kInf;
    for (std::size_t k = 0; k + 1 < ids.size(); ++k)
      for (std::size_t m = k + 1; m < ids.size(); ++m) {
        // disjoint supports: |T f_k - T f_m| carries both values unchanged
        const double d =
            eng.image_norm({{ids[k], ids[m]}, {scale[k], scale[m]}});
        min_pair = std::min(min_pair, d);
      }
    res.min_image_norm = min_image;
    res.min_pairwise = ids.size() > 1 ? min_pair : min_image;
    res.pieces = count;
    return res;
  }

  if (!region.interval) {
    throw config_error("witness_separation: region provides no pieces");
  }
  const Interval& iv = *region.interval;
  if (!mu.has_interval() || iv.lo < mu.interval().lo || iv.hi > mu.interval().hi ||
      !(iv.hi > iv.lo))
    throw config_error("witness_separation: interval region outside the space");

  const double step = (iv.hi - iv.lo) / static_cast<double>(count);
  std::vector<MeasurableFunction> images;
  double min_image = kInf;
  for (long k = 0; k < count; ++k) {
    const double a = iv.lo + step * static_cast<double>(k);
    const double b = k + 1 == count ? iv.hi : a + step;
    MeasurableFunction chi = indicator_interval(mu, a, b);
    const double n1 = luxemburg_norm(phi1, chi, mu);
    if (!(n1 > 0.0))
      throw numeric_error("witness_separation: indicator has zero norm");
    MeasurableFunction img = apply_operator(op, scale_fn(chi, 1.0 / n1), mu);
    min_image = std::min(min_image, luxemburg_norm(phi2, img, mu));
    images.push_back(std::move(img));
  }
  double min_pair = kInf;
  for (std::size_t k = 0; k + 1 < images.size(); ++k)
    for (std::size_t m = k + 1; m < images.size(); ++m)
      min_pair = std::min(
          min_pair, luxemburg_norm(phi2, difference_fn(images[k], images[m]), mu));
  res.min_image_norm = min_image;
  res.min_pairwise = images.size() > 1 ? min_pair : min_image;
  res.pieces = count;
  return res;
}

}  // namespace orlicz
