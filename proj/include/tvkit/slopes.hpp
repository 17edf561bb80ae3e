#pragma once

// Coupling function phi(x,y) = delta_A(x) + ||x-y|| + delta_B(y) and sampled
// estimators for its local and nonlocal slopes on A x B.  The product space
// carries the sum metric d((x,y),(u,v)) = ||x-u|| + ||y-v||.
//
// Sampling a sup-type quantity yields a certified lower bound; estimates
// carry the budget that produced them and a witness pair that reproduces the
// reported ratio exactly.  Candidate evaluation reduces with an
// order-independent max (ties broken by lexicographically smallest witness),
// so any evaluation order gives identical results.

#include <tvkit/geometry.hpp>
#include <tvkit/scene.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tvkit {

struct SlopeConfig {
  std::vector<double> radii{0.1, 0.03, 0.01, 0.003, 0.001};  // strictly decreasing
  int samples_per_radius = 4096;  // candidate-pair budget per radius tier
  double nonlocal_search_radius = 10.0;
  std::int64_t seed = 0;
};

inline void check_config(const SlopeConfig& cfg) {
  if (cfg.radii.empty()) throw std::invalid_argument("SlopeConfig: radii must be nonempty");
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    if (!(cfg.radii[i] > 0.0)) throw std::invalid_argument("SlopeConfig: radii must be positive");
    if (i > 0 && !(cfg.radii[i] < cfg.radii[i - 1]))
      throw std::invalid_argument("SlopeConfig: radii must be strictly decreasing");
  }
  if (cfg.samples_per_radius < 1) throw std::invalid_argument("SlopeConfig: samples_per_radius must be >= 1");
  if (!(cfg.nonlocal_search_radius > 0.0))
    throw std::invalid_argument("SlopeConfig: nonlocal_search_radius must be > 0");
}

enum class SlopeKind { Local, Nonlocal };

struct TierStat {
  double radius = 0.0;
  double max_ratio = 0.0;
  long candidate_count = 0;
};

struct SlopeEstimate {
  double value = 0.0;
  SlopeKind kind = SlopeKind::Local;
  std::optional<std::pair<Vec, Vec>> best_witness;
  SlopeConfig config;
  bool is_lower_bound = true;  // sampling a sup
  std::vector<TierStat> per_radius;
};

inline double coupling_value(const Scene& scene, const Vec& x, const Vec& y) {
  if (static_cast<int>(x.size()) != scene.dimension || static_cast<int>(y.size()) != scene.dimension)
    throw std::invalid_argument("coupling_value: dimension mismatch");
  if (!contains(scene.A, x, scene.tol_membership) || !contains(scene.B, y, scene.tol_membership))
    return std::numeric_limits<double>::infinity();
  return (x - y).norm();
}

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// Deterministic, order-independent running max over candidate pairs.
struct BestWitness {
  double value = 0.0;
  bool any = false;
  Vec u, v;

  void consider(double ratio, const Vec& cu, const Vec& cv) {
    if (!any) {
      any = true;
      value = ratio;
      u = cu;
      v = cv;
      return;
    }
    if (ratio > value) {
      value = ratio;
      u = cu;
      v = cv;
    } else if (ratio == value && (lex_less(cu, u) || (cu == u && lex_less(cv, v)))) {
      u = cu;
      v = cv;
    }
  }
};

// max{phi(x,y) - phi(u,v), 0} / (||x-u|| + ||y-v||) for feasible (u,v),
// capped at the triangle-inequality bound of 1.
inline double pair_ratio(double phi_xy, const Vec& x, const Vec& y, const Vec& u, const Vec& v) {
  const double denom = (x - u).norm() + (y - v).norm();
  if (denom == 0.0) return -1.0;  // the base pair itself; caller skips
  const double num = phi_xy - (u - v).norm();
  if (num <= 0.0) return 0.0;
  return std::min(num / denom, 1.0);
}

inline void require_feasible_pair(const Scene& scene, const Vec& x, const Vec& y, const char* op) {
  if (std::isinf(coupling_value(scene, x, y)))
    throw std::invalid_argument(std::string(op) + ": base pair must lie in A x B (coupling value finite)");
}

inline int per_side_count(const SlopeConfig& cfg) {
  int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(cfg.samples_per_radius))));
  return std::max(k, 1);
}

inline TierStat scan_tier(const Scene& scene, const Vec& x, const Vec& y, double phi_xy, double radius,
                          int per_side, std::uint64_t seed_u, std::uint64_t seed_v, BestWitness& best) {
  TierStat stat;
  stat.radius = radius;
  const auto us = sample_near(scene.A, x, radius, per_side, seed_u);
  const auto vs = sample_near(scene.B, y, radius, per_side, seed_v);
  for (const Vec& u : us) {
    for (const Vec& v : vs) {
      const double r = pair_ratio(phi_xy, x, y, u, v);
      if (r < 0.0) continue;
      ++stat.candidate_count;
      if (r > stat.max_ratio) stat.max_ratio = r;
      best.consider(r, u, v);
    }
  }
  return stat;
}

// Enumerates the full nonlocal candidate set: every local tier (so the
// nonlocal candidates nest the local ones), a wide tier at the search radius,
// and the deterministic candidates (projection chain and sampled common
// points).  fn(tier_index, u, v); tier_index == cfg.radii.size() marks the
// wide tier.
template <typename Fn>
inline void for_each_nonlocal_candidate(const Scene& scene, const Vec& x, const Vec& y,
                                        const SlopeConfig& cfg, Fn&& fn) {
  const int per_side = per_side_count(cfg);
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    const auto us = sample_near(scene.A, x, cfg.radii[i], per_side, mix_seed(cfg.seed, 2 * i));
    const auto vs = sample_near(scene.B, y, cfg.radii[i], per_side, mix_seed(cfg.seed, 2 * i + 1));
    for (const Vec& u : us)
      for (const Vec& v : vs) fn(i, u, v);
  }
  const std::size_t wide = cfg.radii.size();
  const auto us = sample_near(scene.A, x, cfg.nonlocal_search_radius, per_side, mix_seed(cfg.seed, 101));
  const auto vs = sample_near(scene.B, y, cfg.nonlocal_search_radius, per_side, mix_seed(cfg.seed, 102));
  for (const Vec& u : us)
    for (const Vec& v : vs) fn(wide, u, v);
  const Vec u0 = project(scene.A, y);
  const Vec v0 = project(scene.B, u0);
  fn(wide, u0, v0);
  for (const Vec& w : us)
    if (contains(scene.B, w, scene.tol_membership)) fn(wide, w, w);
  for (const Vec& w : vs)
    if (contains(scene.A, w, scene.tol_membership)) fn(wide, w, w);
}

}  // namespace detail

// Local slope estimate: candidate pairs from shrinking radius tiers; the
// reported value comes from the smallest tier that contains candidates.
inline SlopeEstimate local_slope(const Scene& scene, const Vec& x, const Vec& y, const SlopeConfig& cfg) {
  check_config(cfg);
  detail::require_feasible_pair(scene, x, y, "local_slope");
  const double phi_xy = (x - y).norm();
  const int per_side = detail::per_side_count(cfg);

  SlopeEstimate est;
  est.kind = SlopeKind::Local;
  est.config = cfg;

  std::vector<detail::BestWitness> tier_best(cfg.radii.size());
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    est.per_radius.push_back(detail::scan_tier(scene, x, y, phi_xy, cfg.radii[i], per_side,
                                               detail::mix_seed(cfg.seed, 2 * i),
                                               detail::mix_seed(cfg.seed, 2 * i + 1), tier_best[i]));
  }
  // smallest radius tier with candidates decides the estimate
  for (std::size_t i = cfg.radii.size(); i-- > 0;) {
    if (est.per_radius[i].candidate_count > 0) {
      est.value = tier_best[i].value;
      est.best_witness = std::make_pair(tier_best[i].u, tier_best[i].v);
      break;
    }
  }
  return est;
}

// Nonlocal slope estimate: all local tiers (nested candidate sets), a wide
// search tier at nonlocal_search_radius, and deterministic candidates
// (the projection chain u = P_A(y), v = P_B(u), and u = v = any sampled
// common point of A and B).
inline SlopeEstimate nonlocal_slope(const Scene& scene, const Vec& x, const Vec& y, const SlopeConfig& cfg) {
  check_config(cfg);
  detail::require_feasible_pair(scene, x, y, "nonlocal_slope");
  const double phi_xy = (x - y).norm();

  SlopeEstimate est;
  est.kind = SlopeKind::Nonlocal;
  est.config = cfg;
  est.per_radius.resize(cfg.radii.size() + 1);
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) est.per_radius[i].radius = cfg.radii[i];
  est.per_radius.back().radius = cfg.nonlocal_search_radius;

  detail::BestWitness best;
  detail::for_each_nonlocal_candidate(scene, x, y, cfg, [&](std::size_t tier, const Vec& u, const Vec& v) {
    const double r = detail::pair_ratio(phi_xy, x, y, u, v);
    if (r < 0.0) return;
    TierStat& stat = est.per_radius[tier];
    ++stat.candidate_count;
    if (r > stat.max_ratio) stat.max_ratio = r;
    best.consider(r, u, v);
  });

  if (best.any) {
    est.value = best.value;
    est.best_witness = std::make_pair(best.u, best.v);
  }
  return est;
}

// ---------------------------------------------------------------------------
// Slope field over a sampled region
// ---------------------------------------------------------------------------

enum class PairFilter { AllDistinct, ExcludeCommonPoints };

struct SlopeFieldRegion {
  Vec center;
  double radius = 1.0;
  int grid_count = 12;  // samples per set
};

struct SlopeFieldRow {
  Vec x, y;
  double phi = 0.0;
  SlopeEstimate local;
  SlopeEstimate nonlocal;
};

inline std::vector<SlopeFieldRow> slope_field(const Scene& scene, const SlopeFieldRegion& region,
                                              const SlopeConfig& cfg, PairFilter filter) {
  if (region.grid_count < 1) throw std::invalid_argument("slope_field: grid_count must be >= 1");
  check_config(cfg);
  const auto xs = sample_near(scene.A, region.center, region.radius, region.grid_count,
                              detail::mix_seed(cfg.seed, 7001));
  const auto ys = sample_near(scene.B, region.center, region.radius, region.grid_count,
                              detail::mix_seed(cfg.seed, 7002));
  std::vector<SlopeFieldRow> rows;
  for (const Vec& x : xs) {
    if (filter == PairFilter::ExcludeCommonPoints && contains(scene.B, x, scene.tol_membership)) continue;
    for (const Vec& y : ys) {
      if ((x - y).norm() == 0.0) continue;  // two different points
      if (filter == PairFilter::ExcludeCommonPoints && contains(scene.A, y, scene.tol_membership)) continue;
      SlopeFieldRow row;
      row.x = x;
      row.y = y;
      row.phi = (x - y).norm();
      row.local = local_slope(scene, x, y, cfg);
      row.nonlocal = nonlocal_slope(scene, x, y, cfg);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace tvkit
