#pragma once

// Iterative descent toward a common point driven by nonlocal-slope witnesses,
// with per-row invariants that a verifier can re-check, plus an alternating
// projections harness.
//
// The limit-ordinal steps of the underlying construction are replaced by a
// termination rule: stop once the gap reaches gap_tol and report the
// pair-midpoint projected onto A, accepted only if it also lies in B within
// 10*gap_tol.  No exact common point is ever fabricated.

#include <tvkit/geometry.hpp>
#include <tvkit/scene.hpp>
#include <tvkit/slopes.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace tvkit {

struct StepProposal {
  double theta = 0.0;  // decrease achieved: gap_next <= gap - theta
  Vec xA_next;
  Vec xB_next;
  double ratio = 0.0;  // slope ratio of the accepted witness
};

// One positive-step decrease.  A nonlocal-slope candidate (u,v) is admissible
// when its ratio clears 1/M (after a small margin), which is exactly the
// movement bound ||x-u|| + ||y-v|| <= M*theta.  Among admissible candidates
// the oracle returns the one with the largest decrease theta, breaking ties
// by larger ratio and then by lexicographically smallest witness, so the
// descent makes real progress instead of chasing infinitesimal high-ratio
// moves.
inline std::optional<StepProposal> step_oracle(const Scene& scene, const Vec& xA, const Vec& xB, double M,
                                               const SlopeConfig& cfg) {
  if (!(M > 0.0)) throw std::invalid_argument("step_oracle: M must be > 0");
  if (!contains(scene.A, xA, scene.tol_membership) || !contains(scene.B, xB, scene.tol_membership))
    throw std::invalid_argument("step_oracle: points must lie in A and B");
  if ((xA - xB).norm() == 0.0) throw std::invalid_argument("step_oracle: points must differ");
  check_config(cfg);

  const double gap = (xA - xB).norm();
  const double threshold = 1.0 / M - 1e-9;
  bool any = false;
  StepProposal best;
  detail::for_each_nonlocal_candidate(scene, xA, xB, cfg, [&](std::size_t, const Vec& u, const Vec& v) {
    const double ratio = detail::pair_ratio(gap, xA, xB, u, v);
    if (ratio <= 0.0 || ratio < threshold) return;
    const double theta = ratio * ((xA - u).norm() + (xB - v).norm());
    const bool better =
        !any || theta > best.theta ||
        (theta == best.theta &&
         (ratio > best.ratio ||
          (ratio == best.ratio && (detail::lex_less(u, best.xA_next) ||
                                   (u == best.xA_next && detail::lex_less(v, best.xB_next))))));
    if (better) {
      any = true;
      best.theta = theta;
      best.ratio = ratio;
      best.xA_next = u;
      best.xB_next = v;
    }
  });
  if (!any) return std::nullopt;
  return best;
}

struct TraceRow {
  int k = 0;
  double t = 0.0;
  Vec xA;
  Vec xB;
  double gap = 0.0;
  double moveA = 0.0;  // ||xA_k - xA_{k-1}||, 0 at the first row
  double moveB = 0.0;
};

struct DescentTrace {
  std::vector<TraceRow> rows;
  double M = 0.0;
  bool converged = false;
  std::optional<Vec> xAB;
};

inline DescentTrace run_descent(const Scene& scene, const Vec& xA0, const Vec& xB0, double M,
                                double gap_tol = 1e-8, int max_iter = 10000,
                                const SlopeConfig& cfg_in = SlopeConfig{}) {
  if (!(gap_tol > 0.0)) throw std::invalid_argument("run_descent: gap_tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("run_descent: max_iter must be >= 1");
  if (!(M > 0.0)) throw std::invalid_argument("run_descent: M must be > 0");
  if (!contains(scene.A, xA0, scene.tol_membership) || !contains(scene.B, xB0, scene.tol_membership))
    throw std::invalid_argument("run_descent: starts must lie in A and B");
  SlopeConfig cfg = cfg_in;
  if (cfg.seed == 0) cfg.seed = scene.seed;

  DescentTrace trace;
  trace.M = M;
  Vec xA = xA0, xB = xB0;
  double t = 0.0;
  trace.rows.push_back({0, 0.0, xA, xB, (xA - xB).norm(), 0.0, 0.0});

  auto finalize = [&]() {
    const Vec mid = 0.5 * (xA + xB);
    Vec candidate = project(scene.A, mid);
    if (contains(scene.B, candidate, 10.0 * gap_tol)) {
      trace.converged = true;
      trace.xAB = std::move(candidate);
    }
  };

  for (int k = 1; k <= max_iter; ++k) {
    if (trace.rows.back().gap <= gap_tol) {
      finalize();
      return trace;
    }
    const auto prop = step_oracle(scene, xA, xB, M, cfg);
    if (!prop) return trace;  // no admissible step; converged stays false
    if (!(prop->theta > 1e-15 * std::max(1.0, t))) return trace;  // stalled at double precision
    t += prop->theta;
    const double moveA = (prop->xA_next - xA).norm();
    const double moveB = (prop->xB_next - xB).norm();
    xA = prop->xA_next;
    xB = prop->xB_next;
    trace.rows.push_back({k, t, xA, xB, (xA - xB).norm(), moveA, moveB});
  }
  if (trace.rows.back().gap <= gap_tol) finalize();
  return trace;
}

// Re-checks the per-row invariants of a trace: strictly increasing t,
// (S1) gap_k <= gap_0 - t_k, (S2) movements away from xbar bounded by t_k*M,
// (S3) pairwise movement bounds M*(t_k - t_j).  Returns one message per
// violation; empty means all hold within tol.
inline std::vector<std::string> verify_trace(const DescentTrace& trace, const Vec& xbar, const Vec& startA,
                                             const Vec& startB, double tol = 1e-9) {
  std::vector<std::string> violations;
  if (trace.rows.empty()) return violations;
  const double gap0 = trace.rows.front().gap;
  const double dA0 = (startA - xbar).norm();
  const double dB0 = (startB - xbar).norm();
  const double M = trace.M;

  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& row = trace.rows[i];
    if (i > 0 && !(row.t > trace.rows[i - 1].t))
      violations.push_back("t not increasing at row " + std::to_string(i));
    if (row.gap > gap0 - row.t + tol) violations.push_back("(S1) at row " + std::to_string(i));
    if ((row.xA - xbar).norm() > dA0 + row.t * M + tol)
      violations.push_back("(S2) at row " + std::to_string(i) + " (A)");
    if ((row.xB - xbar).norm() > dB0 + row.t * M + tol)
      violations.push_back("(S2) at row " + std::to_string(i) + " (B)");
    for (std::size_t j = 0; j < i; ++j) {
      const TraceRow& prev = trace.rows[j];
      if ((row.xA - prev.xA).norm() > M * (row.t - prev.t) + tol)
        violations.push_back("(S3) at rows (" + std::to_string(j) + "," + std::to_string(i) + ") (A)");
      if ((row.xB - prev.xB).norm() > M * (row.t - prev.t) + tol)
        violations.push_back("(S3) at rows (" + std::to_string(j) + "," + std::to_string(i) + ") (B)");
    }
  }
  if (trace.converged && trace.xAB) {
    if ((*trace.xAB - startA).norm() > M * gap0 + tol) violations.push_back("final bound (A)");
    if ((*trace.xAB - startB).norm() > M * gap0 + tol) violations.push_back("final bound (B)");
  }
  return violations;
}

// ---------------------------------------------------------------------------
// Alternating projections
// ---------------------------------------------------------------------------

struct APRow {
  int k = 0;
  Vec point;
  double dist_other = 0.0;  // distance to the set this row is NOT in
  bool in_A = true;         // even rows lie in A, odd rows in B
};

struct APTrace {
  std::vector<APRow> rows;
  double rate_estimate = 0.0;  // in [0,1)
};

inline APTrace run_alternating_projections(const Scene& scene, const Vec& start, int max_iter = 1000,
                                           double tol = 1e-10) {
  if (max_iter < 2) throw std::invalid_argument("run_alternating_projections: max_iter must be >= 2");
  APTrace trace;
  Vec cur = start;
  for (int k = 0; k < max_iter; ++k) {
    const bool to_A = (k % 2 == 0);
    cur = project(to_A ? scene.A : scene.B, cur);
    const double other = distance(to_A ? scene.B : scene.A, cur);
    trace.rows.push_back({k, cur, other, to_A});
    if (k >= 1) {
      const double displacement = (trace.rows[k].point - trace.rows[k - 1].point).norm();
      if (displacement <= tol) break;
    }
  }

  // geometric-mean ratio of per-cycle displacements over the last half
  std::vector<double> cycle_disp;
  for (std::size_t i = 2; i < trace.rows.size(); i += 2)
    cycle_disp.push_back((trace.rows[i].point - trace.rows[i - 2].point).norm());
  std::vector<double> ratios;
  for (std::size_t j = 0; j + 1 < cycle_disp.size(); ++j) {
    if (cycle_disp[j] <= 0.0 || cycle_disp[j + 1] <= 0.0) continue;
    ratios.push_back(cycle_disp[j + 1] / cycle_disp[j]);
  }
  if (!ratios.empty()) {
    const std::size_t from = ratios.size() / 2;
    double log_sum = 0.0;
    std::size_t n = 0;
    for (std::size_t j = from; j < ratios.size(); ++j) {
      log_sum += std::log(ratios[j]);
      ++n;
    }
    if (n > 0) {
      const double rate = std::exp(log_sum / static_cast<double>(n));
      trace.rate_estimate = std::clamp(rate, 0.0, 1.0 - 1e-12);
    }
  }
  return trace;
}

}  // namespace tvkit
