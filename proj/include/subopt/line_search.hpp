#pragma once

#include <cstdint>
#include <span>

#include "subopt/core.hpp"

namespace subopt {

/// Tally of postcondition checks performed by the solver. Checks are cheap
/// re-evaluations of already-computed quantities; violations indicate an
/// oracle breaking its contract or a numerical breakdown.
struct ValidationStats {
  // line search
  std::int64_t descent_checks = 0;
  std::int64_t descent_violations = 0;
  std::int64_t null_checks = 0;
  std::int64_t null_violations = 0;
  std::int64_t bracket_checks = 0;
  std::int64_t bracket_violations = 0;
  std::int64_t trial_range_checks = 0;
  std::int64_t trial_range_violations = 0;
  // stationarity loop
  std::int64_t monotone_checks = 0;
  std::int64_t monotone_violations = 0;
  std::int64_t shrink_checks = 0;
  std::int64_t shrink_violations = 0;
  std::int64_t hull_checks = 0;
  std::int64_t hull_violations = 0;
  std::int64_t max_bundle_size = 0;

  std::int64_t total_violations() const {
    return descent_violations + null_violations + bracket_violations +
           trial_range_violations + monotone_violations + shrink_violations + hull_violations;
  }

  void merge(const ValidationStats& o);
};

/// Descent-step schedule: 1 at i = 0, then t0^(i/p), strictly decreasing,
/// equal to t0 at i = p.
double bar_t_schedule(double t0, int p, int i);

/// Next trial step inside the bracket; the midpoint, which lies in
/// [t_l + zeta*w, t_u - zeta*w] for any zeta < 0.5.
double next_trial(double t_l, double t_u, double zeta);

/// Result of the two-point line search: either a point achieving sufficient
/// decrease with step >= tbar, or a fresh subgradient from inside the ball
/// that the current hull does not contain.
struct LineSearchOutcome {
  enum class Kind { Descent, NullStep };
  Kind kind = Kind::NullStep;

  // Descent
  Vec point;
  double step = 0.0;
  double f_point = 0.0;  // f at the accepted point, reusable by the caller

  // NullStep
  Vec subgradient;

  // diagnostics
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double f_start = 0.0;  // f(x), evaluated once per invocation
};

struct LineSearchStall : std::runtime_error {
  explicit LineSearchStall(const std::string& what) : std::runtime_error(what) {}
};

/// Two-point line search along d = -g*/||g*|| from x.
///
/// Maintains a bracketed trial track t_i in (0, eps] for subgradient
/// discovery and a geometric track tbar_i in (0, 1] for the descent test.
/// Exactly one outcome is produced; its postconditions are verified before
/// returning and tallied into `stats` when given. Throws LineSearchStall
/// after max_linesearch_iters iterations (the finite-termination guarantee
/// needs a weakly upper semismooth objective).
LineSearchOutcome two_point_line_search(const ObjectiveOracle& oracle, double eps,
                                        std::span<const double> x,
                                        std::span<const double> g_star,
                                        const SolverParams& params,
                                        ValidationStats* stats = nullptr);

}  // namespace subopt
