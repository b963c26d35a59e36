#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "subopt/core.hpp"
#include "subopt/line_search.hpp"
#include "subopt/minnorm.hpp"

namespace subopt {

/// One row of the per-iteration trace emitted by the stationarity loop.
struct InnerTraceRow {
  long long round = 0;     // outer round index
  long long k = 0;         // inner iteration within the round
  int indicator = 0;       // 1 descent, 0 null step
  double g_star_norm = 0.0;
  double f = 0.0;          // f at the iterate after this iteration
  std::size_t bundle_size = 0;  // size after the update
};

/// Optional observation and control hooks shared by the solver entry points.
struct SolveHooks {
  /// Called once per completed inner iteration.
  std::function<void(const InnerTraceRow&)> on_iteration;
  /// External stop test, polled once per inner iteration with the running
  /// totals; return a status to halt the whole solve.
  std::function<std::optional<Status>(long long total_inner_iters, double f)> should_stop;
  /// Postcondition tallies (cheap checks always run when this is set).
  ValidationStats* stats = nullptr;
  /// Also verify that each null-step subgradient lies strictly outside the
  /// pre-step hull. Costs one extra min-norm solve per null step.
  bool check_hull_distance = false;
};

/// Bundle reduction: keep the members carrying the l largest weights, where
/// l is the smallest count whose weight mass reaches theta, then append
/// g_star itself as a member. Ties in the weight sort resolve to the
/// earlier-inserted member.
Bundle reset_bundle(const Bundle& bundle, const MinNormSolution& solution, double theta,
                    int M);

/// Drives min-norm direction finding, line search, and bundle updates until
/// the hull's least-norm element has norm <= delta. Returns the certified
/// iterate; counters and status are recorded on `report`. On an iteration
/// cap or a line-search stall the best iterate so far is returned with the
/// corresponding status.
Vec dg_sp(const ObjectiveOracle& oracle, std::span<const double> x0, double eps, double delta,
          const SolverParams& params, RunReport& report, const SolveHooks& hooks = {},
          long long round = 0);

/// Tolerance pair for round nu of the geometric schedule.
std::pair<double, double> schedule(const SolverParams& params, long long nu);

struct SolveResult {
  Vec x;
  RunReport report;
};

/// Full solve: shrink (delta, eps) geometrically, run a stationarity round
/// at each level, stop once both tolerances fall to eta.
SolveResult solve(const ObjectiveOracle& oracle, std::span<const double> x0,
                  const SolverParams& params, const SolveHooks& hooks = {});

}  // namespace subopt
