#include "subopt/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace subopt {

Bundle reset_bundle(const Bundle& bundle, const MinNormSolution& solution, double theta,
                    int M) {
  const std::size_t m = bundle.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return solution.weights[a] > solution.weights[b];
  });

  // Smallest l whose weight mass reaches theta. The small slack absorbs
  // rounding in the mass sum; zero-weight members never help.
  double mass = 0.0;
  std::size_t l = 0;
  while (l < m && mass < theta - 1e-12 && solution.weights[order[l]] > 0.0) {
    mass += solution.weights[order[l]];
    ++l;
  }
  l = std::max<std::size_t>(l, 1);
  // Spread-out weights can push l to m, which would leave nothing to
  // discard; the size contract |result| <= M - 1 caps the kept set.
  l = std::min(l, static_cast<std::size_t>(M) - 2);

  std::vector<std::size_t> keep(order.begin(), order.begin() + l);
  std::sort(keep.begin(), keep.end());  // preserve insertion order

  Bundle out(bundle.dim(), l + 1);
  for (std::size_t j : keep) out.push_back(bundle.member(j));
  out.push_back(solution.g_star);
  return out;
}

std::pair<double, double> schedule(const SolverParams& params, long long nu) {
  const double e = static_cast<double>(nu);
  return {params.delta0 * std::pow(params.reduce_delta, e),
          params.eps0 * std::pow(params.reduce_eps, e)};
}

namespace detail {

enum class RoundEnd { Stationary, ExternalStop, IterCap, Stall };

RoundEnd run_round(const ObjectiveOracle& oracle, Vec& x, double eps, double delta,
                   const SolverParams& params, RunReport& report, const SolveHooks& hooks,
                   long long round) {
  Bundle bundle(static_cast<std::size_t>(oracle.dimension()));
  bundle.push_back(oracle.subgradient(x));

  double prev_norm = 0.0;
  bool prev_was_null = false;

  for (long long k = 0;; ++k) {
    if (k >= params.max_inner_iters) {
      report.status = Status::IterCapReached;
      return RoundEnd::IterCap;
    }

    MinNormSolution sol;
    try {
      sol = min_norm_point(bundle);
    } catch (const MinNormError&) {
      // Treat an unresolvable subproblem like a stalled search: keep the
      // current (best) iterate.
      report.status = Status::LineSearchStalled;
      return RoundEnd::Stall;
    }

    if (hooks.stats) {
      hooks.stats->max_bundle_size =
          std::max(hooks.stats->max_bundle_size, static_cast<std::int64_t>(bundle.size()));
      if (prev_was_null) {
        ++hooks.stats->shrink_checks;
        if (!(sol.norm < prev_norm)) ++hooks.stats->shrink_violations;
      }
    }
    prev_norm = sol.norm;

    if (sol.norm <= delta) {
      report.status = Status::Converged;
      if (std::isnan(report.f_end)) report.f_end = oracle.value(x);
      return RoundEnd::Stationary;
    }

    // The null-step exit is only guaranteed to produce a subgradient outside
    // the hull while the subproblem resolves member optimality below the
    // (1 - beta2) margin. A floor-limited residual means further bundling is
    // numerically indistinguishable from noise.
    if (sol.opt_residual > 0.45 * (1.0 - params.beta2) * sol.norm * sol.norm) {
      report.status = Status::LineSearchStalled;
      if (std::isnan(report.f_end)) report.f_end = oracle.value(x);
      return RoundEnd::Stall;
    }

    LineSearchOutcome outcome;
    try {
      outcome = two_point_line_search(oracle, eps, x, sol.g_star, params, hooks.stats);
    } catch (const LineSearchStall&) {
      report.status = Status::LineSearchStalled;
      if (std::isnan(report.f_end)) report.f_end = oracle.value(x);
      return RoundEnd::Stall;
    }

    double f_after = 0.0;
    if (outcome.kind == LineSearchOutcome::Kind::Descent) {
      x = outcome.point;
      f_after = outcome.f_point;
      bundle.reset_to(oracle.subgradient(x));
      prev_was_null = false;
    } else {
      if (hooks.check_hull_distance && hooks.stats) {
        ++hooks.stats->hull_checks;
        if (!(distance_to_hull(outcome.subgradient, bundle) > 0.0))
          ++hooks.stats->hull_violations;
      }
      // ">=" rather than "==": when the weight mass forces maximal retention
      // the reduced-plus-appended set can reach M, which would leap over an
      // equality trigger and let the bundle grow unchecked.
      if (params.reset_enabled &&
          bundle.size() >= static_cast<std::size_t>(params.reset_M) - 1) {
        bundle = reset_bundle(bundle, sol, params.reset_theta, params.reset_M);
      }
      bundle.push_back(outcome.subgradient);
      f_after = outcome.f_start;
      prev_was_null = true;
    }

    if (hooks.stats) {
      ++hooks.stats->monotone_checks;
      if (!std::isnan(report.f_end) && !(f_after <= report.f_end))
        ++hooks.stats->monotone_violations;
    }
    report.f_end = f_after;
    ++report.inner_iters;

    if (hooks.on_iteration) {
      hooks.on_iteration(
          {round, k, outcome.kind == LineSearchOutcome::Kind::Descent ? 1 : 0, sol.norm,
           f_after, bundle.size()});
    }
    if (hooks.should_stop) {
      if (auto st = hooks.should_stop(report.inner_iters, f_after)) {
        report.status = *st;
        return RoundEnd::ExternalStop;
      }
    }
  }
}

}  // namespace detail

Vec dg_sp(const ObjectiveOracle& oracle, std::span<const double> x0, double eps, double delta,
          const SolverParams& params, RunReport& report, const SolveHooks& hooks,
          long long round) {
  Vec x(x0.begin(), x0.end());
  const auto base_fun = oracle.fun_evals() - report.fun_evals;
  const auto base_sub = oracle.sub_evals() - report.sub_evals;
  if (report.inner_iters == 0) report.f_end = std::numeric_limits<double>::quiet_NaN();
  detail::run_round(oracle, x, eps, delta, params, report, hooks, round);
  report.x_end = x;
  report.fun_evals = oracle.fun_evals() - base_fun;
  report.sub_evals = oracle.sub_evals() - base_sub;
  return x;
}

SolveResult solve(const ObjectiveOracle& oracle, std::span<const double> x0,
                  const SolverParams& params, const SolveHooks& hooks) {
  validate_params(params);
  const auto t_start = std::chrono::steady_clock::now();
  const auto base_fun = oracle.fun_evals();
  const auto base_sub = oracle.sub_evals();

  Vec x(x0.begin(), x0.end());
  RunReport report;
  report.f_end = std::numeric_limits<double>::quiet_NaN();

  for (long long nu = 0;; ++nu) {
    const auto [delta, eps] = schedule(params, nu);
    const auto end = detail::run_round(oracle, x, eps, delta, params, report, hooks, nu);
    report.outer_iters = nu;
    if (end != detail::RoundEnd::Stationary) break;
    if (delta <= params.eta && eps <= params.eta) break;
  }

  report.x_end = x;
  report.fun_evals = oracle.fun_evals() - base_fun;
  report.sub_evals = oracle.sub_evals() - base_sub;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return {std::move(x), std::move(report)};
}

}  // namespace subopt
