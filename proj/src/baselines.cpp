#include "subopt/baselines.hpp"

#include <chrono>
#include <cmath>

#include "subopt/minnorm.hpp"
#include "subopt/problems.hpp"
#include "subopt/rng.hpp"

namespace subopt {

RunReport classical_subgradient(const ObjectiveOracle& oracle, std::span<const double> x0,
                                const SubgradientParams& params,
                                std::optional<double> f_star) {
  const auto t_start = std::chrono::steady_clock::now();
  const auto base_fun = oracle.fun_evals();
  const auto base_sub = oracle.sub_evals();

  Vec x(x0.begin(), x0.end());
  Vec best_x = x;
  double best_f = oracle.value(x);

  RunReport report;
  report.status = Status::IterCapReached;

  for (long long k = 1; k <= params.max_iters; ++k) {
    if (f_star && relative_error(best_f, *f_star) < params.tol_E) {
      report.status = Status::Converged;
      break;
    }
    const Vec xi = oracle.subgradient(x);
    const double nrm = norm(xi);
    if (nrm == 0.0) {
      report.status = Status::Converged;
      break;
    }
    const double alpha =
        params.rule == StepRule::Harmonic ? params.a / static_cast<double>(k) : params.a;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= alpha * xi[i] / nrm;
    const double f = oracle.value(x);
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
    report.inner_iters = k;
  }

  report.x_end = best_x;
  report.f_end = best_f;
  report.fun_evals = oracle.fun_evals() - base_fun;
  report.sub_evals = oracle.sub_evals() - base_sub;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

RunReport gradient_sampling(const ObjectiveOracle& oracle, std::span<const double> x0,
                            const GradientSamplingParams& params,
                            std::optional<double> f_star) {
  const auto t_start = std::chrono::steady_clock::now();
  const auto base_fun = oracle.fun_evals();
  const auto base_sub = oracle.sub_evals();
  const std::size_t n = static_cast<std::size_t>(oracle.dimension());
  const int sample_size =
      params.sample_size >= 0 ? params.sample_size : 2 * oracle.dimension();

  Rng rng(mix_seed(params.seed, 0x65a945ULL));
  Vec x(x0.begin(), x0.end());
  double fx = oracle.value(x);
  double eps = params.eps0;
  double nu = params.nu0;

  RunReport report;
  report.status = Status::IterCapReached;

  for (long long k = 0; k < params.max_iters; ++k) {
    if (f_star && relative_error(fx, *f_star) < params.tol_E) {
      report.status = Status::Converged;
      break;
    }
    if (nu < params.eta) {
      report.status = Status::Converged;
      break;
    }

    Bundle bundle(n, static_cast<std::size_t>(sample_size) + 1);
    bundle.push_back(oracle.subgradient(x));
    for (int s = 0; s < sample_size; ++s)
      bundle.push_back(oracle.subgradient(sample_in_ball(x, eps, rng)));

    const MinNormSolution sol = min_norm_point(bundle);
    report.inner_iters = k + 1;

    if (sol.norm <= nu) {
      eps *= params.shrink;
      nu *= params.shrink;
      continue;
    }

    Vec d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = -sol.g_star[i] / sol.norm;

    double t = 1.0;
    bool accepted = false;
    for (int b = 0; b < params.max_backtracks; ++b) {
      const Vec cand = point_along(x, t, d);
      const double f_cand = oracle.value(cand);
      if (f_cand < fx - params.armijo_c * t * sol.norm) {
        x = cand;
        fx = f_cand;
        accepted = true;
        break;
      }
      t *= params.backtrack;
    }
    if (!accepted) {  // no acceptable step at this radius; localize
      eps *= params.shrink;
      nu *= params.shrink;
    }
  }

  report.x_end = x;
  report.f_end = fx;
  report.fun_evals = oracle.fun_evals() - base_fun;
  report.sub_evals = oracle.sub_evals() - base_sub;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

}  // namespace subopt
