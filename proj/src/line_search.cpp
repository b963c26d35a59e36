#include "subopt/line_search.hpp"

#include <algorithm>
#include <cmath>

namespace subopt {

void ValidationStats::merge(const ValidationStats& o) {
  descent_checks += o.descent_checks;
  descent_violations += o.descent_violations;
  null_checks += o.null_checks;
  null_violations += o.null_violations;
  bracket_checks += o.bracket_checks;
  bracket_violations += o.bracket_violations;
  trial_range_checks += o.trial_range_checks;
  trial_range_violations += o.trial_range_violations;
  monotone_checks += o.monotone_checks;
  monotone_violations += o.monotone_violations;
  shrink_checks += o.shrink_checks;
  shrink_violations += o.shrink_violations;
  hull_checks += o.hull_checks;
  hull_violations += o.hull_violations;
  max_bundle_size = std::max(max_bundle_size, o.max_bundle_size);
}

double bar_t_schedule(double t0, int p, int i) {
  if (i == 0) return 1.0;
  return std::pow(t0, static_cast<double>(i) / static_cast<double>(p));
}

double next_trial(double t_l, double t_u, double /*zeta*/) {
  const double mid = t_l + 0.5 * (t_u - t_l);
  return std::clamp(mid, t_l, t_u);
}

LineSearchOutcome two_point_line_search(const ObjectiveOracle& oracle, double eps,
                                        std::span<const double> x,
                                        std::span<const double> g_star,
                                        const SolverParams& params, ValidationStats* stats) {
  const double gnorm = norm(g_star);
  if (!(gnorm > 0.0))
    throw std::invalid_argument("two_point_line_search: zero direction");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("two_point_line_search: eps must lie in (0,1)");

  Vec d(g_star.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = -g_star[i] / gnorm;

  const double tbar = params.tbar(eps);
  const double t0 = params.t0(eps);
  const double fx = oracle.value(x);

  double t = t0;
  Vec xi = oracle.subgradient(point_along(x, t0, d));
  double tl = 0.0;
  double tu = eps;

  LineSearchOutcome out;
  out.f_start = fx;

  for (int i = 0; i < params.max_linesearch_iters; ++i) {
    out.iterations = i + 1;

    if (stats) {
      ++stats->trial_range_checks;
      if (!(t > 0.0 && t <= eps)) ++stats->trial_range_violations;
    }

    // bracket update
    const double width_before = tu - tl;
    const double f_t = oracle.value(point_along(x, t, d));
    if (f_t - fx <= -params.beta1 * t * gnorm) {
      tl = t;
    } else {
      tu = t;
    }
    // Shrinkage cannot hold once the bracket width reaches the spacing of
    // adjacent doubles; below 1e-16 the search continues but the width is
    // exempt from the contraction property.
    if (stats && i >= 1 && width_before >= 1e-16) {
      ++stats->bracket_checks;
      if (!(tu - tl <= (1.0 - params.zeta) * width_before)) ++stats->bracket_violations;
    }

    // descent test on the geometric track
    const double tbar_i = bar_t_schedule(t0, params.p, i);
    const Vec cand = point_along(x, tbar_i, d);
    const double f_cand = oracle.value(cand);
    if (f_cand - fx <= -params.beta1 * tbar_i * gnorm && tbar_i >= tbar) {
      out.kind = LineSearchOutcome::Kind::Descent;
      out.point = cand;
      out.step = tbar_i;
      out.f_point = f_cand;
      out.bracket_lo = tl;
      out.bracket_hi = tu;
      if (stats) {
        ++stats->descent_checks;
        if (!(out.step >= tbar && out.f_point - fx <= -params.beta1 * out.step * gnorm))
          ++stats->descent_violations;
      }
      return out;
    }

    // null-step test on the stored subgradient
    if (dot(xi, d) >= -params.beta2 * gnorm) {
      out.kind = LineSearchOutcome::Kind::NullStep;
      out.subgradient = std::move(xi);
      out.bracket_lo = tl;
      out.bracket_hi = tu;
      if (stats) {
        ++stats->null_checks;
        if (!(dot(out.subgradient, d) >= -params.beta2 * gnorm)) ++stats->null_violations;
      }
      return out;
    }

    t = next_trial(tl, tu, params.zeta);
    xi = oracle.subgradient(point_along(x, t, d));
  }

  throw LineSearchStall("line search exceeded max_linesearch_iters");
}

}  // namespace subopt
