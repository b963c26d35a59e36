#include "subopt/minnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace subopt {

namespace {

// Affine minimizer of ||sum_i u_i v_i||^2 subject to sum_i u_i = 1, where the
// v_i are the corral members. Solves the bordered Gram system by Gaussian
// elimination with partial pivoting. Near-zero pivots (affinely dependent
// corral, e.g. duplicate members) zero the corresponding variable, which
// yields a particular solution of the then-underdetermined system.
std::vector<double> affine_minimizer(const Bundle& bundle,
                                     const std::vector<std::size_t>& corral) {
  const std::size_t s = corral.size();
  const std::size_t dim = s + 1;
  std::vector<double> a(dim * dim, 0.0);
  std::vector<double> rhs(dim, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      const double g = dot(bundle.member(corral[i]), bundle.member(corral[j]));
      a[i * dim + j] = g;
      a[j * dim + i] = g;
      scale = std::max(scale, std::fabs(g));
    }
    a[i * dim + s] = 1.0;
    a[s * dim + i] = 1.0;
  }
  rhs[s] = 1.0;
  scale = std::max(scale, 1.0);

  std::vector<std::size_t> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) perm[i] = i;
  const double pivot_floor = 1e-14 * scale;

  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pr = col;
    double pv = std::fabs(a[perm[col] * dim + col]);
    for (std::size_t r = col + 1; r < dim; ++r) {
      const double v = std::fabs(a[perm[r] * dim + col]);
      if (v > pv) {
        pv = v;
        pr = r;
      }
    }
    std::swap(perm[col], perm[pr]);
    const double pivot = a[perm[col] * dim + col];
    if (std::fabs(pivot) <= pivot_floor) {
      // dependent column; leave the variable at zero
      a[perm[col] * dim + col] = 0.0;
      continue;
    }
    for (std::size_t r = col + 1; r < dim; ++r) {
      const double f = a[perm[r] * dim + col] / pivot;
      if (f == 0.0) continue;
      a[perm[r] * dim + col] = 0.0;
      for (std::size_t c = col + 1; c < dim; ++c) a[perm[r] * dim + c] -= f * a[perm[col] * dim + c];
      rhs[perm[r]] -= f * rhs[perm[col]];
    }
  }

  std::vector<double> sol(dim, 0.0);
  for (std::size_t col = dim; col-- > 0;) {
    const double pivot = a[perm[col] * dim + col];
    if (pivot == 0.0) {
      sol[col] = 0.0;
      continue;
    }
    double acc = rhs[perm[col]];
    for (std::size_t c = col + 1; c < dim; ++c) acc -= a[perm[col] * dim + c] * sol[c];
    sol[col] = acc / pivot;
  }
  sol.resize(s);  // drop the multiplier
  return sol;
}

Vec combine(const Bundle& bundle, const std::vector<std::size_t>& corral,
            const std::vector<double>& w) {
  Vec x(bundle.dim(), 0.0);
  for (std::size_t i = 0; i < corral.size(); ++i) axpy(w[i], bundle.member(corral[i]), x);
  return x;
}

}  // namespace

MinNormSolution min_norm_point(const Bundle& bundle, double tol_opt) {
  if (bundle.empty()) throw std::invalid_argument("min_norm_point: bundle is empty");
  if (!(tol_opt > 0.0)) throw std::invalid_argument("min_norm_point: tol_opt must be positive");
  const std::size_t m = bundle.size();
  double max_member_sq = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (!all_finite(bundle.member(j)))
      throw std::invalid_argument("min_norm_point: non-finite member coordinates");
    max_member_sq = std::max(max_member_sq, squared_norm(bundle.member(j)));
  }
  const double member_scale = std::sqrt(max_member_sq);

  // The residual must resolve the normal-cone condition at the scale of the
  // current point: accepting at a fixed absolute tolerance would let hull
  // members masquerade as improving subgradients once ||x||^2 falls below
  // it. Two roundoff levels matter: the dot products against x, and the
  // cancellation in forming x as a convex combination of large members,
  // which leaves an irreducible eps * S^2 term.
  constexpr double eps_m = std::numeric_limits<double>::epsilon();
  const double nd = static_cast<double>(std::max<std::size_t>(bundle.dim(), 8));
  auto dot_floor = [&](double x2, double xnorm) {
    return 64.0 * eps_m * nd * (x2 + member_scale * xnorm);
  };
  auto full_floor = [&](double x2, double xnorm) {
    return dot_floor(x2, xnorm) + 16.0 * eps_m * nd * max_member_sq;
  };
  auto accept_tol = [&](double x2, double xnorm) {
    return std::min(tol_opt, std::max(0.05 * x2, dot_floor(x2, xnorm)));
  };

  // Start from the shortest member, lowest index on ties.
  std::size_t j0 = 0;
  double best_sq = squared_norm(bundle.member(0));
  for (std::size_t j = 1; j < m; ++j) {
    const double sq = squared_norm(bundle.member(j));
    if (sq < best_sq) {
      best_sq = sq;
      j0 = j;
    }
  }

  std::vector<std::size_t> corral{j0};
  std::vector<double> cw{1.0};
  Vec x(bundle.member(j0).begin(), bundle.member(j0).end());

  auto in_corral = [&](std::size_t j) {
    return std::find(corral.begin(), corral.end(), j) != corral.end();
  };

  double best_residual = std::numeric_limits<double>::infinity();
  const long long max_major = 64 + 8 * static_cast<long long>(m);
  int floor_hits = 0;  // consecutive majors with a noise-floor residual

  for (long long major = 0; major < max_major; ++major) {
    const double x2 = squared_norm(x);
    const double xnorm = std::sqrt(x2);
    std::size_t jmin = 0;
    double qmin = dot(bundle.member(0), x);
    for (std::size_t j = 1; j < m; ++j) {
      const double q = dot(bundle.member(j), x);
      if (q < qmin) {
        qmin = q;
        jmin = j;
      }
    }
    const double residual = x2 - qmin;
    best_residual = std::min(best_residual, residual);

    const bool stuck = in_corral(jmin);
    const bool floored = residual <= 4.0 * full_floor(x2, xnorm);
    floor_hits = floored ? floor_hits + 1 : 0;
    if (residual <= accept_tol(x2, xnorm) || (floored && (stuck || floor_hits >= 3))) {
      MinNormSolution sol;
      sol.weights.assign(m, 0.0);
      double sum = 0.0;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        const double w = std::max(cw[i], 0.0);
        sol.weights[corral[i]] = w;
        sum += w;
      }
      if (sum > 0.0)
        for (double& w : sol.weights) w /= sum;
      sol.g_star.assign(bundle.dim(), 0.0);
      for (std::size_t j = 0; j < m; ++j)
        if (sol.weights[j] != 0.0) axpy(sol.weights[j], bundle.member(j), sol.g_star);
      sol.norm = norm(sol.g_star);
      const double g2 = sol.norm * sol.norm;
      sol.opt_residual = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        sol.opt_residual = std::max(sol.opt_residual, g2 - dot(bundle.member(j), sol.g_star));
      return sol;
    }

    if (stuck) {
      // No exterior point improves, yet the residual is above the roundoff
      // level: numerical breakdown at this scale.
      throw MinNormError("min_norm_point: stalled above tolerance", best_residual);
    }

    corral.push_back(jmin);
    cw.push_back(0.0);

    for (std::size_t guard = 0; guard <= corral.size() + 1; ++guard) {
      std::vector<double> u = affine_minimizer(bundle, corral);
      double umin = u[0];
      for (double v : u) umin = std::min(umin, v);
      if (umin > 0.0) {
        cw = std::move(u);
        break;
      }
      // Largest step from cw toward u that keeps weights nonnegative.
      double theta = 1.0;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] <= 0.0 && cw[i] > u[i]) theta = std::min(theta, cw[i] / (cw[i] - u[i]));
      for (std::size_t i = 0; i < u.size(); ++i) cw[i] = (1.0 - theta) * cw[i] + theta * u[i];

      std::vector<std::size_t> kept_idx;
      std::vector<double> kept_w;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (cw[i] > 1e-15) {
          kept_idx.push_back(corral[i]);
          kept_w.push_back(cw[i]);
        }
      }
      if (kept_idx.empty()) {  // total degeneracy; keep the newest member
        kept_idx.push_back(corral.back());
        kept_w.push_back(1.0);
      }
      corral = std::move(kept_idx);
      cw = std::move(kept_w);
    }
    x = combine(bundle, corral, cw);
  }

  throw MinNormError("min_norm_point: iteration cap exceeded", best_residual);
}

Vec min_norm_oracle(const Bundle& bundle, double grid_step) {
  if (bundle.empty()) throw std::invalid_argument("min_norm_oracle: bundle is empty");
  const std::size_t m = bundle.size();
  if (m > 5) throw std::invalid_argument("min_norm_oracle: bundle too large (max 5 members)");
  if (!(grid_step > 0.0) || grid_step > 1.0)
    throw std::invalid_argument("min_norm_oracle: grid_step must lie in (0,1]");

  // Full enumeration budget; coarsen the grid if the requested resolution
  // would blow it up (m = 4, 5), then let the refinement finish the job.
  auto combos = [](std::size_t k, std::size_t parts) {
    double c = 1.0;
    for (std::size_t i = 1; i < parts; ++i) c *= static_cast<double>(k + i) / static_cast<double>(i);
    return c;
  };
  std::size_t k = static_cast<std::size_t>(std::llround(1.0 / grid_step));
  k = std::max<std::size_t>(k, 1);
  while (k > 4 && combos(k, m) > 6.0e5) k /= 2;

  const std::size_t n = bundle.dim();
  auto eval = [&](const std::vector<double>& w) {
    Vec pt(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) axpy(w[j], bundle.member(j), pt);
    return squared_norm(pt);
  };

  std::vector<double> w(m, 0.0), best_w(m, 0.0);
  best_w[0] = 1.0;
  double best_val = eval(best_w);

  // Enumerate all compositions of k into m nonnegative parts.
  std::vector<std::size_t> c(m, 0);
  c[m - 1] = k;
  while (true) {
    for (std::size_t j = 0; j < m; ++j) w[j] = static_cast<double>(c[j]) / static_cast<double>(k);
    const double v = eval(w);
    if (v < best_val) {
      best_val = v;
      best_w = w;
    }
    // next composition in lexicographic order
    std::size_t j = m - 1;
    while (j > 0 && c[j] == 0) --j;
    if (j == 0) break;
    const std::size_t rem = c[j] - 1;
    ++c[j - 1];
    c[j] = 0;
    c[m - 1] = rem;
  }

  // Pairwise weight-transfer descent with shrinking step.
  double h = 1.0 / static_cast<double>(k);
  while (h > 1e-12) {
    bool improved = false;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j || best_w[j] <= 0.0) continue;
        const double t = std::min(h, best_w[j]);
        std::vector<double> cand = best_w;
        cand[i] += t;
        cand[j] -= t;
        const double v = eval(cand);
        if (v < best_val) {
          best_val = v;
          best_w = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) h *= 0.5;
  }

  Vec pt(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) axpy(best_w[j], bundle.member(j), pt);
  return pt;
}

double distance_to_hull(std::span<const double> point, const Bundle& bundle) {
  if (point.size() != bundle.dim())
    throw std::invalid_argument("distance_to_hull: dimension mismatch");
  Bundle shifted(bundle.dim(), bundle.size());
  Vec tmp(bundle.dim());
  for (std::size_t j = 0; j < bundle.size(); ++j) {
    auto xi = bundle.member(j);
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = xi[i] - point[i];
    shifted.push_back(tmp);
  }
  return min_norm_point(shifted).norm;
}

}  // namespace subopt
