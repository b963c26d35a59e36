#include "subopt/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

#include "subopt/blocked_reduce.hpp"

namespace subopt {

namespace {

double sign_plus(double v) { return v < 0.0 ? -1.0 : 1.0; }

double grid_point(double a, double b, int grid_size, int k) {
  return a + (b - a) * static_cast<double>(k) / static_cast<double>(grid_size - 1);
}

struct ScanPartial {
  double best = -1.0;
  int idx = -1;
  bool bad = false;
};

}  // namespace

std::pair<int, double> error_grid_argmax(const PolyCoeffs& c, const TargetFn& target,
                                         double a, double b, int grid_size) {
  const ScanPartial total = blocked_reduce(
      static_cast<std::size_t>(grid_size), ScanPartial{},
      [&](std::size_t lo, std::size_t hi) {
        ScanPartial p;
        for (std::size_t k = lo; k < hi; ++k) {
          const double x = grid_point(a, b, grid_size, static_cast<int>(k));
          const double e = c.eval(x) - target(x);
          if (!std::isfinite(e)) {
            p.bad = true;
            continue;
          }
          const double v = std::fabs(e);
          if (v > p.best) {
            p.best = v;
            p.idx = static_cast<int>(k);
          }
        }
        return p;
      },
      [](ScanPartial& acc, const ScanPartial& p) {
        acc.bad = acc.bad || p.bad;
        if (p.best > acc.best) {  // strict: lowest index wins ties
          acc.best = p.best;
          acc.idx = p.idx;
        }
      });
  if (total.bad)
    throw std::invalid_argument("inner_max: non-finite target value on the grid");
  return {total.idx, total.best};
}

std::pair<int, double> error_grid_argmax_reference(const PolyCoeffs& c, const TargetFn& target,
                                                   double a, double b, int grid_size) {
  double best = -1.0;
  int idx = -1;
  bool bad = false;
  for (int k = 0; k < grid_size; ++k) {
    const double x = grid_point(a, b, grid_size, k);
    const double e = c.eval(x) - target(x);
    if (!std::isfinite(e)) {
      bad = true;
      continue;
    }
    const double v = std::fabs(e);
    if (v > best) {
      best = v;
      idx = k;
    }
  }
  if (bad) throw std::invalid_argument("inner_max: non-finite target value on the grid");
  return {idx, best};
}

InnerMaxResult inner_max(const PolyCoeffs& c, const TargetFn& target, double a, double b,
                         int grid_size, double refine_tol) {
  if (!(a < b)) throw std::invalid_argument("inner_max: need a < b");
  if (grid_size < 2) throw std::invalid_argument("inner_max: grid_size must be >= 2");

  const auto [k, grid_best] = error_grid_argmax(c, target, a, b, grid_size);

  InnerMaxResult best;
  best.x_star = grid_point(a, b, grid_size, k);
  best.value = grid_best;

  auto phi = [&](double x) { return std::fabs(c.eval(x) - target(x)); };
  auto consider = [&](double x, double v) {
    if (v > best.value) {
      best.value = v;
      best.x_star = x;
    }
  };

  // golden section over the two cells adjacent to the best grid point
  double lo = grid_point(a, b, grid_size, std::max(0, k - 1));
  double hi = grid_point(a, b, grid_size, std::min(grid_size - 1, k + 1));
  constexpr double invphi = 0.6180339887498948482;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = phi(x1);
  double f2 = phi(x2);
  consider(x1, f1);
  consider(x2, f2);
  while (hi - lo > refine_tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = phi(x2);
      consider(x2, f2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = phi(x1);
      consider(x1, f1);
    }
  }
  return best;
}

ObjectiveOracle cheby_objective(const TargetFn& target, double a, double b, int degree,
                                int grid_size, double refine_tol) {
  if (!(a < b)) throw std::invalid_argument("cheby_objective: need a < b");
  if (degree < 0) throw std::invalid_argument("cheby_objective: degree must be >= 0");
  if (grid_size < 2) throw std::invalid_argument("cheby_objective: grid_size must be >= 2");

  const int dim = degree + 1;
  auto make_coeffs = [](std::span<const double> x) {
    PolyCoeffs pc;
    pc.c.assign(x.begin(), x.end());
    return pc;
  };

  return ObjectiveOracle(
      dim,
      [=](std::span<const double> x) {
        return inner_max(make_coeffs(x), target, a, b, grid_size, refine_tol).value;
      },
      [=](std::span<const double> x) {
        const PolyCoeffs pc = make_coeffs(x);
        const InnerMaxResult r = inner_max(pc, target, a, b, grid_size, refine_tol);
        const double e = pc.eval(r.x_star) - target(r.x_star);
        const double s = sign_plus(e);
        Vec g(static_cast<std::size_t>(dim));
        g[dim - 1] = s;  // d/dc_0
        for (int i = dim - 2; i >= 0; --i) g[i] = g[i + 1] * r.x_star;
        return g;
      });
}

int alternation_check(const PolyCoeffs& c, const TargetFn& target, double a, double b,
                      double tol, int grid_size) {
  const int dense = 10 * grid_size;
  double emax = 0.0;
  std::vector<double> e(static_cast<std::size_t>(dense));
  for (int k = 0; k < dense; ++k) {
    const double x = grid_point(a, b, dense, k);
    e[k] = c.eval(x) - target(x);
    emax = std::max(emax, std::fabs(e[k]));
  }
  int count = 0;
  double last_sign = 0.0;
  for (int k = 0; k < dense; ++k) {
    if (std::fabs(e[k]) < emax - tol) continue;
    const double s = sign_plus(e[k]);
    if (s != last_sign) {
      ++count;
      last_sign = s;
    }
  }
  return count;
}

const std::vector<ChebyTarget>& cheby_targets() {
  static const std::vector<ChebyTarget> targets = {
      {"sin2x", [](double x) { return std::sin(2.0 * x); }, -3.14159265358979323846,
       3.14159265358979323846},
      {"abs", [](double x) { return std::fabs(x); }, -1.0, 1.0},
      {"runge", [](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0},
  };
  return targets;
}

const ChebyTarget* find_cheby_target(const std::string& name) {
  for (const auto& t : cheby_targets())
    if (t.name == name) return &t;
  return nullptr;
}

}  // namespace subopt
