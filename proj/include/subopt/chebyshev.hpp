#pragma once

#include <functional>
#include <string>
#include <vector>

#include "subopt/core.hpp"

namespace subopt {

/// Polynomial coefficients ordered (c_n, ..., c_1, c_0); evaluated in
/// nested (Horner) form.
struct PolyCoeffs {
  Vec c;

  int degree() const { return static_cast<int>(c.size()) - 1; }

  double eval(double x) const {
    double acc = 0.0;
    for (double ci : c) acc = acc * x + ci;
    return acc;
  }
};

using TargetFn = std::function<double(double)>;

/// Location and value of the maximum of |p_c(x) - target(x)| over [a, b]:
/// scan a uniform grid, then refine around the best grid point by golden
/// section over the two adjacent cells until the bracket width drops below
/// refine_tol.
struct InnerMaxResult {
  double x_star = 0.0;
  double value = 0.0;
};

InnerMaxResult inner_max(const PolyCoeffs& c, const TargetFn& target, double a, double b,
                         int grid_size, double refine_tol);

/// Serial reference for the grid scan used inside inner_max (argmax of
/// |error| over the grid, lowest index on ties). The production scan is a
/// deterministic blocked reduction; both return identical results.
std::pair<int, double> error_grid_argmax(const PolyCoeffs& c, const TargetFn& target,
                                         double a, double b, int grid_size);
std::pair<int, double> error_grid_argmax_reference(const PolyCoeffs& c, const TargetFn& target,
                                                   double a, double b, int grid_size);

struct ChebyParams {
  double a = -1.0;
  double b = 1.0;
  int grid_size = 2000;
  double refine_tol = 1e-10;
};

/// Sup-norm error h(c) = max_x |p_c(x) - target(x)| as an oracle over the
/// coefficient vector. The subgradient at c is sign(e(x*)) * (x*^n, ..., x*, 1)
/// with x* the located maximizer; sign(0) is +1.
ObjectiveOracle cheby_objective(const TargetFn& target, double a, double b, int degree,
                                int grid_size = 2000, double refine_tol = 1e-10);

/// Counts the longest sign-alternating run of near-extremal points of the
/// error e(x) = p_c(x) - target(x): scans a grid ten times denser than
/// grid_size for points with |e| >= ||e||_inf - tol.
int alternation_check(const PolyCoeffs& c, const TargetFn& target, double a, double b,
                      double tol, int grid_size = 2000);

/// Named targets available to the command line: sin2x, abs, runge.
struct ChebyTarget {
  std::string name;
  TargetFn fn;
  double default_a = -1.0;
  double default_b = 1.0;
};

const std::vector<ChebyTarget>& cheby_targets();
const ChebyTarget* find_cheby_target(const std::string& name);

}  // namespace subopt
