#pragma once

#include <cstdint>
#include <optional>

#include "subopt/core.hpp"

namespace subopt {

enum class StepRule { Harmonic, Constant };

struct SubgradientParams {
  StepRule rule = StepRule::Harmonic;
  double a = 1.0;                 // step scale: a/k (harmonic) or a (constant)
  long long max_iters = 10000;
  double tol_E = 5e-4;            // stop once relative error drops below this
};

/// Classical subgradient recursion x+ = x - alpha_k xi/||xi|| with an
/// off-line step sequence. Tracks the best point seen; no descent guarantee.
RunReport classical_subgradient(const ObjectiveOracle& oracle, std::span<const double> x0,
                                const SubgradientParams& params,
                                std::optional<double> f_star = std::nullopt);

struct GradientSamplingParams {
  int sample_size = -1;           // negative defaults to 2n at solve time;
                                  // 0 keeps only the iterate's subgradient
  double eps0 = 0.1;              // sampling radius
  double nu0 = 0.1;               // stationarity target paired with eps
  double shrink = 0.1;            // radius/target factor when ||g*|| <= nu
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 50;
  long long max_iters = 10000;
  double tol_E = 5e-4;
  double eta = 1e-8;              // stop once nu falls below eta
  std::uint64_t seed = 0;
};

/// Gradient sampling: per iteration, subgradients at the iterate plus
/// sample_size points drawn uniformly from B(x, eps) feed the same min-norm
/// subproblem used by the main solver; the step comes from Armijo
/// backtracking along -g*/||g*||. A deliberately compact variant kept for
/// benchmark comparisons: trial points are not checked for differentiability
/// and the radius shrinks by a fixed factor.
RunReport gradient_sampling(const ObjectiveOracle& oracle, std::span<const double> x0,
                            const GradientSamplingParams& params,
                            std::optional<double> f_star = std::nullopt);

}  // namespace subopt
