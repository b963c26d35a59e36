#pragma once

#include <string>
#include <utility>
#include <vector>

#include "subopt/core.hpp"

namespace subopt {

/// Metadata for one benchmark objective.
struct ProblemSpec {
  std::string name;
  int dimension = 0;
  double f_star = 0.0;       // known (local) optimal value, when available
  bool f_star_known = true;  // false where the optimum depends on n and no
                             // reference constant has been recorded
  bool convex = false;
  Vec default_start;
};

/// Names of the ten benchmark objectives, in roster order.
const std::vector<std::string>& problem_names();

bool is_problem_name(const std::string& name);

/// Builds the named objective at dimension n (n >= 2) with its analytic
/// subgradient and the standard starting point. Max-type selections break
/// ties to the lowest index / first term; sign(0) is taken as +1.
/// Throws std::invalid_argument for unknown names.
std::pair<ObjectiveOracle, ProblemSpec> make_problem(const std::string& name, int n);

/// Uniform sample from the open ball centered at the default start with
/// radius (||start|| + 1)/n. Deterministic per seed.
Vec random_start(std::span<const double> default_start, int n, std::uint64_t seed);

/// E = |f - f*| / (|f*| + 1).
double relative_error(double f_val, double f_star);

}  // namespace subopt
