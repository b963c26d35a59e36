#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subopt/core.hpp"
#include "subopt/line_search.hpp"

namespace subopt {

/// Outcome of one (problem, solver, seed) run under the benchmark protocol:
/// stop once E = |f - f*| / (|f*| + 1) drops below tol_E, cap the iteration
/// count, record evaluation and time costs.
struct BenchResult {
  std::string problem;
  std::string solver;
  int n = 0;
  std::uint64_t seed = 0;
  std::int64_t cost_evals = 0;  // #Fun + #Sub
  double cost_time = 0.0;       // seconds
  bool success = false;         // E_end < tol_E and the cap was not hit
  double f_end = 0.0;
  double E_end = 0.0;
};

struct SuiteConfig {
  std::vector<std::string> problems;  // names from the problem registry
  std::vector<std::string> solvers;   // subset of {"subopt", "subg", "gs"}
  int n = 50;
  std::uint64_t seed = 0;
  SolverParams params;       // used by the "subopt" runs
  double tol_E = 5e-4;
  long long max_iters = 10000;
  bool parallel = true;      // run grid entries concurrently
  bool check_hull_distance = false;  // extra per-null-step validation
};

const std::vector<std::string>& solver_names();
bool is_solver_name(const std::string& name);

/// Runs the full grid. One result per (problem, solver) pair in config
/// order; per-run starting points derive deterministically from the seed and
/// the problem name, so every solver sees the same start. Individual run
/// failures become unsuccessful results; the suite never aborts.
/// Postcondition tallies land in `stats` when given.
std::vector<BenchResult> run_suite(const SuiteConfig& config, ValidationStats* stats = nullptr);

enum class ProfileMetric { Evals, Time };

struct ProfilePoint {
  double tau = 1.0;
  double rho = 0.0;
};

struct SolverProfile {
  std::string solver;
  std::vector<ProfilePoint> points;
};

/// Performance profiles: per-problem cost ratios against the best solver
/// (failures get an infinite ratio), cumulative fraction rho_s(tau) sampled
/// log-uniformly on [1, max finite ratio].
std::vector<SolverProfile> performance_profile(const std::vector<BenchResult>& results,
                                               ProfileMetric metric, int samples = 200);

/// CSV emission; numbers are written with round-trip precision.
void emit_csv(const std::vector<BenchResult>& results, const std::string& path);
void emit_csv(const std::vector<SolverProfile>& profiles, const std::string& path);

/// Inverse of emit_csv for results files.
std::vector<BenchResult> read_results_csv(const std::string& path);

}  // namespace subopt
