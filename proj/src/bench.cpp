#include "subopt/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "subopt/baselines.hpp"
#include "subopt/problems.hpp"
#include "subopt/rng.hpp"
#include "subopt/solver.hpp"

namespace subopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BenchResult run_one(const std::string& problem, const std::string& solver,
                    const SuiteConfig& config, ValidationStats* stats) {
  BenchResult result;
  result.problem = problem;
  result.solver = solver;
  result.n = config.n;
  result.seed = config.seed;
  result.f_end = std::numeric_limits<double>::quiet_NaN();
  result.E_end = std::numeric_limits<double>::quiet_NaN();

  try {
    auto [oracle, spec] = make_problem(problem, config.n);
    const Vec x0 =
        random_start(spec.default_start, config.n, mix_seed(config.seed, hash_name(problem)));

    RunReport report;
    const auto t_start = std::chrono::steady_clock::now();

    if (solver == "subopt") {
      SolveHooks hooks;
      hooks.stats = stats;
      hooks.check_hull_distance = config.check_hull_distance;
      const double f_star = spec.f_star;
      const bool f_star_known = spec.f_star_known;
      const double tol_E = config.tol_E;
      const long long cap = config.max_iters;
      hooks.should_stop = [f_star, f_star_known, tol_E,
                           cap](long long iters, double f) -> std::optional<Status> {
        if (f_star_known && relative_error(f, f_star) < tol_E) return Status::Converged;
        if (iters >= cap) return Status::IterCapReached;
        return std::nullopt;
      };
      SolverParams params = config.params;
      params.max_inner_iters = std::max(params.max_inner_iters, config.max_iters);
      report = solve(oracle, x0, params, hooks).report;
    } else if (solver == "subg") {
      SubgradientParams params;
      params.a = norm(x0) + 1.0;
      params.max_iters = config.max_iters;
      params.tol_E = config.tol_E;
      report = classical_subgradient(
          oracle, x0, params,
          spec.f_star_known ? std::optional<double>(spec.f_star) : std::nullopt);
    } else if (solver == "gs") {
      GradientSamplingParams params;
      params.max_iters = config.max_iters;
      params.tol_E = config.tol_E;
      params.seed = mix_seed(config.seed, hash_name(problem) ^ hash_name(solver));
      report = gradient_sampling(
          oracle, x0, params,
          spec.f_star_known ? std::optional<double>(spec.f_star) : std::nullopt);
    } else {
      throw std::invalid_argument("unknown solver: " + solver);
    }

    result.cost_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    result.cost_evals = report.fun_evals + report.sub_evals;
    result.f_end = report.f_end;
    if (spec.f_star_known) result.E_end = relative_error(report.f_end, spec.f_star);
    result.success = spec.f_star_known && result.E_end < config.tol_E &&
                     report.status != Status::IterCapReached;
  } catch (const std::exception&) {
    result.success = false;
  }
  return result;
}

void format_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {"subopt", "subg", "gs"};
  return names;
}

bool is_solver_name(const std::string& name) {
  const auto& names = solver_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<BenchResult> run_suite(const SuiteConfig& config, ValidationStats* stats) {
  for (const auto& p : config.problems)
    if (!is_problem_name(p)) throw std::invalid_argument("run_suite: unknown problem " + p);
  for (const auto& s : config.solvers)
    if (!is_solver_name(s)) throw std::invalid_argument("run_suite: unknown solver " + s);
  if (config.n < 2) throw std::invalid_argument("run_suite: n must be at least 2");

  struct Task {
    const std::string* problem;
    const std::string* solver;
  };
  std::vector<Task> grid;
  for (const auto& p : config.problems)
    for (const auto& s : config.solvers) grid.push_back({&p, &s});

  std::vector<BenchResult> results(grid.size());
  std::vector<ValidationStats> local_stats(stats ? grid.size() : 0);

  if (config.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
      results[i] = run_one(*grid[i].problem, *grid[i].solver, config,
                           stats ? &local_stats[i] : nullptr);
    }
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      results[i] = run_one(*grid[i].problem, *grid[i].solver, config,
                           stats ? &local_stats[i] : nullptr);
    }
  }
  if (stats)
    for (const auto& ls : local_stats) stats->merge(ls);
  return results;
}

std::vector<SolverProfile> performance_profile(const std::vector<BenchResult>& results,
                                               ProfileMetric metric, int samples) {
  if (results.empty()) return {};

  auto cost_of = [&](const BenchResult& r) {
    return metric == ProfileMetric::Evals ? static_cast<double>(r.cost_evals) : r.cost_time;
  };

  // problem instances and solvers in first-appearance order
  std::vector<std::string> problems;
  std::vector<std::string> solvers;
  for (const auto& r : results) {
    if (std::find(problems.begin(), problems.end(), r.problem) == problems.end())
      problems.push_back(r.problem);
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end())
      solvers.push_back(r.solver);
  }

  // ratio r_{p,s} = cost / best successful cost on p; failures get +inf
  std::map<std::pair<std::string, std::string>, double> ratio;
  double tau_max = 1.0;
  for (const auto& p : problems) {
    double best = kInf;
    for (const auto& r : results)
      if (r.problem == p && r.success) best = std::min(best, cost_of(r));
    for (const auto& r : results) {
      if (r.problem != p) continue;
      double rr = kInf;
      if (r.success && best > 0.0 && std::isfinite(best)) rr = cost_of(r) / best;
      ratio[{p, r.solver}] = rr;
      if (std::isfinite(rr)) tau_max = std::max(tau_max, rr);
    }
  }

  const double np = static_cast<double>(problems.size());
  std::vector<SolverProfile> profiles;
  for (const auto& s : solvers) {
    SolverProfile prof;
    prof.solver = s;
    prof.points.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
      const double t = samples == 1
                           ? 0.0
                           : static_cast<double>(i) / static_cast<double>(samples - 1);
      const double tau = std::exp(std::log(tau_max) * t);  // log-uniform on [1, tau_max]
      int count = 0;
      for (const auto& p : problems) {
        const auto it = ratio.find({p, s});
        if (it != ratio.end() && it->second <= tau) ++count;
      }
      prof.points.push_back({tau, static_cast<double>(count) / np});
    }
    profiles.push_back(std::move(prof));
  }
  return profiles;
}

void emit_csv(const std::vector<BenchResult>& results, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << "problem,solver,n,seed,cost_evals,cost_time,success,f_end,E_end\n";
  for (const auto& r : results) {
    std::string line;
    line += r.problem;
    line += ',';
    line += r.solver;
    line += ',';
    line += std::to_string(r.n);
    line += ',';
    line += std::to_string(r.seed);
    line += ',';
    line += std::to_string(r.cost_evals);
    line += ',';
    format_double(line, r.cost_time);
    line += ',';
    line += r.success ? '1' : '0';
    line += ',';
    format_double(line, r.f_end);
    line += ',';
    format_double(line, r.E_end);
    out << line << '\n';
  }
}

void emit_csv(const std::vector<SolverProfile>& profiles, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << "solver,tau,rho\n";
  for (const auto& prof : profiles) {
    for (const auto& pt : prof.points) {
      std::string line;
      line += prof.solver;
      line += ',';
      format_double(line, pt.tau);
      line += ',';
      format_double(line, pt.rho);
      out << line << '\n';
    }
  }
}

std::vector<BenchResult> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_results_csv: cannot open " + path);

  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      if (pos == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    return fields;
  };
  auto to_double = [](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw std::runtime_error("read_results_csv: bad number " + s);
    return v;
  };

  std::vector<BenchResult> results;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 9) throw std::runtime_error("read_results_csv: malformed row");
    BenchResult r;
    r.problem = f[0];
    r.solver = f[1];
    r.n = std::stoi(f[2]);
    r.seed = std::stoull(f[3]);
    r.cost_evals = std::stoll(f[4]);
    r.cost_time = to_double(f[5]);
    r.success = f[6] == "1";
    r.f_end = to_double(f[7]);
    r.E_end = to_double(f[8]);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace subopt
