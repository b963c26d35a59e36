#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "subopt/vecmath.hpp"

namespace subopt {

/// Shared evaluation counters. A solver run owns one oracle; copies of the
/// oracle share the same counters so wrappers stay in sync.
struct EvalCounts {
  std::atomic<std::int64_t> fun{0};
  std::atomic<std::int64_t> sub{0};
};

/// First-order oracle: f(x) and one arbitrary Clarke subgradient at x.
///
/// `value` must be deterministic. `subgradient` may return any valid
/// subgradient at nondifferentiable points. Every call is counted.
class ObjectiveOracle {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using SubgradFn = std::function<Vec(std::span<const double>)>;

  ObjectiveOracle(int dimension, ValueFn value, SubgradFn subgradient)
      : dim_(dimension),
        value_(std::move(value)),
        subgrad_(std::move(subgradient)),
        counts_(std::make_shared<EvalCounts>()) {}

  double value(std::span<const double> x) const {
    counts_->fun.fetch_add(1, std::memory_order_relaxed);
    return value_(x);
  }

  Vec subgradient(std::span<const double> x) const {
    counts_->sub.fetch_add(1, std::memory_order_relaxed);
    return subgrad_(x);
  }

  int dimension() const noexcept { return dim_; }

  std::int64_t fun_evals() const { return counts_->fun.load(std::memory_order_relaxed); }
  std::int64_t sub_evals() const { return counts_->sub.load(std::memory_order_relaxed); }

  void reset_counts() {
    counts_->fun.store(0, std::memory_order_relaxed);
    counts_->sub.store(0, std::memory_order_relaxed);
  }

 private:
  int dim_;
  ValueFn value_;
  SubgradFn subgrad_;
  std::shared_ptr<EvalCounts> counts_;
};

/// All solver tunables. Defaults follow the reference configuration:
/// beta1=1e-6, beta2=0.1, tbar = eps/2, p=25, delta0=1, eps0=0.1,
/// halving schedules for delta and eps.
struct SolverParams {
  double beta1 = 1e-6;          // sufficient decrease, in (0,1)
  double beta2 = 0.1;           // null-step slope bound, in (0,1), beta1 < beta2
  double zeta = 0.25;           // bracket reduction factor, in (0, 0.5)
  int p = 25;                   // descent-step schedule exponent divisor
  double eps0 = 0.1;            // initial ball radius, in (0,1)
  double delta0 = 1.0;          // initial stationarity tolerance
  double reduce_eps = 0.5;      // per-round eps factor, in (0,1)
  double reduce_delta = 0.5;    // per-round delta factor, in (0,1)
  double eta = 1e-8;            // final optimality tolerance, >= 0
  double tbar_fraction = 0.5;   // tbar := tbar_fraction * eps, in (0,1)
  long long max_inner_iters = 10000;  // per stationarity round
  int max_linesearch_iters = 200;
  bool reset_enabled = false;   // bundle reset strategy off by default
  int reset_M = 20;             // bundle size bound, > 2
  double reset_theta = 0.9;     // retained weight mass, in (0,1]

  /// The trial step is pinned to t0 := (tbar + eps)/2, between tbar and eps.
  double t0(double eps) const { return 0.5 * (tbar_fraction * eps + eps); }
  double tbar(double eps) const { return tbar_fraction * eps; }
};

/// Checks every parameter domain; throws std::invalid_argument naming the
/// offending field. Returns the params unchanged when valid.
SolverParams validate_params(const SolverParams& params);

enum class Status {
  Converged,
  IterCapReached,
  LineSearchStalled,
};

std::string to_string(Status s);

/// Per-run accounting: oracle calls, iteration counts, final iterate.
struct RunReport {
  std::int64_t fun_evals = 0;
  std::int64_t sub_evals = 0;
  long long inner_iters = 0;
  long long outer_iters = 0;
  double f_end = 0.0;
  Vec x_end;
  Status status = Status::Converged;
  double wall_time = 0.0;  // seconds around the solve call
};

}  // namespace subopt
