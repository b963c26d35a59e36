#include <doctest.h>

#include <cmath>

#include "subopt/baselines.hpp"
#include "subopt/minnorm.hpp"
#include "subopt/problems.hpp"
#include "subopt/rng.hpp"
#include "test_support.hpp"

using namespace subopt;

TEST_CASE("classical subgradient on |x| tracks the hand-simulated recursion") {
  auto oracle = testing::l1_nd(1);
  SubgradientParams params;
  params.a = 1.0;
  params.max_iters = 100;

  // independent simulation of x+ = x - (1/k) sign(x), best f so far
  double x = 1.0;
  double best = std::fabs(x);
  for (int k = 1; k <= 100; ++k) {
    x -= (1.0 / k) * (x < 0.0 ? -1.0 : 1.0);
    best = std::min(best, std::fabs(x));
  }

  const RunReport report = classical_subgradient(oracle, Vec{1.0}, params);
  CHECK(report.f_end == doctest::Approx(best).epsilon(1e-14));
  CHECK(report.f_end <= 0.02);
}

TEST_CASE("classical subgradient diverges on a linear objective") {
  ObjectiveOracle oracle(
      2, [](std::span<const double> x) { return x[0] + 2.0 * x[1]; },
      [](std::span<const double>) { return Vec{1.0, 2.0}; });
  SubgradientParams params;
  params.max_iters = 100;
  const RunReport report = classical_subgradient(oracle, Vec{0.0, 0.0}, params);
  CHECK(report.status == Status::IterCapReached);
}

TEST_CASE("classical subgradient stops at a zero subgradient") {
  auto oracle = testing::quadratic_nd(2);
  SubgradientParams params;
  const RunReport report = classical_subgradient(oracle, Vec{0.0, 0.0}, params);
  CHECK(report.status == Status::Converged);
}

TEST_CASE("classical subgradient on MAXQ n=50 completes under the cap") {
  auto [oracle, spec] = make_problem("MAXQ", 50);
  SubgradientParams params;
  params.a = norm(spec.default_start) + 1.0;
  const RunReport report = classical_subgradient(oracle, spec.default_start, params, 0.0);
  CHECK((report.status == Status::Converged || report.status == Status::IterCapReached));
  CHECK(report.inner_iters <= 10000);
  CHECK(report.f_end <= oracle.value(spec.default_start));
}

TEST_CASE("gradient sampling reduces a smooth quadratic") {
  auto oracle = testing::quadratic_nd(5);
  GradientSamplingParams params;
  params.max_iters = 200;
  params.seed = 11;
  const Vec x0(5, 1.0);
  const RunReport report = gradient_sampling(oracle, x0, params, 0.0);
  CHECK(report.f_end < 1e-3 * oracle.value(x0));
  CHECK(norm(report.x_end) < 0.2);
}

TEST_CASE("sampled subgradients near a kink straddle it") {
  // f = |x_1|; from x = (0.05, 0, 0) with radius 0.1 the sample sees both signs
  ObjectiveOracle oracle(
      3, [](std::span<const double> x) { return std::fabs(x[0]); },
      [](std::span<const double> x) {
        return Vec{x[0] < 0.0 ? -1.0 : 1.0, 0.0, 0.0};
      });
  const Vec x{0.05, 0.0, 0.0};
  Rng rng(1234);
  Bundle bundle(3);
  bundle.push_back(oracle.subgradient(x));
  for (int s = 0; s < 6; ++s) bundle.push_back(oracle.subgradient(sample_in_ball(x, 0.1, rng)));

  bool saw_minus = false;
  for (std::size_t j = 0; j < bundle.size(); ++j) saw_minus |= bundle.member(j)[0] < 0.0;
  CHECK(saw_minus);
  CHECK(min_norm_point(bundle).norm < 1.0);
}

TEST_CASE("zero sample size degenerates to steepest descent on the lone subgradient") {
  auto oracle = testing::quadratic_nd(3);
  GradientSamplingParams params;
  params.sample_size = 0;
  params.max_iters = 100;
  params.seed = 4;
  const Vec x0{2.0, -1.0, 1.0};
  const RunReport report = gradient_sampling(oracle, x0, params, 0.0);
  CHECK(report.sub_evals == report.inner_iters);  // one subgradient per iteration
  CHECK(report.f_end < oracle.value(x0));

  // the min-norm point of a singleton bundle is that subgradient itself
  Bundle b(3);
  b.push_back(oracle.subgradient(x0));
  const auto sol = min_norm_point(b);
  CHECK(testing::max_abs_diff(sol.g_star, oracle.subgradient(x0)) == 0.0);
}

TEST_CASE("gradient sampling run is deterministic per seed") {
  auto [oracle1, spec1] = make_problem("ChainedCrescentII", 6);
  auto [oracle2, spec2] = make_problem("ChainedCrescentII", 6);
  GradientSamplingParams params;
  params.max_iters = 30;
  params.seed = 99;
  const RunReport a = gradient_sampling(oracle1, spec1.default_start, params, 0.0);
  const RunReport b = gradient_sampling(oracle2, spec2.default_start, params, 0.0);
  CHECK(a.f_end == b.f_end);
  CHECK(a.fun_evals == b.fun_evals);
  CHECK(a.sub_evals == b.sub_evals);
}
