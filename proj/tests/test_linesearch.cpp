#include <doctest.h>

#include <cmath>

#include "subopt/line_search.hpp"
#include "test_support.hpp"

using namespace subopt;

TEST_CASE("bar_t_schedule") {
  CHECK(bar_t_schedule(0.075, 25, 0) == 1.0);
  CHECK(bar_t_schedule(0.075, 25, 25) == doctest::Approx(0.075).epsilon(1e-15));
  CHECK(bar_t_schedule(0.075, 25, 50) == doctest::Approx(0.005625).epsilon(1e-14));

  // strictly decreasing in i
  double prev = bar_t_schedule(0.075, 25, 0);
  for (int i = 1; i <= 60; ++i) {
    const double cur = bar_t_schedule(0.075, 25, i);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("next_trial midpoint rule") {
  CHECK(next_trial(0.0, 0.1, 0.25) == doctest::Approx(0.05));
  CHECK(next_trial(0.02, 0.08, 0.25) == doctest::Approx(0.05));

  // admissible for any zeta < 0.5
  for (double zeta : {0.01, 0.25, 0.49}) {
    const double t = next_trial(0.3, 0.7, zeta);
    const double w = 0.7 - 0.3;
    CHECK(t >= 0.3 + zeta * w);
    CHECK(t <= 0.7 - zeta * w);
  }

  const double t = next_trial(0.05, 0.05 + 1e-15, 0.25);
  CHECK(std::isfinite(t));
  CHECK(t >= 0.05);
  CHECK(t <= 0.05 + 1e-15);
}

TEST_CASE("quadratic objective accepts the unit step immediately") {
  auto oracle = testing::quadratic_1d();
  SolverParams params;
  ValidationStats stats;
  const auto out =
      two_point_line_search(oracle, 0.1, Vec{2.0}, Vec{4.0}, params, &stats);
  REQUIRE(out.kind == LineSearchOutcome::Kind::Descent);
  CHECK(out.step == 1.0);
  CHECK(out.point[0] == doctest::Approx(1.0));
  CHECK(out.f_point == doctest::Approx(1.0));
  CHECK(out.iterations == 1);
  CHECK(stats.total_violations() == 0);
}

TEST_CASE("absolute value near the kink yields a null step with the far-side subgradient") {
  auto oracle = testing::l1_nd(1);
  SolverParams params;
  ValidationStats stats;
  const auto out =
      two_point_line_search(oracle, 0.1, Vec{1e-3}, Vec{1.0}, params, &stats);
  REQUIRE(out.kind == LineSearchOutcome::Kind::NullStep);
  CHECK(out.subgradient[0] == doctest::Approx(-1.0));
  CHECK(stats.total_violations() == 0);
}

TEST_CASE("linear objective: exact decrease accepts step one") {
  ObjectiveOracle oracle(
      1, [](std::span<const double> x) { return 3.0 * x[0]; },
      [](std::span<const double>) { return Vec{3.0}; });
  SolverParams params;
  const auto out = two_point_line_search(oracle, 0.1, Vec{0.0}, Vec{3.0}, params);
  REQUIRE(out.kind == LineSearchOutcome::Kind::Descent);
  CHECK(out.step == 1.0);
  CHECK(out.f_point == doctest::Approx(-3.0));
}

TEST_CASE("an oracle violating the semismoothness contract stalls") {
  // flat function with a wildly wrong subgradient: neither exit can fire
  ObjectiveOracle oracle(
      1, [](std::span<const double>) { return 0.0; },
      [](std::span<const double>) { return Vec{10.0}; });
  SolverParams params;
  params.max_linesearch_iters = 50;
  CHECK_THROWS_AS(two_point_line_search(oracle, 0.1, Vec{0.0}, Vec{1.0}, params),
                  LineSearchStall);
}

TEST_CASE("bracket bookkeeping on a kinked objective") {
  // f(x) = max(-x, 2x - 0.09): kink at 0.03, within the eps ball from 0.1
  ObjectiveOracle oracle(
      1,
      [](std::span<const double> x) { return std::max(-x[0], 2.0 * x[0] - 0.09); },
      [](std::span<const double> x) {
        return Vec{-x[0] < 2.0 * x[0] - 0.09 ? 2.0 : -1.0};
      });
  SolverParams params;
  ValidationStats stats;
  const Vec x{0.1};
  const Vec g{2.0};
  const auto out = two_point_line_search(oracle, 0.09, x, g, params, &stats);
  CHECK(stats.total_violations() == 0);
  CHECK(stats.trial_range_checks == out.iterations);
  CHECK(out.bracket_lo >= 0.0);
  CHECK(out.bracket_hi <= 0.09);
  CHECK(out.bracket_lo <= out.bracket_hi);
}

TEST_CASE("oracle accounting per invocation") {
  auto oracle = testing::quadratic_1d();
  SolverParams params;
  const auto fun_before = oracle.fun_evals();
  const auto sub_before = oracle.sub_evals();
  const auto out = two_point_line_search(oracle, 0.1, Vec{2.0}, Vec{4.0}, params);
  // one f(x), one xi_0, then per iteration two f and (if continuing) one xi
  CHECK(oracle.fun_evals() - fun_before == 1 + 2 * out.iterations);
  CHECK(oracle.sub_evals() - sub_before == 1);
}
