#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "subopt/bench.hpp"

using namespace subopt;

namespace {

BenchResult mk(const std::string& problem, const std::string& solver, bool success,
               std::int64_t evals) {
  BenchResult r;
  r.problem = problem;
  r.solver = solver;
  r.n = 10;
  r.seed = 1;
  r.cost_evals = evals;
  r.cost_time = static_cast<double>(evals) * 1e-3;
  r.success = success;
  r.f_end = 0.0;
  r.E_end = success ? 1e-5 : 1.0;
  return r;
}

std::size_t count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  return lines;
}

}  // namespace

TEST_CASE("profile of a single all-success solver is flat at one") {
  std::vector<BenchResult> results;
  for (int i = 0; i < 4; ++i) results.push_back(mk("p" + std::to_string(i), "a", true, 100 + i));
  const auto profiles = performance_profile(results, ProfileMetric::Evals, 50);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].points.front().tau == doctest::Approx(1.0));
  CHECK(profiles[0].points.front().rho == doctest::Approx(1.0));
  CHECK(profiles[0].points.back().rho == doctest::Approx(1.0));
}

TEST_CASE("a dominated solver starts at zero") {
  std::vector<BenchResult> results;
  for (int i = 0; i < 5; ++i) {
    results.push_back(mk("p" + std::to_string(i), "a", true, 100));
    results.push_back(mk("p" + std::to_string(i), "b", true, 150));
  }
  const auto profiles = performance_profile(results, ProfileMetric::Evals, 100);
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].points.front().rho == doctest::Approx(1.0));  // solver a at tau = 1
  CHECK(profiles[1].points.front().rho == doctest::Approx(0.0));  // solver b at tau = 1
  CHECK(profiles[1].points.back().rho == doctest::Approx(1.0));   // catches up by tau_max
}

TEST_CASE("failures cap the profile at the success fraction") {
  std::vector<BenchResult> results;
  for (int i = 0; i < 10; ++i) results.push_back(mk("p" + std::to_string(i), "s", i < 6, 10));
  const auto profiles = performance_profile(results, ProfileMetric::Evals, 20);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].points.back().rho == doctest::Approx(0.6));
  for (std::size_t i = 1; i < profiles[0].points.size(); ++i)
    CHECK(profiles[0].points[i].rho >= profiles[0].points[i - 1].rho);  // nondecreasing
}

TEST_CASE("all-failure profiles stay at zero") {
  std::vector<BenchResult> results;
  for (int i = 0; i < 4; ++i) results.push_back(mk("p" + std::to_string(i), "s", false, 10));
  const auto profiles = performance_profile(results, ProfileMetric::Evals, 10);
  REQUIRE(profiles.size() == 1);
  for (const auto& pt : profiles[0].points) CHECK(pt.rho == 0.0);
}

TEST_CASE("csv line counts") {
  const auto dir = std::filesystem::temp_directory_path();

  std::vector<BenchResult> results;
  for (int i = 0; i < 10; ++i) results.push_back(mk("p" + std::to_string(i), "a", true, 50 + i));
  const auto rp = dir / "subopt_results.csv";
  emit_csv(results, rp.string());
  CHECK(count_lines(rp) == 11);

  std::vector<BenchResult> two;
  for (int i = 0; i < 3; ++i) {
    two.push_back(mk("p" + std::to_string(i), "a", true, 10 + i));
    two.push_back(mk("p" + std::to_string(i), "b", true, 20 - i));
  }
  const auto profiles = performance_profile(two, ProfileMetric::Evals, 100);
  const auto pp = dir / "subopt_profile.csv";
  emit_csv(profiles, pp.string());
  CHECK(count_lines(pp) == 201);

  std::filesystem::remove(rp);
  std::filesystem::remove(pp);
}

TEST_CASE("results survive a csv round trip exactly") {
  std::vector<BenchResult> results;
  results.push_back(mk("MAXQ", "subopt", true, 1234));
  results.back().f_end = 1.2345678901234567e-5;
  results.back().E_end = 9.87654321e-7;
  results.back().cost_time = 0.1234567890123456;
  results.push_back(mk("Brown2", "gs", false, 99999));
  results.back().f_end = -34.79497514609998;

  const auto p = std::filesystem::temp_directory_path() / "subopt_roundtrip.csv";
  emit_csv(results, p.string());
  const auto back = read_results_csv(p.string());
  REQUIRE(back.size() == results.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].problem == results[i].problem);
    CHECK(back[i].solver == results[i].solver);
    CHECK(back[i].n == results[i].n);
    CHECK(back[i].seed == results[i].seed);
    CHECK(back[i].cost_evals == results[i].cost_evals);
    CHECK(back[i].cost_time == results[i].cost_time);
    CHECK(back[i].success == results[i].success);
    CHECK(back[i].f_end == results[i].f_end);
    CHECK(back[i].E_end == results[i].E_end);
  }
  std::filesystem::remove(p);
}

TEST_CASE("empty problem list gives an empty result set") {
  SuiteConfig config;
  config.problems = {};
  config.solvers = {"subg"};
  config.n = 4;
  CHECK(run_suite(config).empty());
}

TEST_CASE("identical configs reproduce evaluation counts") {
  SuiteConfig config;
  config.problems = {"MAXL", "MAXQ"};
  config.solvers = {"subopt", "subg"};
  config.n = 4;
  config.seed = 3;
  config.max_iters = 500;
  const auto a = run_suite(config);
  const auto b = run_suite(config);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].cost_evals == b[i].cost_evals);
    CHECK(a[i].f_end == b[i].f_end);
  }
}

TEST_CASE("runs without a reference optimum are recorded, not thrown") {
  SuiteConfig config;
  config.problems = {"ChainedMifflin2"};  // no recorded f* at n = 7
  config.solvers = {"subg"};
  config.n = 7;
  config.max_iters = 50;
  const auto results = run_suite(config);
  REQUIRE(results.size() == 1);
  CHECK(!results[0].success);
  CHECK(std::isnan(results[0].E_end));
}

TEST_CASE("config validation") {
  SuiteConfig config;
  config.problems = {"NOT_A_PROBLEM"};
  config.solvers = {"subg"};
  CHECK_THROWS_AS(run_suite(config), std::invalid_argument);
  config.problems = {"MAXQ"};
  config.solvers = {"mystery"};
  CHECK_THROWS_AS(run_suite(config), std::invalid_argument);
}
