#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "powergrad/harness.hpp"
#include "powergrad/rng.hpp"

using namespace powergrad;

TEST_CASE("keyed generator output is pinned") {
  // Seeded start points are interface: changing the generator silently would
  // shift every recorded experiment. These values are frozen on purpose.
  CHECK(keyed_bits(0, 0) == 0xa706dd2f4d197e6fULL);
  CHECK(keyed_bits(42, 0) == 0x57e1faba65107204ULL);
  CHECK(keyed_bits(42, 1) == 0xf4abd143feb24055ULL);
  CHECK(keyed_uniform01(42, 0) == 0.34329192209867343);
  CHECK(keyed_uniform01(7, 123456789) == 0.20099295148653717);
}

TEST_CASE("start sampling is deterministic and in-domain") {
  const Domain unit{{{0.0, 1.0}, {0.0, 1.0}}};
  const auto a = sample_starts(unit, 3, 42);
  const auto b = sample_starts(unit, 3, 42);
  CHECK(a == b);
  CHECK(hash_points(a) == hash_points(b));
  CHECK(hash_points(a) != hash_points(sample_starts(unit, 3, 43)));

  const Domain box{{{-3.0, 3.0}, {-3.0, 3.0}}};
  for (const Vec& p : sample_starts(box, 10000, 7)) {
    REQUIRE(box.contains(p));
  }
}

TEST_CASE("sample i does not depend on how many points are drawn") {
  const Domain box{{{-2.0, 5.0}, {1.0, 4.0}}};
  const auto few = sample_starts(box, 5, 99);
  const auto many = sample_starts(box, 50, 99);
  for (int i = 0; i < 5; ++i) CHECK(few[i] == many[i]);
  CHECK(sample_start(box, 99, 3) == few[3]);
}

TEST_CASE("per-coordinate sample mean approaches the box center") {
  const Domain unit{{{0.0, 1.0}}};
  double sum = 0.0;
  const int n = 100000;
  for (const Vec& p : sample_starts(unit, n, 12345)) sum += p[0];
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("a start at the minimum converges at step 0") {
  const CostFunction f = make_v1();
  OptimizerConfig config = make_method_config("h_adam");
  config.eta = 0.1;
  const RunRecord rec = run_trajectory(f, config, {0.0, 0.0}, StopCriteria{});
  CHECK(rec.termination == TerminationReason::ConvergedValue);
  CHECK(rec.steps_used == 0);
  CHECK(rec.final_value == 0.0);
  CHECK(rec.best_value == 0.0);
}

TEST_CASE("adam from a near-minimum start converges quickly on v1") {
  const CostFunction f = make_v1();
  OptimizerConfig config = make_method_config("adam");
  config.eta = 0.1;
  StopCriteria criteria;
  criteria.max_steps = 1000;
  const RunRecord rec = run_trajectory(f, config, {0.1, 0.1}, criteria);
  CHECK(rec.termination == TerminationReason::ConvergedValue);
  CHECK(rec.steps_used <= 1000);
  CHECK(rec.final_value < 1e-4);
  CHECK(rec.best_value <= f.evaluate(rec.start_point));
}

TEST_CASE("h-GD on the quadratic ends in a detected orbit") {
  const CostFunction f = make_quadratic(1.0);
  OptimizerConfig config = make_method_config("h_gd");
  config.eta = 1.0;
  StopCriteria criteria;
  criteria.value_tolerance = 1e-16;  // keep the value test from firing mid-flight
  criteria.orbit_tolerance = 1e-8;
  criteria.max_steps = 1000000;
  const RunRecord rec = run_trajectory(f, config, {0.7}, criteria);
  CHECK(rec.termination == TerminationReason::ConvergedOrbit);
  REQUIRE(rec.orbit.has_value());
  CHECK(std::abs(rec.orbit->orbit_amplitude - 0.25) <= 1e-8);
  CHECK(rec.orbit->midpoint_value < 1e-12);
}

TEST_CASE("plain GD diverges on the quadratic above eta = 2/kappa") {
  const CostFunction f = make_quadratic(1.0);
  OptimizerConfig config = make_method_config("gd");
  config.eta = 2.5;
  StopCriteria criteria;
  criteria.max_steps = 100;
  const RunRecord rec = run_trajectory(f, config, {0.7}, criteria);
  CHECK(rec.termination == TerminationReason::DivergedRadius);
  CHECK(rec.steps_used <= 100);
}

TEST_CASE("series sink sees the stride grid plus the terminal step") {
  const CostFunction f = make_v3();
  OptimizerConfig config = make_method_config("h_nag");
  config.eta = 0.01;
  StopCriteria criteria;
  criteria.max_steps = 50;
  criteria.value_tolerance = 1e-300;  // force a full-budget run
  TrajectoryOptions options;
  options.record_stride = 10;
  options.keep_series = true;

  std::vector<long long> seen;
  const RunRecord rec = run_trajectory(f, config, {1.0, 1.0}, criteria, options,
                                       [&](const StepSample& s) {
                                         seen.push_back(s.step);
                                         CHECK(s.theta.size() == 2);
                                       });
  CHECK(seen == std::vector<long long>{0, 10, 20, 30, 40, 50});
  CHECK(rec.value_series.size() == seen.size());
  CHECK(rec.termination == TerminationReason::BudgetExhausted);
  CHECK(rec.steps_used == 50);
}

TEST_CASE("usage errors throw instead of producing records") {
  const CostFunction f = make_v1();
  const OptimizerConfig config = make_method_config("adam");
  CHECK_THROWS_AS(run_trajectory(f, config, {0.0}, StopCriteria{}),
                  std::invalid_argument);
  StopCriteria bad;
  bad.max_steps = 0;
  CHECK_THROWS_AS(run_trajectory(f, config, {0.0, 0.0}, bad), std::invalid_argument);
}

namespace {

ExperimentPlan small_plan() {
  ExperimentPlan plan;
  plan.function = "v3";
  plan.methods = {make_method_config("h_nag"), make_method_config("h_adam")};
  plan.n_starts = 8;
  plan.eta_grid = {1e-2, 1e-1};
  plan.t_checkpoints = {50, 200, 1000};
  plan.seed = 7;
  plan.criteria.max_steps = 1000;
  plan.record_stride = 10;
  plan.workers = 2;
  return plan;
}

}  // namespace

TEST_CASE("sweep: fractions are monotone in T and bounded") {
  const SweepResult result = sweep(small_plan());
  REQUIRE(result.fractions.size() == 2 * 2 * 3);
  for (std::size_t i = 0; i < result.fractions.size(); i += 3) {
    double prev = -1.0;
    for (std::size_t k = i; k < i + 3; ++k) {
      const FractionCell& c = result.fractions[k];
      CHECK(c.fraction_converged >= prev);
      CHECK(c.fraction_converged >= 0.0);
      CHECK(c.fraction_converged <= 1.0);
      CHECK(c.n_diverged + c.n_budget <= 8);
      prev = c.fraction_converged;
    }
  }
}

TEST_CASE("sweep: a start pinned to the minimum converges at every checkpoint") {
  ExperimentPlan plan;
  plan.function = "v3";
  plan.methods = {make_method_config("adam")};
  plan.n_starts = 1;
  plan.eta_grid = {1e-1};
  plan.t_checkpoints = {10, 100};
  plan.criteria.max_steps = 100;
  // A box this tight around the minimum makes V(theta_0) < 1e-4 certain.
  const CostFunction f =
      with_domain(make_v3(), Domain{{{-1e-9, 1e-9}, {-1e-9, 1e-9}}});
  const SweepResult result = sweep(plan, f);
  for (const FractionCell& c : result.fractions) {
    CHECK(c.fraction_converged == 1.0);
  }
}

TEST_CASE("sweep: identical tables for any worker count") {
  ExperimentPlan plan = small_plan();
  plan.workers = 1;
  const SweepResult a = sweep(plan);
  plan.workers = 4;
  const SweepResult b = sweep(plan);

  CHECK(a.start_hash == b.start_hash);
  REQUIRE(a.fractions.size() == b.fractions.size());
  for (std::size_t i = 0; i < a.fractions.size(); ++i) {
    CHECK(a.fractions[i].method == b.fractions[i].method);
    CHECK(a.fractions[i].eta == b.fractions[i].eta);
    CHECK(a.fractions[i].fraction_converged == b.fractions[i].fraction_converged);
    CHECK(a.fractions[i].n_diverged == b.fractions[i].n_diverged);
    CHECK(a.fractions[i].n_budget == b.fractions[i].n_budget);
  }
  REQUIRE(a.curves.size() == b.curves.size());
  for (std::size_t i = 0; i < a.curves.size(); ++i) {
    CHECK(a.curves[i].mean_value == b.curves[i].mean_value);
    CHECK(a.curves[i].mean_best == b.curves[i].mean_best);
  }
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].start_point == b.runs[i].start_point);
    CHECK(a.runs[i].termination == b.runs[i].termination);
    CHECK(a.runs[i].steps_used == b.runs[i].steps_used);
    CHECK(a.runs[i].final_value == b.runs[i].final_value);
    CHECK(a.runs[i].best_value == b.runs[i].best_value);
  }
}

TEST_CASE("sweep: mean best-value curves never increase") {
  const SweepResult result = sweep(small_plan());
  for (const MeanCurve& curve : result.curves) {
    for (std::size_t i = 1; i < curve.mean_best.size(); ++i) {
      REQUIRE(curve.mean_best[i] <= curve.mean_best[i - 1]);
    }
  }
}

TEST_CASE("sweep: start points are paired across cells") {
  const ExperimentPlan plan = small_plan();
  const SweepResult result = sweep(plan);
  const auto starts = sample_starts(make_v3().domain, plan.n_starts, plan.seed);
  CHECK(result.start_hash == hash_points(starts));
  // runs are cell-major: every cell repeats the same start list.
  const std::size_t cells = plan.methods.size() * plan.eta_grid.size();
  REQUIRE(result.runs.size() == cells * starts.size());
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t i = 0; i < starts.size(); ++i) {
      REQUIRE(result.runs[c * starts.size() + i].start_point == starts[i]);
    }
  }
}

TEST_CASE("sweep: plan validation catches bad grids") {
  ExperimentPlan plan = small_plan();
  plan.eta_grid = {0.1, -0.5};
  CHECK_THROWS_AS(sweep(plan), std::invalid_argument);
  plan = small_plan();
  plan.t_checkpoints = {100, 100};
  CHECK_THROWS_AS(sweep(plan), std::invalid_argument);
  plan = small_plan();
  plan.methods.clear();
  CHECK_THROWS_AS(sweep(plan), std::invalid_argument);
  plan = small_plan();
  plan.n_starts = 0;
  CHECK_THROWS_AS(sweep(plan), std::invalid_argument);
}
