#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powergrad/convergence.hpp"
#include "powergrad/objectives.hpp"
#include "powergrad/optimizers.hpp"

namespace powergrad {

// Start point i is a pure function of (seed, i): identical regardless of
// execution order or worker count.
Vec sample_start(const Domain& domain, std::uint64_t seed, std::uint64_t index);
std::vector<Vec> sample_starts(const Domain& domain, int n, std::uint64_t seed);

// Fingerprint of a start list, used to assert that every sweep cell ran from
// the same points.
std::uint64_t hash_points(const std::vector<Vec>& points);

struct RunRecord {
  Vec start_point;
  std::string method;
  double eta = 0.0;
  TerminationReason termination = TerminationReason::BudgetExhausted;
  long long steps_used = 0;
  double final_value = 0.0;
  double best_value = 0.0;  // minimum finite V seen, start included
  std::optional<OrbitDiagnostics> orbit;
  double wall_time_s = 0.0;
  std::vector<std::pair<long long, double>> value_series;  // (step, V) when kept
};

// One observation per recorded step, streamed to the sink while a trajectory
// runs. grad_norm/h_norm are the inf-norms from the step that produced this
// iterate (NaN at step 0, which no step produced).
struct StepSample {
  long long step = 0;
  const Vec& theta;
  double value = 0.0;
  double best = 0.0;
  double grad_norm = 0.0;
  double h_norm = 0.0;
  double elapsed_s = 0.0;
};
using SeriesSink = std::function<void(const StepSample&)>;

struct TrajectoryOptions {
  int record_stride = 1;     // sink/record cadence in steps
  bool keep_series = false;  // also store (step, V) pairs in the record
};

// Iterate the configured method from zero optimizer state until one
// termination reason fires. Non-finite objective values or gradients become
// DIVERGED_NONFINITE records; only precondition violations throw.
RunRecord run_trajectory(const CostFunction& f, const OptimizerConfig& config,
                         const Vec& start, const StopCriteria& criteria,
                         const TrajectoryOptions& options = {},
                         const SeriesSink& sink = nullptr);

struct ExperimentPlan {
  std::string function = "v1";
  std::vector<OptimizerConfig> methods;
  int n_starts = 100;
  std::vector<double> eta_grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0};
  std::vector<long long> t_checkpoints = {100, 1000, 10000};
  std::uint64_t seed = 0;
  StopCriteria criteria;
  int record_stride = 1;
  int workers = 0;  // 0 = one per hardware thread
};

std::vector<std::string> validate(const ExperimentPlan& plan);

// Fraction of trajectories converged within each checkpoint, per cell.
// n_diverged / n_budget count the runs diverged by the checkpoint and the
// runs still unfinished at it.
struct FractionCell {
  std::string method;
  double eta = 0.0;
  long long checkpoint = 0;
  double fraction_converged = 0.0;
  int n_diverged = 0;
  int n_budget = 0;
};

// Population mean curves for one (method, eta) cell, on the stride grid.
// Terminated runs carry their final value forward; divergent runs are
// excluded entirely and only counted. mean_best averages each run's running
// minimum, so it is nonincreasing by construction.
struct MeanCurve {
  std::string method;
  double eta = 0.0;
  long long stride = 1;
  std::vector<double> mean_value;
  std::vector<double> mean_best;
  std::vector<double> mean_elapsed_s;  // informational, not reproducible
  int n_runs = 0;
  int n_divergent = 0;

  long long step_at(std::size_t i) const { return stride * static_cast<long long>(i); }
};

struct SweepResult {
  std::vector<FractionCell> fractions;  // method-major, then eta, then checkpoint
  std::vector<MeanCurve> curves;        // method-major, then eta
  std::vector<RunRecord> runs;          // method-major, then eta, then start index
  std::uint64_t start_hash = 0;
  long long budget = 0;
};

// Execute n_starts x |eta_grid| x |methods| trajectories. The same seeded
// start points are reused across every (method, eta) cell so comparisons are
// paired. Cells are distributed over a worker pool; each cell is reduced
// sequentially in start order, so results do not depend on scheduling.
SweepResult sweep(const ExperimentPlan& plan, const CostFunction& f);
SweepResult sweep(const ExperimentPlan& plan);  // resolves plan.function by name

}  // namespace powergrad
