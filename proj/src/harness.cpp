#include "powergrad/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "powergrad/rng.hpp"

namespace powergrad {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool is_converged(TerminationReason r) {
  return r == TerminationReason::ConvergedValue ||
         r == TerminationReason::ConvergedOrbit;
}

bool is_diverged(TerminationReason r) {
  return r == TerminationReason::DivergedNonfinite ||
         r == TerminationReason::DivergedRadius;
}

void throw_if_invalid(std::vector<std::string> errors, const char* what) {
  if (errors.empty()) return;
  std::string message = std::string("invalid ") + what + ":";
  for (const std::string& e : errors) message += "\n  - " + e;
  throw std::invalid_argument(message);
}

}  // namespace

Vec sample_start(const Domain& domain, std::uint64_t seed, std::uint64_t index) {
  const std::size_t dim = domain.bounds.size();
  Vec p(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double u = keyed_uniform01(seed, index * dim + d);
    p[d] = domain.bounds[d].lo + u * (domain.bounds[d].hi - domain.bounds[d].lo);
  }
  return p;
}

std::vector<Vec> sample_starts(const Domain& domain, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_starts: n must be at least 1");
  std::vector<Vec> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    points.push_back(sample_start(domain, seed, static_cast<std::uint64_t>(i)));
  }
  return points;
}

std::uint64_t hash_points(const std::vector<Vec>& points) {
  // FNV-1a over the raw component bits.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto fold = [&h](std::uint64_t bits) {
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const Vec& p : points) {
    for (double x : p) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof(bits));
      fold(bits);
    }
  }
  return h;
}

RunRecord run_trajectory(const CostFunction& f, const OptimizerConfig& config,
                         const Vec& start, const StopCriteria& criteria,
                         const TrajectoryOptions& options, const SeriesSink& sink) {
  if (static_cast<int>(start.size()) != f.dimension) {
    throw std::invalid_argument("run_trajectory: start dimension does not match " + f.name);
  }
  throw_if_invalid(validate(criteria), "stop criteria");
  if (options.record_stride < 1) {
    throw std::invalid_argument("run_trajectory: record_stride must be at least 1");
  }

  const auto t0 = Clock::now();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  OptimizerState state = make_optimizer(config, f.dimension);
  Vec theta = start;
  Vec next(start.size());
  Vec h_prev;  // empty until two steps have run

  RunRecord rec;
  rec.start_point = start;
  rec.method = config.name;
  rec.eta = config.eta;

  double value = f.value(theta);
  double best = std::isfinite(value) ? value : std::numeric_limits<double>::infinity();

  auto emit = [&](long long step, const Vec& point, double v, double gn, double hn) {
    const double elapsed = seconds_since(t0);
    if (sink) sink(StepSample{step, point, v, best, gn, hn, elapsed});
    if (options.keep_series) rec.value_series.emplace_back(step, v);
  };

  auto finalize = [&](long long step, const Termination& term) {
    rec.termination = term.reason;
    rec.steps_used = step;
    rec.final_value = value;
    rec.best_value = best;
    if (term.orbit.orbit_detected) rec.orbit = term.orbit;
    rec.wall_time_s = seconds_since(t0);
    return rec;
  };

  emit(0, theta, value, nan, nan);
  if (auto term = check(theta, theta, {}, {}, value, f, criteria, 0)) {
    return finalize(0, *term);
  }

  for (long long t = 1;; ++t) {
    const StepNorms norms = step(config, f, state, theta, next);
    if (!norms.gradient_finite) {
      // Divergence signal carrying the step index; theta was left untouched.
      emit(t, theta, value, nan, nan);
      return finalize(t, Termination{TerminationReason::DivergedNonfinite, {}});
    }
    const double next_value = f.value(next);
    if (std::isfinite(next_value) && next_value < best) best = next_value;

    const auto term = check(next, theta, state.power_gradient, h_prev, next_value,
                            f, criteria, t);

    h_prev = state.power_gradient;
    theta.swap(next);
    value = next_value;

    if (t % options.record_stride == 0 || term) {
      emit(t, theta, value, norms.grad, norms.transformed);
    }
    if (term) return finalize(t, *term);
  }
}

std::vector<std::string> validate(const ExperimentPlan& plan) {
  std::vector<std::string> errors;
  if (plan.function.empty()) errors.push_back("function name must not be empty");
  if (plan.methods.empty()) errors.push_back("at least one method is required");
  for (const OptimizerConfig& m : plan.methods) {
    for (std::string& e : validate(m)) {
      errors.push_back(m.name + ": " + std::move(e));
    }
  }
  if (plan.n_starts < 1) errors.push_back("n_starts must be at least 1");
  if (plan.eta_grid.empty()) errors.push_back("eta grid must not be empty");
  for (double eta : plan.eta_grid) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
      errors.push_back("eta grid entries must be positive finite numbers");
      break;
    }
  }
  if (plan.t_checkpoints.empty()) errors.push_back("t_checkpoints must not be empty");
  for (std::size_t i = 0; i < plan.t_checkpoints.size(); ++i) {
    if (plan.t_checkpoints[i] < 1 ||
        (i > 0 && plan.t_checkpoints[i] <= plan.t_checkpoints[i - 1])) {
      errors.push_back("t_checkpoints must be positive and strictly increasing");
      break;
    }
  }
  for (std::string& e : validate(plan.criteria)) errors.push_back(std::move(e));
  if (plan.record_stride < 1) errors.push_back("record_stride must be at least 1");
  if (plan.workers < 0) errors.push_back("workers must be nonnegative");
  return errors;
}

namespace {

// Accumulated output of one (method, eta) cell. Cells are independent; each
// is filled by exactly one worker, sequentially over start indices.
struct CellOutput {
  MeanCurve curve;
  std::vector<RunRecord> records;
};

CellOutput run_cell(const CostFunction& f, OptimizerConfig config,
                    const std::vector<Vec>& starts, const StopCriteria& criteria,
                    long long stride) {
  const long long budget = criteria.max_steps;
  const std::size_t n_rec = static_cast<std::size_t>(budget / stride) + 1;

  CellOutput out;
  out.curve.method = config.name;
  out.curve.eta = config.eta;
  out.curve.stride = stride;
  out.curve.n_runs = static_cast<int>(starts.size());
  std::vector<double> sum_value(n_rec, 0.0);
  std::vector<double> sum_best(n_rec, 0.0);
  std::vector<double> sum_time(n_rec, 0.0);

  std::vector<double> run_value(n_rec), run_best(n_rec), run_time(n_rec);
  TrajectoryOptions options;
  options.record_stride = static_cast<int>(stride);

  for (const Vec& start : starts) {
    std::size_t filled = 0;
    auto sink = [&](const StepSample& s) {
      if (s.step % stride != 0) return;  // off-grid terminal sample
      const std::size_t k = static_cast<std::size_t>(s.step / stride);
      run_value[k] = s.value;
      run_best[k] = s.best;
      run_time[k] = s.elapsed_s;
      filled = k + 1;
    };
    RunRecord rec = run_trajectory(f, config, start, criteria, options, sink);

    if (!is_diverged(rec.termination)) {
      // Carry the final state forward over the unreached part of the grid.
      for (std::size_t k = filled; k < n_rec; ++k) {
        run_value[k] = rec.final_value;
        run_best[k] = rec.best_value;
        run_time[k] = rec.wall_time_s;
      }
      for (std::size_t k = 0; k < n_rec; ++k) {
        sum_value[k] += run_value[k];
        sum_best[k] += run_best[k];
        sum_time[k] += run_time[k];
      }
    } else {
      out.curve.n_divergent += 1;
    }
    out.records.push_back(std::move(rec));
  }

  const int kept = out.curve.n_runs - out.curve.n_divergent;
  out.curve.mean_value.resize(n_rec);
  out.curve.mean_best.resize(n_rec);
  out.curve.mean_elapsed_s.resize(n_rec);
  for (std::size_t k = 0; k < n_rec; ++k) {
    if (kept > 0) {
      out.curve.mean_value[k] = sum_value[k] / kept;
      out.curve.mean_best[k] = sum_best[k] / kept;
      out.curve.mean_elapsed_s[k] = sum_time[k] / kept;
    } else {
      out.curve.mean_value[k] = std::numeric_limits<double>::quiet_NaN();
      out.curve.mean_best[k] = std::numeric_limits<double>::quiet_NaN();
      out.curve.mean_elapsed_s[k] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

}  // namespace

SweepResult sweep(const ExperimentPlan& plan, const CostFunction& f) {
  throw_if_invalid(validate(plan), "experiment plan");
  if (f.dimension != f.domain.dimension()) {
    throw std::invalid_argument("sweep: function domain dimension mismatch");
  }

  StopCriteria criteria = plan.criteria;
  criteria.max_steps = std::max(criteria.max_steps, plan.t_checkpoints.back());

  const std::vector<Vec> starts = sample_starts(f.domain, plan.n_starts, plan.seed);

  SweepResult result;
  result.start_hash = hash_points(starts);
  result.budget = criteria.max_steps;

  const std::size_t n_methods = plan.methods.size();
  const std::size_t n_etas = plan.eta_grid.size();
  const std::size_t n_cells = n_methods * n_etas;
  std::vector<CellOutput> cells(n_cells);

  std::atomic<std::size_t> next_cell{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&]() {
    for (;;) {
      const std::size_t c = next_cell.fetch_add(1);
      if (c >= n_cells || failed.load()) return;
      try {
        OptimizerConfig config = plan.methods[c / n_etas];
        config.eta = plan.eta_grid[c % n_etas];
        cells[c] = run_cell(f, config, starts, criteria, plan.record_stride);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  unsigned n_workers = plan.workers > 0
                           ? static_cast<unsigned>(plan.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(n_cells));
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (CellOutput& cell : cells) {
    for (long long checkpoint : plan.t_checkpoints) {
      FractionCell fc;
      fc.method = cell.curve.method;
      fc.eta = cell.curve.eta;
      fc.checkpoint = checkpoint;
      int converged = 0;
      for (const RunRecord& rec : cell.records) {
        if (rec.steps_used > checkpoint) continue;
        if (is_converged(rec.termination)) converged += 1;
        else if (is_diverged(rec.termination)) fc.n_diverged += 1;
      }
      fc.fraction_converged = static_cast<double>(converged) / plan.n_starts;
      fc.n_budget = plan.n_starts - converged - fc.n_diverged;
      result.fractions.push_back(std::move(fc));
    }
    result.curves.push_back(std::move(cell.curve));
    for (RunRecord& rec : cell.records) result.runs.push_back(std::move(rec));
  }
  return result;
}

SweepResult sweep(const ExperimentPlan& plan) {
  return sweep(plan, make_function(plan.function));
}

}  // namespace powergrad
