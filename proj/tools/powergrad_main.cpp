#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "powergrad/config.hpp"
#include "powergrad/harness.hpp"
#include "powergrad/results_io.hpp"

namespace {

using namespace powergrad;

Vec parse_point(const std::string& text) {
  Vec point;
  std::string item;
  std::istringstream iss(text);
  while (std::getline(iss, item, ',')) {
    std::size_t used = 0;
    point.push_back(std::stod(item, &used));
    if (used != item.size()) {
      throw std::invalid_argument("bad coordinate '" + item + "' in '" + text + "'");
    }
  }
  if (point.empty()) throw std::invalid_argument("empty start point");
  return point;
}

std::optional<std::string> env_var(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

int cmd_list() {
  std::cout << "functions (name, domain, global minimum):\n";
  for (const std::string& name : function_names()) {
    const CostFunction f = make_function(name);
    std::cout << "  " << name << "  [";
    for (int d = 0; d < f.domain.dimension(); ++d) {
      if (d > 0) std::cout << " x ";
      std::cout << "[" << f.domain.bounds[d].lo << ", " << f.domain.bounds[d].hi << "]";
    }
    std::cout << "]  min at (";
    for (std::size_t i = 0; i < f.global_minimum.size(); ++i) {
      if (i > 0) std::cout << ", ";
      std::cout << f.global_minimum[i];
    }
    std::cout << ")\n";
  }
  std::cout << "  quadratic  1-D kappa*theta^2/2, used by the orbit subcommand\n";
  std::cout << "\nmethods (h_ prefix starts from exponent 1/2 instead of 1):\n";
  for (const std::string& name : method_names()) {
    const OptimizerConfig c = make_method_config(name);
    std::cout << "  " << name << "  (h0=" << c.h0;
    switch (c.method) {
      case Method::Gd: break;
      case Method::Nag: std::cout << ", gamma=" << c.gamma; break;
      case Method::AdamScheduled: std::cout << ", beta3=" << c.beta3; [[fallthrough]];
      case Method::Adam:
      case Method::Amsgrad:
        std::cout << ", beta1=" << c.beta1 << ", beta2=" << c.beta2
                  << ", epsilon=" << c.epsilon;
        break;
    }
    std::cout << ")\n";
  }
  std::cout << "\ndefaults: eta grid {1e-4..10}, n_starts 100, T checkpoints "
               "{100, 1000, 10000},\n"
               "criteria: value_tolerance 1e-4, orbit_tolerance 1e-8, max_steps "
               "10000, divergence_radius 1e8\n";
  return 0;
}

int cmd_contour(const std::string& function, int resolution, const std::string& out_path) {
  const CostFunction f = make_function(function);
  const ContourGrid grid = contour_grid(f, resolution);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  write_contour_csv(out, grid);
  std::cerr << "wrote " << grid.points.size() << " samples to " << out_path << "\n";
  return 0;
}

int cmd_orbit(double kappa, double eta, double start, long long steps) {
  const CostFunction f = make_quadratic(kappa);
  OptimizerConfig config = make_method_config("h_gd");
  config.eta = eta;

  StopCriteria criteria;
  criteria.value_tolerance = 1e-16;  // keep the value test out of the orbit's way
  criteria.orbit_tolerance = 1e-8;
  criteria.max_steps = steps;
  const double predicted = eta * eta * kappa / 4.0;
  criteria.divergence_radius = std::max(1e8, 1e3 * predicted);

  const RunRecord rec = run_trajectory(f, config, {start}, criteria);

  nlohmann::ordered_json j;
  j["kappa"] = kappa;
  j["eta"] = eta;
  j["start"] = start;
  j["predicted_amplitude"] = predicted;
  j["termination"] = to_string(rec.termination);
  j["steps_used"] = rec.steps_used;
  if (rec.orbit) {
    j["measured_amplitude"] = rec.orbit->orbit_amplitude;
    j["amplitude_error"] = std::abs(rec.orbit->orbit_amplitude - predicted);
    j["midpoint"] = rec.orbit->midpoint;
    j["midpoint_value"] = rec.orbit->midpoint_value;
  } else {
    j["measured_amplitude"] = nullptr;
    j["final_value"] = rec.final_value;
  }
  j["wall_time_s"] = rec.wall_time_s;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_trajectory(const std::string& function, const std::string& method, double eta,
                   const std::string& start_text, long long steps,
                   const std::string& trace_path, int stride, bool with_series) {
  const CostFunction f = make_function(function);
  OptimizerConfig config = make_method_config(method);
  config.eta = eta;
  const Vec start = parse_point(start_text);

  StopCriteria criteria;
  criteria.max_steps = steps;

  TrajectoryOptions options;
  options.record_stride = stride;
  options.keep_series = with_series;

  std::ofstream trace;
  SeriesSink sink;
  if (!trace_path.empty()) {
    trace.open(trace_path, std::ios::binary);
    if (!trace) throw std::runtime_error("cannot write " + trace_path);
    write_trace_header(trace, f.dimension);
    sink = [&trace](const StepSample& s) { write_trace_row(trace, s); };
  }

  const RunRecord rec = run_trajectory(f, config, start, criteria, options, sink);
  std::cout << to_json(rec, with_series).dump(2) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& function_override,
              const std::vector<std::string>& method_overrides,
              const std::string& out_override, int workers_override) {
  SweepSetup setup = load_config(config_path);
  if (!function_override.empty()) setup.plan.function = function_override;
  if (!method_overrides.empty()) {
    std::vector<OptimizerConfig> methods;
    for (const std::string& name : method_overrides) {
      methods.push_back(make_method_config(name));
    }
    setup.plan.methods = std::move(methods);
  }

  if (workers_override > 0) {
    setup.plan.workers = workers_override;
  } else if (const auto env = env_var("POWERGRAD_WORKERS")) {
    setup.plan.workers = std::stoi(*env);
  }
  std::string out_dir = setup.output_dir;
  if (!out_override.empty()) {
    out_dir = out_override;
  } else if (const auto env = env_var("POWERGRAD_OUT_DIR")) {
    out_dir = *env;
  }

  const CostFunction f = resolve_function(setup, setup.plan.function);
  std::cerr << "sweep: function=" << f.name << " methods=" << setup.plan.methods.size()
            << " etas=" << setup.plan.eta_grid.size() << " starts=" << setup.plan.n_starts
            << "\n";

  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult result = sweep(setup.plan, f);
  const double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0).count();

  nlohmann::ordered_json manifest =
      make_manifest(setup.config_text, setup.plan.seed, result.start_hash);
  nlohmann::ordered_json effective;
  effective["function"] = f.name;
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  for (const OptimizerConfig& m : setup.plan.methods) names.push_back(m.name);
  effective["methods"] = std::move(names);
  effective["etas"] = setup.plan.eta_grid;
  effective["n_starts"] = setup.plan.n_starts;
  effective["t_checkpoints"] = setup.plan.t_checkpoints;
  effective["budget"] = result.budget;
  manifest["effective_plan"] = std::move(effective);

  write_result_bundle(out_dir, result, f.dimension, manifest);

  // Best-case summary at the last checkpoint, one line per method.
  const long long last_t = setup.plan.t_checkpoints.back();
  std::cout << "fraction converged at T=" << last_t << " (best eta per method):\n";
  for (const OptimizerConfig& m : setup.plan.methods) {
    double best_fraction = 0.0;
    double best_eta = setup.plan.eta_grid.front();
    for (const FractionCell& c : result.fractions) {
      if (c.method == m.name && c.checkpoint == last_t &&
          c.fraction_converged >= best_fraction) {
        best_fraction = c.fraction_converged;
        best_eta = c.eta;
      }
    }
    std::cout << "  " << m.name << "  f=" << best_fraction << "  at eta=" << best_eta
              << "\n";
  }
  std::cerr << "sweep finished in " << elapsed << " s; results in " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power-gradient descent benchmark harness"};
  app.require_subcommand(1);
  app.footer(
      "Environment: POWERGRAD_OUT_DIR and POWERGRAD_WORKERS override the\n"
      "configured output directory and worker count (explicit flags win).\n"
      "Config keys and defaults are listed in README.md; `list` prints the\n"
      "available functions and methods with their hyperparameter defaults.");

  auto* list_cmd = app.add_subcommand("list", "available functions and methods");

  auto* contour_cmd = app.add_subcommand("contour", "sample a cost function on a grid");
  std::string contour_fn, contour_out;
  int contour_res = 256;
  contour_cmd->add_option("--function", contour_fn, "cost function name")->required();
  contour_cmd->add_option("--resolution", contour_res, "grid points per axis (>= 2)");
  contour_cmd->add_option("--out", contour_out, "output CSV path")->required();

  auto* orbit_cmd =
      app.add_subcommand("orbit", "2-state orbit diagnostic of h-GD on kappa*theta^2/2");
  double orbit_kappa = 1.0, orbit_eta = 1.0, orbit_start = 0.7;
  long long orbit_steps = 1000000;
  orbit_cmd->add_option("--kappa", orbit_kappa, "quadratic stiffness (> 0)")->required();
  orbit_cmd->add_option("--eta", orbit_eta, "learning rate")->required();
  orbit_cmd->add_option("--start", orbit_start, "initial theta")->required();
  orbit_cmd->add_option("--steps", orbit_steps, "step budget (default 1e6)");

  auto* traj_cmd = app.add_subcommand("trajectory", "run a single minimization");
  std::string traj_fn, traj_method, traj_start, traj_trace;
  double traj_eta = 0.1;
  long long traj_steps = 10000;
  int traj_stride = 1;
  bool traj_series = false;
  traj_cmd->add_option("--function", traj_fn, "cost function name")->required();
  traj_cmd->add_option("--method", traj_method, "method name (see `list`)")->required();
  traj_cmd->add_option("--eta", traj_eta, "learning rate")->required();
  traj_cmd->add_option("--start", traj_start, "start point, e.g. 0.5,-1.25")->required();
  traj_cmd->add_option("--steps", traj_steps, "step budget (default 10000)");
  traj_cmd->add_option("--trace", traj_trace, "write a full per-step trace CSV here");
  traj_cmd->add_option("--stride", traj_stride, "trace/series cadence in steps");
  traj_cmd->add_flag("--series", traj_series, "include the value series in the JSON");

  auto* sweep_cmd = app.add_subcommand("sweep", "learning-rate sweep over seeded starts");
  std::string sweep_config, sweep_fn, sweep_out;
  std::vector<std::string> sweep_methods;
  int sweep_workers = 0;
  sweep_cmd->add_option("--config", sweep_config, "configuration file")->required();
  sweep_cmd->add_option("--function", sweep_fn, "override the configured function");
  sweep_cmd->add_option("--method", sweep_methods, "override the configured method list");
  sweep_cmd->add_option("--out", sweep_out, "override the output directory");
  sweep_cmd->add_option("--workers", sweep_workers, "worker threads (0 = hardware)");
  sweep_cmd->footer(
      "Config sections and defaults:\n"
      "  [experiment]  function = v1 | methods = nag, h_nag, adam, h_adam,\n"
      "                amsgrad, h_amsgrad | etas = 1e-4, 1e-3, 1e-2, 1e-1, 1, 10\n"
      "                n_starts = 100 | seed = 0 | t_checkpoints = 100, 1000, 10000\n"
      "                record_stride = 1 | workers = 0 (hardware)\n"
      "  [criteria]    value_tolerance = 1e-4 | orbit_tolerance = 1e-8\n"
      "                max_steps = 10000 | divergence_radius = 1e8\n"
      "  [method.M]    gamma = 0.99 | beta1 = 0.9 | beta2 = 0.99 | beta3 = 0.999\n"
      "                epsilon = 1e-8 | h0 = 1 (0.5 for h_ methods)\n"
      "                amsgrad_cap_mode = paper | accumulated\n"
      "  [domain.F]    x = lo, hi | y = lo, hi  (box override, per function)\n"
      "  [output]      directory = results\n"
      "Unknown sections or keys are rejected with their file:line location.");

  try {
    app.parse(argc, argv);
    if (list_cmd->parsed()) return cmd_list();
    if (contour_cmd->parsed()) return cmd_contour(contour_fn, contour_res, contour_out);
    if (orbit_cmd->parsed()) return cmd_orbit(orbit_kappa, orbit_eta, orbit_start, orbit_steps);
    if (traj_cmd->parsed()) {
      return cmd_trajectory(traj_fn, traj_method, traj_eta, traj_start, traj_steps,
                            traj_trace, traj_stride, traj_series);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_config, sweep_fn, sweep_methods, sweep_out, sweep_workers);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
