#include "powergrad/results_io.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace powergrad {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_fractions_csv(std::ostream& out, const SweepResult& result) {
  out << "method,eta,T,fraction_converged,n_diverged,n_budget\n";
  for (const FractionCell& c : result.fractions) {
    out << c.method << ',' << fmt_double(c.eta) << ',' << c.checkpoint << ','
        << fmt_double(c.fraction_converged) << ',' << c.n_diverged << ','
        << c.n_budget << '\n';
  }
}

void write_curves_csv(std::ostream& out, const SweepResult& result) {
  out << "method,eta,step,mean_value,mean_best_value\n";
  for (const MeanCurve& c : result.curves) {
    for (std::size_t i = 0; i < c.mean_value.size(); ++i) {
      out << c.method << ',' << fmt_double(c.eta) << ',' << c.step_at(i) << ','
          << fmt_double(c.mean_value[i]) << ',' << fmt_double(c.mean_best[i]) << '\n';
    }
  }
}

void write_timing_csv(std::ostream& out, const SweepResult& result) {
  out << "method,eta,step,mean_elapsed_seconds,mean_value\n";
  for (const MeanCurve& c : result.curves) {
    for (std::size_t i = 0; i < c.mean_elapsed_s.size(); ++i) {
      out << c.method << ',' << fmt_double(c.eta) << ',' << c.step_at(i) << ','
          << fmt_double(c.mean_elapsed_s[i]) << ',' << fmt_double(c.mean_value[i])
          << '\n';
    }
  }
}

void write_runs_csv(std::ostream& out, const SweepResult& result, int dimension) {
  out << "method,eta,start_index";
  for (int d = 0; d < dimension; ++d) out << ",start" << d;
  out << ",termination,steps_used,final_value,best_value\n";
  long long index = 0;
  long long runs_per_cell = 0;
  if (!result.curves.empty()) runs_per_cell = result.curves.front().n_runs;
  for (const RunRecord& r : result.runs) {
    out << r.method << ',' << fmt_double(r.eta) << ','
        << (runs_per_cell > 0 ? index % runs_per_cell : index);
    for (double x : r.start_point) out << ',' << fmt_double(x);
    out << ',' << to_string(r.termination) << ',' << r.steps_used << ','
        << fmt_double(r.final_value) << ',' << fmt_double(r.best_value) << '\n';
    ++index;
  }
}

void write_contour_csv(std::ostream& out, const ContourGrid& grid) {
  out << "x,y,v\n";
  for (const GridPoint& p : grid.points) {
    out << fmt_double(p.x) << ',' << fmt_double(p.y) << ',' << fmt_double(p.v) << '\n';
  }
}

void write_trace_header(std::ostream& out, int dimension) {
  out << "step";
  for (int d = 0; d < dimension; ++d) out << ",theta" << d;
  out << ",v,grad_norm,h_norm\n";
}

void write_trace_row(std::ostream& out, const StepSample& sample) {
  out << sample.step;
  for (double x : sample.theta) out << ',' << fmt_double(x);
  out << ',' << fmt_double(sample.value) << ',' << fmt_double(sample.grad_norm)
      << ',' << fmt_double(sample.h_norm) << '\n';
}

nlohmann::ordered_json to_json(const RunRecord& r, bool include_series) {
  nlohmann::ordered_json j;
  j["method"] = r.method;
  j["eta"] = r.eta;
  j["start"] = r.start_point;
  j["termination"] = to_string(r.termination);
  j["steps_used"] = r.steps_used;
  j["final_value"] = r.final_value;
  j["best_value"] = r.best_value;
  if (r.orbit) {
    nlohmann::ordered_json o;
    o["amplitude"] = r.orbit->orbit_amplitude;
    o["midpoint"] = r.orbit->midpoint;
    o["midpoint_value"] = r.orbit->midpoint_value;
    j["orbit"] = std::move(o);
  } else {
    j["orbit"] = nullptr;
  }
  j["wall_time_s"] = r.wall_time_s;
  if (include_series) {
    nlohmann::ordered_json series = nlohmann::ordered_json::array();
    for (const auto& [step, value] : r.value_series) {
      series.push_back({step, value});
    }
    j["value_series"] = std::move(series);
  }
  return j;
}

nlohmann::ordered_json make_manifest(const std::string& config_text,
                                     std::uint64_t seed, std::uint64_t start_hash) {
  const auto now = std::chrono::system_clock::now();
  const auto unix_s =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  nlohmann::ordered_json m;
  m["tool"] = "powergrad";
  m["version"] = kToolVersion;
  m["config_hash"] = hex64(fnv1a64(config_text));
  m["seed"] = seed;
  m["start_hash"] = hex64(start_hash);
  m["created_unix"] = unix_s;  // the one field excluded from reproducibility
  m["schemas"] = {
      {"fractions", "powergrad.fractions.v1"},
      {"curves", "powergrad.curves.v1"},
      {"timing", "powergrad.timing.v1"},
      {"runs", "powergrad.runs.v1"},
      {"contour", "powergrad.contour.v1"},
      {"trace", "powergrad.trace.v1"},
  };
  return m;
}

void write_result_bundle(const std::string& dir, const SweepResult& result,
                         int dimension, const nlohmann::ordered_json& manifest) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto open = [&dir](const char* name) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error(std::string("cannot write ") + dir + "/" + name);
    return out;
  };
  {
    auto out = open("manifest.json");
    out << manifest.dump(2) << '\n';
  }
  {
    auto out = open("fractions.csv");
    write_fractions_csv(out, result);
  }
  {
    auto out = open("curves.csv");
    write_curves_csv(out, result);
  }
  {
    auto out = open("timing.csv");
    write_timing_csv(out, result);
  }
  {
    auto out = open("runs.csv");
    write_runs_csv(out, result, dimension);
  }
}

}  // namespace powergrad
