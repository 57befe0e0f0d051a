#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "powergrad/harness.hpp"

namespace powergrad {

inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits, enough for exact double round-trips; the same bytes
// every run, so result tables can be compared byte for byte.
std::string fmt_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

// CSV schemas (field order is part of surface, schema ids in the manifest):
//   fractions: method,eta,T,fraction_converged,n_diverged,n_budget
//   curves:    method,eta,step,mean_value,mean_best_value
//   timing:    method,eta,step,mean_elapsed_seconds,mean_value  (informational)
//   runs:      method,eta,start_index,start0..,termination,steps_used,
//              final_value,best_value
//   contour:   x,y,v
//   trace:     step,theta0..,v,grad_norm,h_norm
void write_fractions_csv(std::ostream& out, const SweepResult& result);
void write_curves_csv(std::ostream& out, const SweepResult& result);
void write_timing_csv(std::ostream& out, const SweepResult& result);
void write_runs_csv(std::ostream& out, const SweepResult& result, int dimension);
void write_contour_csv(std::ostream& out, const ContourGrid& grid);

void write_trace_header(std::ostream& out, int dimension);
void write_trace_row(std::ostream& out, const StepSample& sample);

// Stable field order; orbit diagnostics included only when detected.
nlohmann::ordered_json to_json(const RunRecord& record, bool include_series);

nlohmann::ordered_json make_manifest(const std::string& config_text,
                                     std::uint64_t seed, std::uint64_t start_hash);

// Writes manifest.json plus the four sweep tables into dir (created if
// missing). Everything except manifest.json and timing.csv reproduces byte
// for byte under the same plan.
void write_result_bundle(const std::string& dir, const SweepResult& result,
                         int dimension, const nlohmann::ordered_json& manifest);

}  // namespace powergrad
