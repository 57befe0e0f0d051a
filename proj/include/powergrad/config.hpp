#pragma once

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "powergrad/harness.hpp"

namespace powergrad {

// Configuration problem with file:line location in the message.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parsed sweep configuration. Domain overrides are applied when the function
// is resolved, so boxes are configuration rather than code.
struct SweepSetup {
  ExperimentPlan plan;
  std::map<std::string, Domain> domain_overrides;  // keyed by function name
  std::string output_dir = "results";
  std::string config_text;  // raw bytes, hashed into the manifest
};

// Key/value-with-sections text format; see the README for the full key list.
// Unknown sections or keys are rejected with their location.
SweepSetup parse_config(std::istream& in, const std::string& origin);
SweepSetup load_config(const std::string& path);

// The plan's function with any domain override applied.
CostFunction resolve_function(const SweepSetup& setup, const std::string& name);

}  // namespace powergrad
