#include "powergrad/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace powergrad {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream iss(s);
  while (std::getline(iss, item, ',')) items.push_back(trim(item));
  return items;
}

struct Location {
  const std::string& origin;
  int line;
  std::string str() const { return origin + ":" + std::to_string(line); }
};

[[noreturn]] void fail(const Location& loc, const std::string& message) {
  throw ConfigError(loc.str() + ": " + message);
}

double parse_double(const Location& loc, const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    fail(loc, key + ": expected a number, got '" + raw + "'");
  }
  return v;
}

long long parse_int(const Location& loc, const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    fail(loc, key + ": expected an integer, got '" + raw + "'");
  }
  return v;
}

std::uint64_t parse_uint64(const Location& loc, const std::string& key,
                           const std::string& raw) {
  const std::string s = trim(raw);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
    fail(loc, key + ": expected a nonnegative integer, got '" + raw + "'");
  }
  return v;
}

Interval parse_interval(const Location& loc, const std::string& key,
                        const std::string& raw) {
  const std::vector<std::string> parts = split_list(raw);
  if (parts.size() != 2) fail(loc, key + ": expected 'lo, hi', got '" + raw + "'");
  Interval iv{parse_double(loc, key, parts[0]), parse_double(loc, key, parts[1])};
  if (!(iv.lo < iv.hi)) fail(loc, key + ": bounds must satisfy lo < hi");
  return iv;
}

void apply_experiment_key(const Location& loc, ExperimentPlan& plan,
                          const std::string& key, const std::string& value) {
  if (key == "function") {
    plan.function = value;
  } else if (key == "methods") {
    plan.methods.clear();
    for (const std::string& name : split_list(value)) {
      try {
        plan.methods.push_back(make_method_config(name));
      } catch (const std::invalid_argument& e) {
        fail(loc, e.what());
      }
    }
  } else if (key == "etas") {
    plan.eta_grid.clear();
    for (const std::string& s : split_list(value)) {
      plan.eta_grid.push_back(parse_double(loc, key, s));
    }
  } else if (key == "n_starts") {
    plan.n_starts = static_cast<int>(parse_int(loc, key, value));
  } else if (key == "seed") {
    plan.seed = parse_uint64(loc, key, value);
  } else if (key == "t_checkpoints") {
    plan.t_checkpoints.clear();
    for (const std::string& s : split_list(value)) {
      plan.t_checkpoints.push_back(parse_int(loc, key, s));
    }
  } else if (key == "record_stride") {
    plan.record_stride = static_cast<int>(parse_int(loc, key, value));
  } else if (key == "workers") {
    plan.workers = static_cast<int>(parse_int(loc, key, value));
  } else {
    fail(loc, "unknown key '" + key + "' in [experiment]");
  }
}

void apply_criteria_key(const Location& loc, StopCriteria& criteria,
                        const std::string& key, const std::string& value) {
  if (key == "value_tolerance") {
    criteria.value_tolerance = parse_double(loc, key, value);
  } else if (key == "orbit_tolerance") {
    criteria.orbit_tolerance = parse_double(loc, key, value);
  } else if (key == "max_steps") {
    criteria.max_steps = parse_int(loc, key, value);
  } else if (key == "divergence_radius") {
    criteria.divergence_radius = parse_double(loc, key, value);
  } else {
    fail(loc, "unknown key '" + key + "' in [criteria]");
  }
}

void apply_method_key(const Location& loc, OptimizerConfig& config,
                      const std::string& key, const std::string& value) {
  if (key == "gamma") {
    config.gamma = parse_double(loc, key, value);
  } else if (key == "beta1") {
    config.beta1 = parse_double(loc, key, value);
  } else if (key == "beta2") {
    config.beta2 = parse_double(loc, key, value);
  } else if (key == "beta3") {
    config.beta3 = parse_double(loc, key, value);
  } else if (key == "epsilon") {
    config.epsilon = parse_double(loc, key, value);
  } else if (key == "h0") {
    config.h0 = parse_double(loc, key, value);
  } else if (key == "amsgrad_cap_mode") {
    const std::string v = trim(value);
    if (v == "paper") {
      config.cap_mode = AmsgradCapMode::Paper;
    } else if (v == "accumulated") {
      config.cap_mode = AmsgradCapMode::Accumulated;
    } else {
      fail(loc, "amsgrad_cap_mode must be 'paper' or 'accumulated', got '" + v + "'");
    }
  } else {
    fail(loc, "unknown key '" + key + "' in [method." + config.name + "]");
  }
}

}  // namespace

SweepSetup parse_config(std::istream& in, const std::string& origin) {
  SweepSetup setup;
  // Default method set: each base method next to its power-gradient variant.
  for (const char* name : {"nag", "h_nag", "adam", "h_adam", "amsgrad", "h_amsgrad"}) {
    setup.plan.methods.push_back(make_method_config(name));
  }

  std::map<std::string, OptimizerConfig> method_overrides;
  std::map<std::string, std::map<std::string, Interval>> domain_axes;

  std::string raw_line;
  std::string section;
  int line_no = 0;
  std::ostringstream raw_text;

  while (std::getline(in, raw_line)) {
    raw_text << raw_line << '\n';
    ++line_no;
    const Location loc{origin, line_no};
    std::string line = raw_line;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(loc, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "experiment" && section != "criteria" && section != "output" &&
          section.rfind("method.", 0) != 0 && section.rfind("domain.", 0) != 0) {
        fail(loc, "unknown section [" + section + "]");
      }
      if (section.rfind("method.", 0) == 0) {
        const std::string name = section.substr(7);
        if (method_overrides.find(name) == method_overrides.end()) {
          try {
            method_overrides.emplace(name, make_method_config(name));
          } catch (const std::invalid_argument& e) {
            fail(loc, e.what());
          }
        }
      }
      if (section.rfind("domain.", 0) == 0) {
        const std::string name = section.substr(7);
        const auto known = function_names();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
          fail(loc, "unknown function '" + name + "' in domain section");
        }
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(loc, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(loc, "empty key");
    if (section.empty()) fail(loc, "key '" + key + "' outside any section");

    if (section == "experiment") {
      apply_experiment_key(loc, setup.plan, key, value);
    } else if (section == "criteria") {
      apply_criteria_key(loc, setup.plan.criteria, key, value);
    } else if (section == "output") {
      if (key == "directory") {
        setup.output_dir = value;
      } else {
        fail(loc, "unknown key '" + key + "' in [output]");
      }
    } else if (section.rfind("method.", 0) == 0) {
      apply_method_key(loc, method_overrides.at(section.substr(7)), key, value);
    } else {  // domain.<function>
      const std::string fn = section.substr(7);
      if (key != "x" && key != "y") {
        fail(loc, "unknown key '" + key + "' in [domain." + fn + "] (expected x or y)");
      }
      domain_axes[fn][key] = parse_interval(loc, key, value);
    }
  }

  for (OptimizerConfig& m : setup.plan.methods) {
    const auto it = method_overrides.find(m.name);
    if (it != method_overrides.end()) m = it->second;
  }

  for (const auto& [fn, axes] : domain_axes) {
    const auto x = axes.find("x");
    const auto y = axes.find("y");
    if (x == axes.end() || y == axes.end()) {
      throw ConfigError(origin + ": [domain." + fn + "] must set both x and y");
    }
    setup.domain_overrides[fn] = Domain{{x->second, y->second}};
  }

  setup.config_text = raw_text.str();
  return setup;
}

SweepSetup load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open configuration file");
  return parse_config(in, path);
}

CostFunction resolve_function(const SweepSetup& setup, const std::string& name) {
  CostFunction f = make_function(name);
  const auto it = setup.domain_overrides.find(name);
  if (it != setup.domain_overrides.end()) {
    f = with_domain(std::move(f), it->second);
  }
  return f;
}

}  // namespace powergrad
