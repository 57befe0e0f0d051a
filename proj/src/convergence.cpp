#include "powergrad/convergence.hpp"

#include <cmath>

namespace powergrad {

std::vector<std::string> validate(const StopCriteria& c) {
  std::vector<std::string> errors;
  if (!(c.value_tolerance > 0.0)) errors.push_back("value_tolerance must be positive");
  if (!(c.orbit_tolerance > 0.0)) errors.push_back("orbit_tolerance must be positive");
  if (c.max_steps < 1) errors.push_back("max_steps must be at least 1");
  if (!(c.divergence_radius > 0.0)) errors.push_back("divergence_radius must be positive");
  return errors;
}

std::string to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::ConvergedValue: return "CONVERGED_VALUE";
    case TerminationReason::ConvergedOrbit: return "CONVERGED_ORBIT";
    case TerminationReason::DivergedNonfinite: return "DIVERGED_NONFINITE";
    case TerminationReason::DivergedRadius: return "DIVERGED_RADIUS";
    case TerminationReason::BudgetExhausted: return "BUDGET_EXHAUSTED";
  }
  return "UNKNOWN";
}

std::optional<Termination> check(const Vec& theta_t, const Vec& theta_prev,
                                 const Vec& h_t, const Vec& h_prev,
                                 double value_t, const CostFunction& f,
                                 const StopCriteria& criteria, long long step) {
  if (value_t < criteria.value_tolerance) {
    return Termination{TerminationReason::ConvergedValue, {}};
  }

  if (step >= 1 && !h_t.empty() && h_t.size() == h_prev.size()) {
    double sum_norm = 0.0;
    for (std::size_t i = 0; i < h_t.size(); ++i) {
      sum_norm = std::max(sum_norm, std::abs(h_t[i] + h_prev[i]));
    }
    if (sum_norm < criteria.orbit_tolerance) {
      OrbitDiagnostics orbit;
      orbit.midpoint.resize(theta_t.size());
      for (std::size_t i = 0; i < theta_t.size(); ++i) {
        orbit.midpoint[i] = 0.5 * (theta_t[i] + theta_prev[i]);
      }
      orbit.midpoint_value = f.value(orbit.midpoint);
      if (orbit.midpoint_value < criteria.value_tolerance) {
        orbit.orbit_detected = true;
        double amp = 0.0;
        for (std::size_t i = 0; i < theta_t.size(); ++i) {
          amp = std::max(amp, std::abs(theta_t[i] - orbit.midpoint[i]));
        }
        orbit.orbit_amplitude = amp;
        return Termination{TerminationReason::ConvergedOrbit, std::move(orbit)};
      }
    }
  }

  if (!std::isfinite(value_t) || !all_finite(theta_t) || !all_finite(h_t)) {
    return Termination{TerminationReason::DivergedNonfinite, {}};
  }
  if (inf_norm(theta_t) > criteria.divergence_radius) {
    return Termination{TerminationReason::DivergedRadius, {}};
  }
  if (step >= criteria.max_steps) {
    return Termination{TerminationReason::BudgetExhausted, {}};
  }
  return std::nullopt;
}

}  // namespace powergrad
