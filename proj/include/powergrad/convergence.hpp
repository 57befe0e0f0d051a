#pragma once

#include <optional>
#include <string>
#include <vector>

#include "powergrad/core.hpp"
#include "powergrad/objectives.hpp"

namespace powergrad {

struct StopCriteria {
  double value_tolerance = 1e-4;   // success when V(theta_t) drops below this
  double orbit_tolerance = 1e-8;   // on ||h_t + h_{t-1}||_inf
  long long max_steps = 10000;
  double divergence_radius = 1e8;  // on ||theta_t||_inf
};

std::vector<std::string> validate(const StopCriteria& criteria);

enum class TerminationReason {
  ConvergedValue,
  ConvergedOrbit,
  DivergedNonfinite,
  DivergedRadius,
  BudgetExhausted,
};

// The exact strings used in run records and result tables.
std::string to_string(TerminationReason reason);

// A detected 2-state orbit straddling the minimum: the iterates bounce
// between two points whose power gradients cancel, and the midpoint
// (theta_t + theta_{t-1}) / 2 estimates the minimizer.
struct OrbitDiagnostics {
  bool orbit_detected = false;
  double orbit_amplitude = 0.0;  // ||theta_t - midpoint||_inf
  Vec midpoint;
  double midpoint_value = 0.0;   // V(midpoint)
};

struct Termination {
  TerminationReason reason = TerminationReason::BudgetExhausted;
  OrbitDiagnostics orbit;  // filled when reason == ConvergedOrbit
};

// Termination test for one step, applied in priority order:
//   1. CONVERGED_VALUE      value_t < value_tolerance
//   2. CONVERGED_ORBIT      ||h_t + h_prev||_inf < orbit_tolerance and
//                           V(midpoint) < value_tolerance (step >= 1 and both
//                           power gradients supplied); a 2-cycle around a
//                           non-minimum does not count as success
//   3. DIVERGED_NONFINITE   any component of theta_t or h_t, or value_t,
//                           is non-finite
//   4. DIVERGED_RADIUS      ||theta_t||_inf > divergence_radius
//   5. BUDGET_EXHAUSTED     step == max_steps
// The midpoint is evaluated only when the gradient-sum test already passed,
// so the per-step cost is one vector add plus a norm.
std::optional<Termination> check(const Vec& theta_t, const Vec& theta_prev,
                                 const Vec& h_t, const Vec& h_prev,
                                 double value_t, const CostFunction& f,
                                 const StopCriteria& criteria, long long step);

}  // namespace powergrad
