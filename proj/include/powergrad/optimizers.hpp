#pragma once

#include <string>
#include <vector>

#include "powergrad/core.hpp"
#include "powergrad/objectives.hpp"

namespace powergrad {

enum class Method { Gd, Nag, Adam, AdamScheduled, Amsgrad };

// Which pair the AMSGrad second-moment cap maximizes over.
//   Paper:       s_hat_t = max(s_t, s_{t-1})        (two consecutive values)
//   Accumulated: s_hat_t = max(s_hat_{t-1}, s_t)    (running maximum)
enum class AmsgradCapMode { Paper, Accumulated };

struct OptimizerConfig {
  Method method = Method::Gd;
  std::string name = "gd";  // catalog name this config was built from
  double eta = 0.1;         // learning rate
  double gamma = 0.99;      // NAG velocity damping
  double beta1 = 0.9;       // first-moment decay
  double beta2 = 0.99;      // second-moment decay
  double beta3 = 0.999;     // exponent schedule rate (adam_scheduled only)
  double epsilon = 1e-8;    // keeps the ADAM denominator away from zero
  double h0 = 1.0;          // initial power exponent, in (0, 1]
  AmsgradCapMode cap_mode = AmsgradCapMode::Paper;
};

// Catalog: gd, nag, adam, adam_scheduled, amsgrad use plain gradients
// (h0 = 1); the h_-prefixed variants start from h0 = 1/2.
std::vector<std::string> method_names();
OptimizerConfig make_method_config(const std::string& name);

// Empty when this is a valid configuration; one message per violation otherwise.
std::vector<std::string> validate(const OptimizerConfig& config);

struct OptimizerState {
  long long t = 0;       // completed steps; bias corrections use the 1-based index
  Vec velocity;          // NAG
  Vec first_moment;      // m
  Vec second_moment;     // s, componentwise >= 0
  Vec amsgrad_cap;       // s_hat
  double exponent = 1.0; // H_t, driven toward 1 by adam_scheduled
  Vec power_gradient;    // h_t consumed by the most recent step

  Vec scratch_gradient;  // step-internal buffers, kept to avoid reallocation
  Vec scratch_point;

  int dimension() const { return static_cast<int>(power_gradient.size()); }
};

// Zero-initialized state with H_t = h0 and t = 0. Throws std::invalid_argument
// listing every violated hyperparameter range.
OptimizerState make_optimizer(const OptimizerConfig& config, int dimension);

struct StepNorms {
  double grad = 0.0;         // inf-norm of the raw gradient g_t
  double transformed = 0.0;  // inf-norm of the power gradient h_t
  bool gradient_finite = true;
};

// Advance one step of the configured method, writing the next iterate into
// `next`. The power gradient actually used is left in state.power_gradient
// for orbit detection. A non-finite gradient skips the update and reports
// gradient_finite = false so the caller can terminate the run.
StepNorms step(const OptimizerConfig& config, const CostFunction& f,
               OptimizerState& state, const Vec& theta, Vec& next);

}  // namespace powergrad
