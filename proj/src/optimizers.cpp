#include "powergrad/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace powergrad {

namespace {

struct CatalogEntry {
  const char* name;
  Method method;
  double h0;
};

constexpr CatalogEntry kCatalog[] = {
    {"gd", Method::Gd, 1.0},
    {"nag", Method::Nag, 1.0},
    {"adam", Method::Adam, 1.0},
    {"adam_scheduled", Method::AdamScheduled, 1.0},
    {"amsgrad", Method::Amsgrad, 1.0},
    {"h_gd", Method::Gd, 0.5},
    {"h_nag", Method::Nag, 0.5},
    {"h_adam", Method::Adam, 0.5},
    {"h_adam_scheduled", Method::AdamScheduled, 0.5},
    {"h_amsgrad", Method::Amsgrad, 0.5},
};

bool in_unit_interval(double x) { return x >= 0.0 && x < 1.0; }

double norm_and_check(const Vec& v, bool* finite) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) *finite = false;
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace

std::vector<std::string> method_names() {
  std::vector<std::string> names;
  for (const CatalogEntry& e : kCatalog) names.emplace_back(e.name);
  return names;
}

OptimizerConfig make_method_config(const std::string& name) {
  for (const CatalogEntry& e : kCatalog) {
    if (name == e.name) {
      OptimizerConfig c;
      c.method = e.method;
      c.name = e.name;
      c.h0 = e.h0;
      return c;
    }
  }
  std::string known;
  for (const CatalogEntry& e : kCatalog) {
    if (!known.empty()) known += ", ";
    known += e.name;
  }
  throw std::invalid_argument("unknown method '" + name + "' (available: " + known + ")");
}

std::vector<std::string> validate(const OptimizerConfig& c) {
  std::vector<std::string> errors;
  if (!(c.eta > 0.0) || !std::isfinite(c.eta)) {
    errors.push_back("learning_rate must be a positive finite number");
  }
  if (!in_unit_interval(c.gamma)) errors.push_back("gamma must lie in [0, 1)");
  if (!in_unit_interval(c.beta1)) errors.push_back("beta1 must lie in [0, 1)");
  if (!in_unit_interval(c.beta2)) errors.push_back("beta2 must lie in [0, 1)");
  if (!in_unit_interval(c.beta3)) errors.push_back("beta3 must lie in [0, 1)");
  if (!(c.epsilon > 0.0)) errors.push_back("epsilon must be positive");
  if (!(c.h0 > 0.0 && c.h0 <= 1.0)) errors.push_back("h0 must lie in (0, 1]");
  return errors;
}

OptimizerState make_optimizer(const OptimizerConfig& config, int dimension) {
  std::vector<std::string> errors = validate(config);
  if (dimension < 1) errors.push_back("dimension must be at least 1");
  if (!errors.empty()) {
    std::string message = "invalid optimizer configuration:";
    for (const std::string& e : errors) message += "\n  - " + e;
    throw std::invalid_argument(message);
  }
  OptimizerState s;
  const std::size_t n = static_cast<std::size_t>(dimension);
  s.velocity.assign(n, 0.0);
  s.first_moment.assign(n, 0.0);
  s.second_moment.assign(n, 0.0);
  s.amsgrad_cap.assign(n, 0.0);
  s.exponent = config.h0;
  s.power_gradient.assign(n, 0.0);
  s.scratch_gradient.assign(n, 0.0);
  s.scratch_point.assign(n, 0.0);
  return s;
}

StepNorms step(const OptimizerConfig& config, const CostFunction& f,
               OptimizerState& state, const Vec& theta, Vec& next) {
  const std::size_t n = theta.size();
  StepNorms norms;
  state.t += 1;
  next.resize(n);

  Vec& g = state.scratch_gradient;
  Vec& h = state.power_gradient;

  switch (config.method) {
    case Method::Gd: {
      f.gradient(theta, g);
      norms.grad = norm_and_check(g, &norms.gradient_finite);
      if (!norms.gradient_finite) break;
      power_transform(g, PowerExponent(state.exponent), h);
      norms.transformed = inf_norm(h);
      for (std::size_t i = 0; i < n; ++i) next[i] = theta[i] - config.eta * h[i];
      break;
    }

    case Method::Nag: {
      // Gradient at the look-ahead point theta - gamma * v_{t-1}; the
      // look-ahead may leave the search box, the objective is still
      // evaluated there.
      Vec& ahead = state.scratch_point;
      for (std::size_t i = 0; i < n; ++i) {
        ahead[i] = theta[i] - config.gamma * state.velocity[i];
      }
      f.gradient(ahead, g);
      norms.grad = norm_and_check(g, &norms.gradient_finite);
      if (!norms.gradient_finite) break;
      power_transform(g, PowerExponent(state.exponent), h);
      norms.transformed = inf_norm(h);
      for (std::size_t i = 0; i < n; ++i) {
        state.velocity[i] = config.gamma * state.velocity[i] + config.eta * h[i];
        next[i] = theta[i] - state.velocity[i];
      }
      break;
    }

    case Method::Adam:
    case Method::AdamScheduled:
    case Method::Amsgrad: {
      if (config.method == Method::AdamScheduled) {
        // Exponent moves first, then the transform uses the updated H_t.
        // H_t = beta3 * H_{t-1} + (1 - beta3), geometric approach to 1.
        state.exponent =
            std::min(1.0, config.beta3 * state.exponent + (1.0 - config.beta3));
      }
      f.gradient(theta, g);
      norms.grad = norm_and_check(g, &norms.gradient_finite);
      if (!norms.gradient_finite) break;
      power_transform(g, PowerExponent(state.exponent), h);
      norms.transformed = inf_norm(h);

      const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.t));
      const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.t));
      for (std::size_t i = 0; i < n; ++i) {
        const double s_prev = state.second_moment[i];
        state.first_moment[i] =
            config.beta1 * state.first_moment[i] + (1.0 - config.beta1) * h[i];
        const double s_t = config.beta2 * s_prev + (1.0 - config.beta2) * h[i] * h[i];
        state.second_moment[i] = s_t;

        const double m_hat = state.first_moment[i] / bc1;
        double denom;
        if (config.method == Method::Amsgrad) {
          // No bias correction on the capped second moment.
          const double cap = config.cap_mode == AmsgradCapMode::Paper
                                 ? std::max(s_t, s_prev)
                                 : std::max(state.amsgrad_cap[i], s_t);
          state.amsgrad_cap[i] = cap;
          denom = std::sqrt(cap) + config.epsilon;
        } else {
          denom = std::sqrt(s_t / bc2) + config.epsilon;
        }
        next[i] = theta[i] - config.eta * m_hat / denom;
      }
      break;
    }
  }

  if (!norms.gradient_finite) {
    next = theta;  // leave the iterate untouched; the caller records divergence
  }
  return norms;
}

}  // namespace powergrad
