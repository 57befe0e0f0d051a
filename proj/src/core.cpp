#include "powergrad/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace powergrad {

bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double inf_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

PowerExponent::PowerExponent(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw std::invalid_argument("power exponent must lie in (0, 1], got " +
                                std::to_string(value));
  }
}

void power_transform(const Vec& g, PowerExponent exponent, Vec& out) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) {
      throw std::domain_error("power_transform: non-finite gradient component at index " +
                              std::to_string(i));
    }
  }
  if (exponent.is_identity()) {
    out = g;  // bit-identical passthrough
    return;
  }
  const double h = exponent.value();
  out.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double gi = g[i];
    if (gi > 0.0) {
      out[i] = std::pow(gi, h);
    } else if (gi < 0.0) {
      out[i] = -std::pow(-gi, h);
    } else {
      out[i] = 0.0;  // sign(0) = 0, fixed points of GD stay fixed
    }
  }
}

Vec power_transform(const Vec& g, PowerExponent exponent) {
  Vec out;
  power_transform(g, exponent, out);
  return out;
}

}  // namespace powergrad
