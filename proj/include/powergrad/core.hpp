#pragma once

#include <vector>

namespace powergrad {

// Parameter points and gradients share one dense representation.
// Non-finite components are treated as a divergence signal by the harness,
// never propagated silently.
using Vec = std::vector<double>;

bool all_finite(const Vec& v);
double inf_norm(const Vec& v);

// Exponent H of the power transform, restricted to (0, 1].
// H = 1 is the exact identity (plain gradients).
class PowerExponent {
 public:
  explicit PowerExponent(double value);
  double value() const { return value_; }
  bool is_identity() const { return value_ == 1.0; }

 private:
  double value_;
};

// Componentwise versus-preserving power of a gradient:
//
//   h[i] = sign(g[i]) * |g[i]|^H,   with sign(0) = 0.
//
// Components below 1 in magnitude grow, components above 1 shrink, so the
// step speeds up in shallow regions and is damped on steep slopes. |g|^H is
// computed with the platform pow; there is no epsilon floor, amplification
// of tiny components is the intended behavior. The result is generally not
// the gradient of any scalar function.
//
// Throws std::domain_error naming the offending index if g has a non-finite
// component.
void power_transform(const Vec& g, PowerExponent exponent, Vec& out);
Vec power_transform(const Vec& g, PowerExponent exponent);

}  // namespace powergrad
