#pragma once

#include <functional>
#include <string>
#include <vector>

#include "powergrad/core.hpp"

namespace powergrad {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Axis-aligned box the start points are sampled from. It bounds the sampling
// and the contour grids only; the dynamics itself is unconstrained.
struct Domain {
  std::vector<Interval> bounds;

  int dimension() const { return static_cast<int>(bounds.size()); }
  bool contains(const Vec& p) const;
  Vec center() const;
};

// Objective with exact value and hand-derived analytic gradient. All bundled
// functions are normalized so the lowest minimum has value 0.
struct CostFunction {
  std::string name;
  int dimension = 0;
  std::function<double(const Vec&)> value;
  std::function<void(const Vec&, Vec&)> gradient;  // writes into out
  Domain domain;
  Vec global_minimum;
  double minimum_value = 0.0;

  // Dimension-checked wrappers; the raw callables skip the check for hot loops.
  double evaluate(const Vec& theta) const;
  Vec gradient_at(const Vec& theta) const;
};

// One-dimensional kappa * theta^2 / 2, kappa > 0. Minimum at 0.
CostFunction make_quadratic(double kappa);

// The five 2-D benchmark landscapes with their default search boxes.
// v1: single Gaussian well surrounded by wide plateaus, box [-3,3]^2.
// v2: rippled landscape with several secondary minima, box [-5,5]^2.
// v3: convex quartic/quadratic bowl, box [-2,2]^2.
// v4: wavy ravine between exponentially steep walls, box [-2,2]^2.
// beale: narrow curved ravines, minimum at (3, 0.5), box [-4.5,4.5]^2.
CostFunction make_v1();
CostFunction make_v2();
CostFunction make_v3();
CostFunction make_v4();
CostFunction make_beale();

std::vector<std::string> function_names();
CostFunction make_function(const std::string& name);

// Replace the search box; the global minimum must remain inside.
CostFunction with_domain(CostFunction f, Domain d);

struct GridPoint {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
};

// Row-major resolution x resolution samples covering the domain inclusive of
// both bounds (y varies across rows, x within a row). 2-D functions only.
struct ContourGrid {
  int resolution = 0;
  std::vector<GridPoint> points;
};

ContourGrid contour_grid(const CostFunction& f, int resolution);

}  // namespace powergrad
