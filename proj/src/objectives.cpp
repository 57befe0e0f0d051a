#include "powergrad/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace powergrad {

namespace {

Domain square_box(double half_width) {
  return Domain{{{-half_width, half_width}, {-half_width, half_width}}};
}

void check_dimension(const CostFunction& f, const Vec& theta) {
  if (static_cast<int>(theta.size()) != f.dimension) {
    throw std::invalid_argument(f.name + ": expected dimension " +
                                std::to_string(f.dimension) + ", got " +
                                std::to_string(theta.size()));
  }
}

}  // namespace

bool Domain::contains(const Vec& p) const {
  if (p.size() != bounds.size()) return false;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (!(p[i] >= bounds[i].lo && p[i] <= bounds[i].hi)) return false;
  }
  return true;
}

Vec Domain::center() const {
  Vec c(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    c[i] = 0.5 * (bounds[i].lo + bounds[i].hi);
  }
  return c;
}

double CostFunction::evaluate(const Vec& theta) const {
  check_dimension(*this, theta);
  return value(theta);
}

Vec CostFunction::gradient_at(const Vec& theta) const {
  check_dimension(*this, theta);
  Vec g;
  gradient(theta, g);
  return g;
}

CostFunction make_quadratic(double kappa) {
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("quadratic stiffness must be positive, got " +
                                std::to_string(kappa));
  }
  CostFunction f;
  f.name = "quadratic";
  f.dimension = 1;
  f.value = [kappa](const Vec& p) { return 0.5 * kappa * p[0] * p[0]; };
  f.gradient = [kappa](const Vec& p, Vec& g) {
    g.resize(1);
    g[0] = kappa * p[0];
  };
  f.domain = Domain{{{-10.0, 10.0}}};
  f.global_minimum = {0.0};
  return f;
}

CostFunction make_v1() {
  CostFunction f;
  f.name = "v1";
  f.dimension = 2;
  f.value = [](const Vec& p) {
    const double x = p[0], y = p[1];
    return -std::exp(-x * x - y * y) - std::exp(-x * x) - std::exp(-y * y) + 3.0;
  };
  f.gradient = [](const Vec& p, Vec& g) {
    const double x = p[0], y = p[1];
    const double exy = std::exp(-x * x - y * y);
    g.resize(2);
    g[0] = 2.0 * x * (exy + std::exp(-x * x));
    g[1] = 2.0 * y * (exy + std::exp(-y * y));
  };
  f.domain = square_box(3.0);
  f.global_minimum = {0.0, 0.0};
  return f;
}

CostFunction make_v2() {
  CostFunction f;
  f.name = "v2";
  f.dimension = 2;
  f.value = [](const Vec& p) {
    const double x = p[0], y = p[1];
    const double phi = -y * x * x - y * y + x * y + x + 2.0 * y;
    return 11.5 - 10.0 * std::exp((-x * x - y * y) / 25.0) -
           std::exp(-x * x - y * y) - 0.5 * std::cos(phi);
  };
  f.gradient = [](const Vec& p, Vec& g) {
    const double x = p[0], y = p[1];
    const double ewide = std::exp((-x * x - y * y) / 25.0);
    const double exy = std::exp(-x * x - y * y);
    const double phi = -y * x * x - y * y + x * y + x + 2.0 * y;
    const double s = std::sin(phi);
    g.resize(2);
    g[0] = 0.8 * x * ewide + 2.0 * x * exy + 0.5 * s * (-2.0 * x * y + y + 1.0);
    g[1] = 0.8 * y * ewide + 2.0 * y * exy + 0.5 * s * (-x * x - 2.0 * y + x + 2.0);
  };
  f.domain = square_box(5.0);
  f.global_minimum = {0.0, 0.0};
  return f;
}

CostFunction make_v3() {
  CostFunction f;
  f.name = "v3";
  f.dimension = 2;
  f.value = [](const Vec& p) {
    const double x = p[0], y = p[1];
    const double a = 2.0 * y - x;
    const double b = 2.0 * x + y;
    return (10.0 / 27.0) * a * a * a * a + (10.0 / 9.0) * b * b +
           5.0 * y * y * y * y;
  };
  f.gradient = [](const Vec& p, Vec& g) {
    const double x = p[0], y = p[1];
    const double a3 = std::pow(2.0 * y - x, 3);
    const double b = 2.0 * x + y;
    g.resize(2);
    g[0] = -(40.0 / 27.0) * a3 + (40.0 / 9.0) * b;
    g[1] = (80.0 / 27.0) * a3 + (20.0 / 9.0) * b + 20.0 * y * y * y;
  };
  f.domain = square_box(2.0);
  f.global_minimum = {0.0, 0.0};
  return f;
}

CostFunction make_v4() {
  CostFunction f;
  f.name = "v4";
  f.dimension = 2;
  f.value = [](const Vec& p) {
    const double x = p[0], y = p[1];
    const double a = 3.0 * x + y;
    const double b = 4.0 * std::sin(std::numbers::pi / 2.0 * a) + x - 3.0 * y;
    return std::log(a * a + 1.0) + std::cosh(b) - 1.0;
  };
  f.gradient = [](const Vec& p, Vec& g) {
    const double x = p[0], y = p[1];
    const double a = 3.0 * x + y;
    const double b = 4.0 * std::sin(std::numbers::pi / 2.0 * a) + x - 3.0 * y;
    const double c = std::cos(std::numbers::pi / 2.0 * a);
    const double sh = std::sinh(b);
    g.resize(2);
    g[0] = 6.0 * a / (a * a + 1.0) + sh * (6.0 * std::numbers::pi * c + 1.0);
    g[1] = 2.0 * a / (a * a + 1.0) + sh * (2.0 * std::numbers::pi * c - 3.0);
  };
  f.domain = square_box(2.0);
  f.global_minimum = {0.0, 0.0};
  return f;
}

CostFunction make_beale() {
  CostFunction f;
  f.name = "beale";
  f.dimension = 2;
  f.value = [](const Vec& p) {
    const double x = p[0], y = p[1];
    const double t1 = x * y * y * y - x + 2.625;
    const double t2 = x * y * y - x + 2.25;
    const double t3 = x * y - x + 1.5;
    return t1 * t1 + t2 * t2 + t3 * t3;
  };
  f.gradient = [](const Vec& p, Vec& g) {
    const double x = p[0], y = p[1];
    const double t1 = x * y * y * y - x + 2.625;
    const double t2 = x * y * y - x + 2.25;
    const double t3 = x * y - x + 1.5;
    g.resize(2);
    g[0] = 2.0 * t1 * (y * y * y - 1.0) + 2.0 * t2 * (y * y - 1.0) +
           2.0 * t3 * (y - 1.0);
    g[1] = 6.0 * t1 * x * y * y + 4.0 * t2 * x * y + 2.0 * t3 * x;
  };
  f.domain = square_box(4.5);
  f.global_minimum = {3.0, 0.5};
  return f;
}

std::vector<std::string> function_names() {
  return {"v1", "v2", "v3", "v4", "beale"};
}

CostFunction make_function(const std::string& name) {
  if (name == "v1") return make_v1();
  if (name == "v2") return make_v2();
  if (name == "v3") return make_v3();
  if (name == "v4") return make_v4();
  if (name == "beale") return make_beale();
  throw std::invalid_argument("unknown cost function '" + name +
                              "' (available: v1, v2, v3, v4, beale)");
}

CostFunction with_domain(CostFunction f, Domain d) {
  if (d.dimension() != f.dimension) {
    throw std::invalid_argument(f.name + ": domain dimension " +
                                std::to_string(d.dimension()) +
                                " does not match function dimension " +
                                std::to_string(f.dimension));
  }
  for (const Interval& b : d.bounds) {
    if (!(b.lo < b.hi)) {
      throw std::invalid_argument(f.name + ": domain bounds must satisfy lo < hi");
    }
  }
  if (!d.contains(f.global_minimum)) {
    throw std::invalid_argument(f.name + ": global minimum must lie inside the domain");
  }
  f.domain = std::move(d);
  return f;
}

ContourGrid contour_grid(const CostFunction& f, int resolution) {
  if (f.dimension != 2) {
    throw std::invalid_argument("contour_grid: " + f.name + " is not 2-D");
  }
  if (resolution < 2) {
    throw std::invalid_argument("contour_grid: resolution must be at least 2");
  }
  const Interval bx = f.domain.bounds[0];
  const Interval by = f.domain.bounds[1];
  ContourGrid grid;
  grid.resolution = resolution;
  grid.points.reserve(static_cast<std::size_t>(resolution) * resolution);
  Vec p(2);
  for (int iy = 0; iy < resolution; ++iy) {
    const double y = by.lo + (by.hi - by.lo) * iy / (resolution - 1);
    for (int ix = 0; ix < resolution; ++ix) {
      const double x = bx.lo + (bx.hi - bx.lo) * ix / (resolution - 1);
      p[0] = x;
      p[1] = y;
      grid.points.push_back({x, y, f.value(p)});
    }
  }
  return grid;
}

}  // namespace powergrad
