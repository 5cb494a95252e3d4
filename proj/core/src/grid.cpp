#include "boltzgap/grid.hpp"

#include <cmath>
#include <string>

#include "boltzgap/error.hpp"
#include "boltzgap/model.hpp"
#include "boltzgap/quadrature.hpp"

namespace boltzgap {

RadialGrid build_grid(int n_radial, int n_angle, double r_max, int d, bool graded_origin) {
  if (d < 3) throw Error(ErrorCode::InvalidArgument, "grid dimension must be >= 3", "grid.d");
  if (!(r_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "r_max must be positive", "grid.r_max");
  if (n_angle < 8) throw Error(ErrorCode::InvalidArgument, "n_angle must be >= 8", "grid.n_angle");
  RadialGrid g;
  g.n_angle = n_angle;
  g.d = d;
  g.r_max = r_max;
  g.graded_origin = graded_origin;
  if (n_radial < g.panel_order) {
    throw Error(ErrorCode::GridTooCoarse,
                "n_radial = " + std::to_string(n_radial) + " is below one panel of " +
                    std::to_string(g.panel_order) + " nodes",
                "grid.n_radial");
  }
  if (n_radial % g.panel_order != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "n_radial must be a multiple of " + std::to_string(g.panel_order), "grid.n_radial");
  }
  int panels = n_radial / g.panel_order;
  if (graded_origin && panels < 3) {
    throw Error(ErrorCode::GridTooCoarse, "graded origin needs at least 3 panels", "grid.n_radial");
  }
  // The graded variant spends two panels on [0, h] split at h/4 and h/2.
  const int uniform_panels = graded_origin ? panels - 2 : panels;
  const double h = r_max / uniform_panels;
  if (graded_origin) {
    g.panel_breaks = {0.0, 0.25 * h, 0.5 * h};
    for (int p = 1; p <= uniform_panels; ++p) g.panel_breaks.push_back(p * h);
  } else {
    for (int p = 0; p <= panels; ++p) g.panel_breaks.push_back(p * h);
  }
  g.panel_breaks.back() = r_max;

  const quad::Rule& gl = quad::gauss_legendre(g.panel_order);
  const double area = sphere_area(d);
  for (int p = 0; p + 1 < static_cast<int>(g.panel_breaks.size()); ++p) {
    const double a = g.panel_breaks[p];
    const double b = g.panel_breaks[p + 1];
    for (int k = 0; k < g.panel_order; ++k) {
      const double r = 0.5 * (a + b) + 0.5 * (b - a) * gl.x[k];
      g.nodes.push_back(r);
      g.weights.push_back(0.5 * (b - a) * gl.w[k] * area * std::pow(r, d - 1));
    }
  }
  double mass = 0.0;
  for (int i = 0; i < g.size(); ++i) mass += g.weights[i] * maxwellian(g.nodes[i], d);
  if (!(std::abs(mass - 1.0) <= 1e-8)) {
    throw Error(ErrorCode::GridTooCoarse,
                "grid integrates the Maxwellian to " + std::to_string(mass) + " (error above 1e-8)",
                "grid.n_radial");
  }
  return g;
}

}  // namespace boltzgap
