#pragma once

#include <vector>

namespace boltzgap {

/// Composite Gauss-Legendre nodes on (0, r_max] for radial functions.
/// Weights include the surface factor |S^{d-1}| r^{d-1}.
struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> panel_breaks;  // panel p spans [panel_breaks[p], panel_breaks[p+1]]
  int panel_order = 8;
  int n_angle = 16;
  int d = 3;
  double r_max = 8.0;
  bool graded_origin = false;

  int size() const { return static_cast<int>(nodes.size()); }
  int panels() const { return static_cast<int>(panel_breaks.size()) - 1; }
  int panel_of(int i) const { return i / panel_order; }
};

/// Builds the grid and checks that it integrates the Maxwellian to 1 within
/// 1e-8; throws GridTooCoarse otherwise.
RadialGrid build_grid(int n_radial, int n_angle, double r_max, int d, bool graded_origin = false);

}  // namespace boltzgap
