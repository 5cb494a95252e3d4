#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "boltzgap/grid.hpp"
#include "boltzgap/model.hpp"
#include "boltzgap/quadrature.hpp"

namespace boltzgap {

enum class Normalization { Raw, ColumnStochastic };

std::string to_string(Normalization n);
/// Accepts "raw" and "column-stochastic".
Normalization parse_normalization(const std::string& s);

struct ReducedKernelOptions {
  /// Gauss-Legendre order on every graded piece of the angular quadrature.
  int n_angle = 16;
  /// Repeat with 2 * n_angle and require agreement to rel_tol.
  bool verify = false;
  double rel_tol = 1e-8;
  /// Force the general-d route (quadrature in |v-w| of kernel_gamma) even
  /// where the d = 3 closed form applies.
  bool numeric = false;
};

/// Spherical mean of k_gamma(r e_1, r' omega) over omega in S^{d-1}, so that
/// int k_gamma(v, w) f(|w|) dw = int |S^{d-1}| r'^{d-1} reduced_kernel(|v|, r') f(r') dr'.
/// In d = 3 the |v-w| integral is done in closed form with erfcx.
double reduced_kernel(double r, double rp, const ModelSpec& spec, const ReducedKernelOptions& opt = {});

/// Discretization of L = K - Sigma on a radial grid: (L f)_i = sum_j gain(i,j) f_j - sigma_i f_i.
struct GeneratorMatrix {
  Eigen::MatrixXd gain;
  /// Loss rates used in the generator (the column sums in column-stochastic mode).
  Eigen::VectorXd sigma;
  /// Collision frequency at the nodes.
  Eigen::VectorXd sigma_exact;
  /// sigma / sigma_exact per node.
  Eigen::VectorXd rescale;
  RadialGrid grid;
  ModelSpec spec;
  Normalization normalization = Normalization::Raw;

  int size() const { return static_cast<int>(gain.rows()); }
  Eigen::MatrixXd generator() const;
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
};

struct AssembleOptions {
  Normalization normalization = Normalization::Raw;
  /// Product integration against the panel interpolants is used on the own
  /// panel and on `neighbours` panels to each side.
  int neighbours = 1;
  int local_order = 12;
  int local_levels = 8;
  /// Rescale factors outside [1 - max_rescale, 1 + max_rescale] are rejected.
  double max_rescale = 0.1;
  SigmaQuad sigma_quad{};
};

/// Discrete Maxwellian on the nodes.
Eigen::VectorXd maxwellian_vector(const RadialGrid& grid);

GeneratorMatrix assemble(const RadialGrid& grid, const ModelSpec& spec, const AssembleOptions& opt = {});

/// Turns a raw matrix into the column-stochastic one: A = W G D_M is replaced
/// by (A + A^T)/2 and sigma by the weighted column sums, so that mass is
/// conserved and L M_h = 0 exactly.
GeneratorMatrix make_column_stochastic(const GeneratorMatrix& raw, double max_rescale = 0.1);

struct ColumnIdentity {
  /// sum_i w_i gain(i,j) / w_j
  Eigen::VectorXd column_sum;
  Eigen::VectorXd rel_error;
  /// Max relative error over nodes with r <= r_max - margin.
  double max_interior = 0.0;
  double max_all = 0.0;
  double margin = 2.0;
};

/// Compares the gain column sums with the collision frequency.
ColumnIdentity column_identity(const GeneratorMatrix& gen, double margin = 2.0);

/// sum_i w_i |(L M_h)_i| / sum_i w_i M_h,i
double equilibrium_residual(const GeneratorMatrix& gen);

struct HilbertMatrix {
  /// Symmetric generator in L^2(M^{-1}) coordinates, symmetrized.
  Eigen::MatrixXd S;
  Eigen::VectorXd transform;
  /// Relative max |S - S^T| before symmetrization.
  double asymmetry = 0.0;
  /// max |Sigma_h(r_i) / Sigma(r_i) - 1| over r_i <= r_max - 2, for the diagonal
  /// used by assemble_hilbert.
  double sigma_defect = 0.0;
};

/// T L_h T^{-1} with T = sqrt(w / M). Throws DiscretizationInconsistent when
/// the asymmetry exceeds max_asymmetry.
HilbertMatrix hilbert_matrix(const GeneratorMatrix& gen, double max_asymmetry = 1e-6);
/// Nystrom matrix sqrt(w_i w_j) p(r_i, r_j) - diag(Sigma_h) of the symmetrized
/// kernel p = M^{-1/2} k M^{1/2}, independent of the L^1 assembly. Sigma_h is
/// int k(w, v) dw on the same rule, which makes S negative semidefinite with
/// sqrt(w M) in its kernel.
HilbertMatrix assemble_hilbert(const RadialGrid& grid, const ModelSpec& spec, const AssembleOptions& opt = {});

/// Cubic interpolation of f / M between nodes, multiplied back by M(r); beyond
/// the last node this is f(r_n) M(r) / M(r_n).
double interpolate_radial(const Eigen::VectorXd& f, const RadialGrid& grid, double r);

/// Gain term computed from the collision integral with pre-collisional
/// velocities v' = (v+v_*)/2 + |v-v_*|/2 sigma, v_*' = (v+v_*)/2 - |v-v_*|/2 sigma,
/// integrating over v_* in R^3 and sigma in S^2 (d = 3).
double gain_sigma_form(const Eigen::VectorXd& f, const RadialGrid& grid, double v_mag,
                       const ModelSpec& spec, const quad::Config& cfg = {10, 1e-4, 0.0, true});

}  // namespace boltzgap
