#pragma once

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "boltzgap/discretize.hpp"

namespace boltzgap {

/// Eigenvalues whose real parts agree within the clustering tolerance.
struct EigenCluster {
  double re = 0.0;
  int multiplicity = 0;
};

struct SpectrumReport {
  /// Sorted by descending real part.
  std::vector<std::complex<double>> eigenvalues;
  std::vector<EigenCluster> clusters;
  std::complex<double> zero_eigenvalue;
  /// Number of eigenvalues within zero_tol of 0.
  int zero_count = 0;
  double lambda_star = 0.0;
  /// inf of sigma over the grid.
  double eta = 0.0;
  double sigma_max = 0.0;
  /// NaN until filled in from the symmetric problem.
  double mu2 = std::numeric_limits<double>::quiet_NaN();
  /// ||L m0|| / ||m0|| for the eigenvector m0 nearest 0.
  double zero_mode_residual = 0.0;
  /// Eigenvector of the zero eigenvalue, sign fixed and scaled to unit mass.
  Eigen::VectorXd zero_mode;
  bool zero_mode_positive = false;
  /// Cosine between the zero mode and the discrete Maxwellian.
  double zero_mode_cosine = 0.0;
  double no_gap_threshold = 1e-2;
  /// lambda_star below no_gap_threshold.
  bool no_gap = false;
};

/// Full dense eigensolve of L_h. Throws DegenerateZero when more than one
/// eigenvalue lies within zero_tol of 0.
SpectrumReport spectrum(const GeneratorMatrix& gen, double zero_tol = 1e-6, double no_gap_threshold = 1e-2,
                        double cluster_tol = 1e-6);

/// Eigenvalues of a symmetric matrix in descending order.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& S);

/// -(second largest eigenvalue) of the symmetrized generator. Throws
/// Degenerate when that eigenvalue is not negative.
double hilbert_gap(const Eigen::MatrixXd& S);

struct RateFunctions {
  double sigma_max = 1.0;
};

/// (1/r) / (1 - S / sqrt(r^2 + S^2)), S = sigma_max.
double theta(double r, const RateFunctions& sm);
/// theta(r) log(1 + theta(r) / r)
double theta_log(double r, const RateFunctions& sm);
/// Inverse of the decreasing map theta_log on [1e-12, 1e12].
double theta_log_inv(double y, const RateFunctions& sm);

/// Weighted L^1(m^{-1}) operator norm of (i alpha - L_h)^{-1}:
/// max_j sum_i w_i m^{-1}(r_i) |R_ij| / (w_j m^{-1}(r_j)).
double resolvent_norm(const GeneratorMatrix& gen, double alpha);

}  // namespace boltzgap
