#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "boltzgap/discretize.hpp"
#include "boltzgap/spectral.hpp"

namespace boltzgap {

enum class Integrator { Rk4, ExponentialEuler };

std::string to_string(Integrator m);
/// Accepts "rk4" and "exponential-euler".
Integrator parse_integrator(const std::string& s);

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  /// Weighted L^1 distance to the equilibrium projection of f0.
  std::vector<double> norms;
  std::vector<double> mass;
  std::vector<double> min_component;
  double rho0 = 0.0;
  double dt = 0.0;
};

struct EvolveOptions {
  double t_end = 10.0;
  /// 0 selects 0.1 / max(sigma).
  double dt = 0.0;
  Integrator method = Integrator::ExponentialEuler;
  /// Keep every k-th state; the final state is always kept.
  int save_every = 1;
  double positivity_tol = 1e-10;
  double mass_tol = 1e-6;
};

/// (int f0 / int M_h) M_h
Eigen::VectorXd equilibrium_projection(const Eigen::VectorXd& f0, const RadialGrid& grid);

/// rho0 M_h + L_h g: lies in Ker L_h + Im L_h by construction.
Eigen::VectorXd range_initial_data(const GeneratorMatrix& gen, const Eigen::VectorXd& g, double rho0 = 1.0);

/// Time stepping of df/dt = L_h f. The exponential-Euler scheme treats the
/// loss exactly; in column-stochastic mode its gain weights are chosen so
/// that mass and M_h are preserved exactly and states stay nonnegative.
Trajectory evolve(const GeneratorMatrix& gen, const Eigen::VectorXd& f0, const EvolveOptions& opt);

struct DysonPhillipsResult {
  Eigen::VectorXd sum;
  /// partial_sums[m] = U_0(t) f0 + ... + U_m(t) f0
  std::vector<Eigen::VectorXd> partial_sums;
};

/// U_0(t) = diag(exp(-sigma t)), U_{j+1}(t) f = int_0^t U_0(t-s) gain U_j(s) f ds,
/// with every convolution done by n_quad-point Gauss quadrature on [0, s]
/// and Lagrange interpolation in time.
DysonPhillipsResult dyson_phillips(const GeneratorMatrix& gen, const Eigen::VectorXd& f0, double t, int m_terms,
                                   int n_quad);

struct DecayFit {
  double rate = 0.0;
  double prefactor = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  /// max relative deviation of the norms from the fitted exponential
  double residual = 0.0;
  int points = 0;
};

/// Least-squares line through (t, log norm) over [t_lo, t_hi].
DecayFit fit_decay(const Trajectory& traj, double t_lo, double t_hi);

struct EnvelopeReport {
  double c = 0.5;
  double t_lo = 10.0;
  double t_hi = 100.0;
  std::vector<double> times;
  std::vector<double> envelope;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double first_quarter_max = 0.0;
  double last_quarter_max = 0.0;
  /// last_quarter_max <= 2 first_quarter_max
  bool bounded = false;
};

/// Ratio norm(t) / theta_log_inv(c t) over [t_lo, t_hi].
EnvelopeReport envelope_check(const Trajectory& traj, const RateFunctions& sm, double c, double t_lo = 10.0,
                              double t_hi = 100.0);

}  // namespace boltzgap
