#pragma once

#include <span>
#include <string>

#include <Eigen/Dense>

#include "boltzgap/quadrature.hpp"

namespace boltzgap {

struct RadialGrid;

/// The weight m(v) of the state space L^1(m^{-1} dv).
struct WeightSpec {
  enum class Kind { Unit, Exponential, Algebraic };

  Kind kind = Kind::Unit;
  double a = 0.0;     // exponential: m^{-1} = exp(a |v|^s)
  double s = 1.0;
  double beta = 0.0;  // algebraic: m^{-1} = 1 + |v|^beta

  static WeightSpec unit() { return {}; }
  static WeightSpec exponential(double a, double s);
  static WeightSpec algebraic(double beta);

  void validate() const;
  /// True when m is not identically 1.
  bool nontrivial() const;
  std::string kind_name() const;
};

struct ModelSpec {
  int d = 3;
  double gamma = 1.0;
  double ell_b = 1.0;
  WeightSpec weight;

  void validate() const;
  bool hard() const { return gamma >= 0.0; }
  bool soft() const { return gamma < 0.0; }
};

struct SigmaBounds {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double eta = 0.0;
  double sigma_max = 0.0;
};

/// Quadrature settings for the convolution defining the collision frequency.
struct SigmaQuad {
  quad::Config quad{16, 1e-8, 0.0, true};
  double r_max = 8.0;
};

/// Surface area of the unit sphere S^{d-1}.
double sphere_area(int d);

double maxwellian(double r, int d);
double maxwellian(std::span<const double> v);

double weight_inv(double r, const WeightSpec& w);
double weight_inv(std::span<const double> v, const WeightSpec& w);

/// Sigma(|v|) = ell_b * int |v-w|^gamma M(w) dw, in spherical coordinates
/// centred at v.
double collision_frequency(double r, const ModelSpec& spec, const SigmaQuad& q = {});
double collision_frequency(std::span<const double> v, const ModelSpec& spec,
                           const SigmaQuad& q = {});

SigmaBounds sigma_bounds(const ModelSpec& spec, const RadialGrid& grid, const SigmaQuad& q = {});
/// Same, from already computed nodal values of Sigma.
SigmaBounds sigma_bounds(const ModelSpec& spec, const RadialGrid& grid,
                         const Eigen::VectorXd& sigma);

double weighted_l1_norm(const Eigen::VectorXd& f, const RadialGrid& grid, const WeightSpec& w);

}  // namespace boltzgap
