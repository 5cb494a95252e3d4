#include "boltzgap/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "boltzgap/grid.hpp"

namespace boltzgap {

WeightSpec WeightSpec::exponential(double a, double s) {
  WeightSpec w;
  w.kind = Kind::Exponential;
  w.a = a;
  w.s = s;
  return w;
}

WeightSpec WeightSpec::algebraic(double beta) {
  WeightSpec w;
  w.kind = Kind::Algebraic;
  w.beta = beta;
  return w;
}

void WeightSpec::validate() const {
  switch (kind) {
    case Kind::Unit:
      return;
    case Kind::Exponential:
      if (!(a >= 0.0)) throw Error(ErrorCode::InvalidArgument, "exponential weight needs a >= 0", "weight.a");
      if (!(s > 0.0 && s <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "exponential weight needs s in (0, 1]", "weight.s");
      return;
    case Kind::Algebraic:
      if (!(beta >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "algebraic weight needs beta >= 0", "weight.beta");
      return;
  }
}

bool WeightSpec::nontrivial() const {
  switch (kind) {
    case Kind::Unit: return false;
    case Kind::Exponential: return a > 0.0;
    case Kind::Algebraic: return beta > 0.0;
  }
  return false;
}

std::string WeightSpec::kind_name() const {
  switch (kind) {
    case Kind::Unit: return "unit";
    case Kind::Exponential: return "exponential";
    case Kind::Algebraic: return "algebraic";
  }
  return "unit";
}

void ModelSpec::validate() const {
  if (d < 3) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 3", "model.d");
  if (!(gamma > -d && gamma <= d - 2))
    throw Error(ErrorCode::InvalidArgument, "gamma must satisfy -d < gamma <= d-2", "model.gamma");
  if (!(ell_b > 0.0)) throw Error(ErrorCode::InvalidArgument, "ell_b must be positive", "model.ell_b");
  weight.validate();
}

double sphere_area(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double maxwellian(double r, int d) {
  return std::pow(2.0 * std::numbers::pi, -0.5 * d) * std::exp(-0.5 * r * r);
}

double maxwellian(std::span<const double> v) {
  double r2 = 0.0;
  for (double x : v) r2 += x * x;
  return std::pow(2.0 * std::numbers::pi, -0.5 * static_cast<double>(v.size())) * std::exp(-0.5 * r2);
}

double weight_inv(double r, const WeightSpec& w) {
  switch (w.kind) {
    case WeightSpec::Kind::Unit: return 1.0;
    case WeightSpec::Kind::Exponential: return std::exp(w.a * std::pow(r, w.s));
    case WeightSpec::Kind::Algebraic: return 1.0 + std::pow(r, w.beta);
  }
  return 1.0;
}

double weight_inv(std::span<const double> v, const WeightSpec& w) {
  double r2 = 0.0;
  for (double x : v) r2 += x * x;
  return weight_inv(std::sqrt(r2), w);
}

namespace {

// Integral of M(v + rho*omega) over omega in S^{d-1}, |v| = r.
double shell_maxwellian(double r, double rho, int d, int order) {
  const double x = r * rho;
  const double base = std::exp(-0.5 * (r - rho) * (r - rho));
  if (d == 3) {
    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    if (x == 0.0) return 2.0 * c * base;
    return c * base * (-std::expm1(-2.0 * x)) / x;
  }
  const int levels = static_cast<int>(std::ceil(std::log2(std::numbers::pi * std::sqrt(x + 1.0)))) + 2;
  const auto br = quad::graded_right(0.0, std::numbers::pi, levels);
  const double ang = quad::integrate(br, order, [&](double th) {
    return std::exp(-x * (1.0 + std::cos(th))) * std::pow(std::sin(th), d - 2);
  });
  return sphere_area(d - 1) * std::pow(2.0 * std::numbers::pi, -0.5 * d) * base * ang;
}

}  // namespace

double collision_frequency(double r, const ModelSpec& spec, const SigmaQuad& q) {
  spec.validate();
  if (r < 0.0) throw Error(ErrorCode::InvalidArgument, "collision_frequency: negative radius");
  if (spec.gamma == 0.0) return spec.ell_b;
  const int d = spec.d;
  const double upper = r + q.r_max;
  std::vector<double> br = quad::graded_left(0.0, 1.0, 14);
  for (double x : quad::uniform(1.0, upper, 0.5)) br.push_back(x);
  br.erase(std::unique(br.begin(), br.end()), br.end());
  if (r > 1.0 && r < upper) {
    br.insert(std::upper_bound(br.begin(), br.end(), r), r);
    br.erase(std::unique(br.begin(), br.end()), br.end());
  }
  const double p = spec.gamma + d - 1;
  auto eval = [&](int order) {
    return quad::integrate(br, order, [&](double rho) {
      return std::pow(rho, p) * shell_maxwellian(r, rho, d, order);
    });
  };
  return spec.ell_b * quad::converged(q.quad, eval, "collision_frequency");
}

double collision_frequency(std::span<const double> v, const ModelSpec& spec, const SigmaQuad& q) {
  if (static_cast<int>(v.size()) != spec.d)
    throw Error(ErrorCode::InvalidArgument, "collision_frequency: velocity has wrong dimension");
  double r2 = 0.0;
  for (double x : v) r2 += x * x;
  return collision_frequency(std::sqrt(r2), spec, q);
}

SigmaBounds sigma_bounds(const ModelSpec& spec, const RadialGrid& grid, const SigmaQuad& q) {
  Eigen::VectorXd sigma(grid.size());
  for (int i = 0; i < grid.size(); ++i) sigma[i] = collision_frequency(grid.nodes[i], spec, q);
  return sigma_bounds(spec, grid, sigma);
}

SigmaBounds sigma_bounds(const ModelSpec& spec, const RadialGrid& grid, const Eigen::VectorXd& sigma) {
  if (grid.size() == 0) throw Error(ErrorCode::InvalidArgument, "sigma_bounds: empty grid");
  SigmaBounds b;
  b.sigma1 = std::numeric_limits<double>::infinity();
  b.sigma2 = -std::numeric_limits<double>::infinity();
  b.eta = std::numeric_limits<double>::infinity();
  b.sigma_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.size(); ++i) {
    const double ratio = sigma[i] / std::pow(1.0 + grid.nodes[i], spec.gamma);
    b.sigma1 = std::min(b.sigma1, ratio);
    b.sigma2 = std::max(b.sigma2, ratio);
    b.eta = std::min(b.eta, sigma[i]);
    b.sigma_max = std::max(b.sigma_max, sigma[i]);
  }
  return b;
}

double weighted_l1_norm(const Eigen::VectorXd& f, const RadialGrid& grid, const WeightSpec& w) {
  if (f.size() != grid.size())
    throw Error(ErrorCode::InvalidArgument, "weighted_l1_norm: size mismatch with grid");
  double s = 0.0;
  for (int i = 0; i < grid.size(); ++i) s += grid.weights[i] * std::abs(f[i]) * weight_inv(grid.nodes[i], w);
  return s;
}

}  // namespace boltzgap
