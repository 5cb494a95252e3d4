#include "boltzgap/evolve.hpp"

#include <algorithm>
#include <cmath>

namespace boltzgap {

std::string to_string(Integrator m) { return m == Integrator::Rk4 ? "rk4" : "exponential-euler"; }

Integrator parse_integrator(const std::string& s) {
  if (s == "rk4") return Integrator::Rk4;
  if (s == "exponential-euler") return Integrator::ExponentialEuler;
  throw Error(ErrorCode::Config, "unknown integrator '" + s + "'", "evolve.method");
}

namespace {

double grid_mass(const Eigen::VectorXd& f, const RadialGrid& grid) {
  double s = 0.0;
  for (int i = 0; i < grid.size(); ++i) s += grid.weights[i] * f[i];
  return s;
}

}  // namespace

Eigen::VectorXd equilibrium_projection(const Eigen::VectorXd& f0, const RadialGrid& grid) {
  if (f0.size() != grid.size()) throw Error(ErrorCode::InvalidArgument, "equilibrium_projection: size mismatch");
  const Eigen::VectorXd m = maxwellian_vector(grid);
  return (grid_mass(f0, grid) / grid_mass(m, grid)) * m;
}

Eigen::VectorXd range_initial_data(const GeneratorMatrix& gen, const Eigen::VectorXd& g, double rho0) {
  if (g.size() != gen.size()) throw Error(ErrorCode::InvalidArgument, "range_initial_data: size mismatch");
  const Eigen::VectorXd m = maxwellian_vector(gen.grid);
  return rho0 / grid_mass(m, gen.grid) * m + gen.apply(g);
}

Trajectory evolve(const GeneratorMatrix& gen, const Eigen::VectorXd& f0, const EvolveOptions& opt) {
  const int n = gen.size();
  if (f0.size() != n) throw Error(ErrorCode::InvalidArgument, "evolve: initial data has the wrong size");
  if (!(opt.t_end >= 0.0)) throw Error(ErrorCode::InvalidArgument, "evolve: t_end must be >= 0", "evolve.t_end");
  if (opt.save_every < 1) throw Error(ErrorCode::InvalidArgument, "evolve: save_every must be >= 1", "evolve.save_every");
  const double fmax = f0.cwiseAbs().maxCoeff();
  if (f0.minCoeff() < -1e-14 * fmax) throw Error(ErrorCode::Precondition, "evolve: initial data must be nonnegative");
  const double smax = gen.sigma.maxCoeff();
  double dt = opt.dt > 0.0 ? opt.dt : 0.1 / smax;
  const int steps = opt.t_end == 0.0 ? 0 : std::max(1, static_cast<int>(std::ceil(opt.t_end / dt - 1e-9)));
  if (steps > 0) dt = opt.t_end / steps;
  if (opt.method == Integrator::Rk4 && dt * smax > 0.5) {
    throw Error(ErrorCode::Precondition,
                "rk4 needs dt * max(sigma) <= 0.5, got " + std::to_string(dt * smax), "evolve.dt");
  }

  const Eigen::MatrixXd L = gen.generator();
  Eigen::MatrixXd P;
  if (opt.method == Integrator::ExponentialEuler) {
    Eigen::VectorXd phi(n), decay(n);
    for (int i = 0; i < n; ++i) {
      const double x = gen.sigma[i] * dt;
      decay[i] = std::exp(-x);
      phi[i] = x > 0.0 ? -std::expm1(-x) / gen.sigma[i] : dt;
    }
    if (gen.normalization == Normalization::ColumnStochastic) {
      const Eigen::VectorXd m = maxwellian_vector(gen.grid);
      P.resize(n, n);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) P(i, j) = gen.gain(i, j) * std::min(phi[i], phi[j]);
      }
      for (int i = 0; i < n; ++i) {
        double loss = 0.0;
        for (int j = 0; j < n; ++j) loss += P(i, j) * m[j];
        P(i, i) += 1.0 - loss / m[i];
      }
    } else {
      P = phi.asDiagonal() * gen.gain;
      P.diagonal() += decay;
    }
  }

  Trajectory tr;
  tr.dt = dt;
  const Eigen::VectorXd eq = equilibrium_projection(f0, gen.grid);
  tr.rho0 = grid_mass(f0, gen.grid);
  auto record = [&](double t, const Eigen::VectorXd& f) {
    tr.times.push_back(t);
    tr.states.push_back(f);
    tr.norms.push_back(weighted_l1_norm(f - eq, gen.grid, gen.spec.weight));
    tr.mass.push_back(grid_mass(f, gen.grid));
    tr.min_component.push_back(f.minCoeff());
  };
  Eigen::VectorXd f = f0;
  record(0.0, f);
  const bool conservative = gen.normalization == Normalization::ColumnStochastic;
  for (int s = 1; s <= steps; ++s) {
    if (opt.method == Integrator::ExponentialEuler) {
      f = P * f;
    } else {
      const Eigen::VectorXd k1 = L * f;
      const Eigen::VectorXd k2 = L * (f + 0.5 * dt * k1);
      const Eigen::VectorXd k3 = L * (f + 0.5 * dt * k2);
      const Eigen::VectorXd k4 = L * (f + dt * k3);
      f += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const double t = s * dt;
    if (!f.allFinite()) throw Error(ErrorCode::NonConvergence, "evolve: state became non-finite");
    if (f.minCoeff() < -opt.positivity_tol * f.cwiseAbs().maxCoeff()) {
      throw Error(ErrorCode::PositivityViolation, "evolve: negative state at t = " + std::to_string(t));
    }
    if (conservative) {
      const double mass = grid_mass(f, gen.grid);
      if (std::abs(mass - tr.rho0) > opt.mass_tol * std::abs(tr.rho0)) {
        throw Error(ErrorCode::Conservation, "evolve: mass drift " + std::to_string(mass - tr.rho0) +
                                                 " at t = " + std::to_string(t));
      }
    }
    if (s % opt.save_every == 0 || s == steps) record(t, f);
  }
  return tr;
}

namespace {

// Weights of the Lagrange interpolant through `nodes`, evaluated at x.
Eigen::VectorXd lagrange_weights(const std::vector<double>& nodes, double x) {
  const int n = static_cast<int>(nodes.size());
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) {
    double l = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k != j) l *= (x - nodes[k]) / (nodes[j] - nodes[k]);
    }
    w[j] = l;
  }
  return w;
}

}  // namespace

DysonPhillipsResult dyson_phillips(const GeneratorMatrix& gen, const Eigen::VectorXd& f0, double t, int m_terms,
                                   int n_quad) {
  const int n = gen.size();
  if (f0.size() != n) throw Error(ErrorCode::InvalidArgument, "dyson_phillips: initial data has the wrong size");
  if (m_terms < 0) throw Error(ErrorCode::InvalidArgument, "dyson_phillips: m_terms must be >= 0");
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "dyson_phillips: t must be >= 0");
  if (n_quad < 2) throw Error(ErrorCode::InvalidArgument, "dyson_phillips: n_quad must be >= 2");
  const Eigen::VectorXd& sig = gen.sigma;
  auto u0 = [&](double s, const Eigen::VectorXd& v) {
    return ((-s * sig).array().exp() * v.array()).matrix().eval();
  };
  DysonPhillipsResult res;
  Eigen::VectorXd term = u0(t, f0);
  res.partial_sums.push_back(term);
  if (m_terms == 0 || t == 0.0) {
    for (int j = 1; j <= m_terms; ++j) res.partial_sums.push_back(term);
    res.sum = term;
    return res;
  }
  const quad::Rule& gl = quad::gauss_legendre(n_quad);
  std::vector<double> nodes(n_quad);
  for (int k = 0; k < n_quad; ++k) nodes[k] = 0.5 * t * (gl.x[k] + 1.0);
  // Targets: the nodes and t itself (last column).
  std::vector<double> targets = nodes;
  targets.push_back(t);
  // For every target s: sub-points tau = s (x+1)/2 with weights and interpolation rows.
  std::vector<Eigen::MatrixXd> interp(targets.size());
  for (std::size_t a = 0; a < targets.size(); ++a) {
    interp[a].resize(n_quad, n_quad);
    for (int k = 0; k < n_quad; ++k) interp[a].row(k) = lagrange_weights(nodes, 0.5 * targets[a] * (gl.x[k] + 1.0)).transpose();
  }
  Eigen::MatrixXd F(n, n_quad);
  for (int k = 0; k < n_quad; ++k) F.col(k) = u0(nodes[k], f0);
  Eigen::VectorXd sum = term;
  for (int j = 1; j <= m_terms; ++j) {
    const Eigen::MatrixXd Hn = gen.gain * F;  // H_j at the nodes
    Eigen::MatrixXd Fn(n, n_quad);
    Eigen::VectorXd at_t;
    for (std::size_t a = 0; a < targets.size(); ++a) {
      const double s = targets[a];
      const Eigen::MatrixXd Hsub = Hn * interp[a].transpose();  // n x n_quad at the sub-points
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
      for (int k = 0; k < n_quad; ++k) {
        const double tau = 0.5 * s * (gl.x[k] + 1.0);
        acc += 0.5 * s * gl.w[k] * u0(s - tau, Hsub.col(k));
      }
      if (a < nodes.size()) {
        Fn.col(a) = acc;
      } else {
        at_t = acc;
      }
    }
    F = Fn;
    sum += at_t;
    res.partial_sums.push_back(sum);
  }
  res.sum = sum;
  return res;
}

DecayFit fit_decay(const Trajectory& traj, double t_lo, double t_hi) {
  if (traj.times.empty()) throw Error(ErrorCode::Window, "fit_decay: empty trajectory");
  const double eps = 1e-9 * std::max(1.0, std::abs(traj.times.back()));
  if (!(t_lo < t_hi) || t_lo < traj.times.front() - eps || t_hi > traj.times.back() + eps) {
    throw Error(ErrorCode::Window, "fit_decay: window [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) +
                                       "] is not inside the trajectory");
  }
  DecayFit fit;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  std::vector<double> ts, ys;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    if (t < t_lo - eps || t > t_hi + eps) continue;
    if (!(traj.norms[k] >= 1e-13)) {
      throw Error(ErrorCode::Window, "fit_decay: norm " + std::to_string(traj.norms[k]) + " at t = " +
                                         std::to_string(t) + " is at the numerical floor");
    }
    ts.push_back(t);
    ys.push_back(std::log(traj.norms[k]));
  }
  const int m = static_cast<int>(ts.size());
  if (m < 2) throw Error(ErrorCode::Window, "fit_decay: fewer than two samples in the window");
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (int k = 0; k < m; ++k) {
    st += ts[k];
    sy += ys[k];
    stt += ts[k] * ts[k];
    sty += ts[k] * ys[k];
  }
  const double slope = (m * sty - st * sy) / (m * stt - st * st);
  const double icpt = (sy - slope * st) / m;
  fit.rate = -slope;
  fit.prefactor = std::exp(icpt);
  fit.points = m;
  for (int k = 0; k < m; ++k) {
    fit.residual = std::max(fit.residual, std::abs(std::exp(ys[k] - icpt - slope * ts[k]) - 1.0));
  }
  return fit;
}

EnvelopeReport envelope_check(const Trajectory& traj, const RateFunctions& sm, double c, double t_lo, double t_hi) {
  if (!(c > 0.0 && c < 1.0)) throw Error(ErrorCode::Precondition, "envelope_check needs c in (0, 1)", "evolve.envelope_c");
  if (!(t_lo > 0.0 && t_lo < t_hi)) throw Error(ErrorCode::Window, "envelope_check: bad window");
  EnvelopeReport rep;
  rep.c = c;
  rep.t_lo = t_lo;
  rep.t_hi = t_hi;
  const double q = 0.25 * (t_hi - t_lo);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    if (t < t_lo - 1e-9 || t > t_hi + 1e-9) continue;
    const double env = theta_log_inv(c * t, sm);
    const double ratio = traj.norms[k] / env;
    rep.times.push_back(t);
    rep.envelope.push_back(env);
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (t <= t_lo + q + 1e-9) rep.first_quarter_max = std::max(rep.first_quarter_max, ratio);
    if (t >= t_hi - q - 1e-9) rep.last_quarter_max = std::max(rep.last_quarter_max, ratio);
  }
  if (rep.times.size() < 2) throw Error(ErrorCode::Window, "envelope_check: fewer than two samples in the window");
  rep.bounded = rep.last_quarter_max <= 2.0 * rep.first_quarter_max;
  return rep;
}

}  // namespace boltzgap
