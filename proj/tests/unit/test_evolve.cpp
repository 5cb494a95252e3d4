#include <cmath>

#include "boltzgap/evolve.hpp"
#include "doctest.h"

using namespace boltzgap;

namespace {

const ModelSpec kHs{3, 1.0, 1.0, WeightSpec::unit()};

const GeneratorMatrix& raw() {
  static const GeneratorMatrix g = assemble(build_grid(64, 16, 8.0, 3), kHs);
  return g;
}
const GeneratorMatrix& cs() {
  static const GeneratorMatrix g = make_column_stochastic(raw());
  return g;
}

double mass(const Eigen::VectorXd& f, const RadialGrid& g) {
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.weights[i] * f[i];
  return s;
}

Eigen::VectorXd bump(const RadialGrid& g, double m) {
  Eigen::VectorXd f(g.size());
  for (int i = 0; i < g.size(); ++i) f[i] = std::exp(-0.5 * std::pow((g.nodes[i] - 2.0) / 0.5, 2));
  return f * (m / mass(f, g));
}

}  // namespace

TEST_CASE("equilibrium projection of a bump") {
  const RadialGrid& g = raw().grid;
  const Eigen::VectorXd p = equilibrium_projection(bump(g, 0.5), g);
  const Eigen::VectorXd m = maxwellian_vector(g);
  CHECK((p - 0.5 * m).cwiseAbs().maxCoeff() <= 1e-8 * m.maxCoeff());
  CHECK(mass(p, g) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("range initial data keeps the mass of rho0 M") {
  Eigen::VectorXd gv(cs().size());
  for (int i = 0; i < gv.size(); ++i) gv[i] = 1.0 / std::pow(1.0 + cs().grid.nodes[i] * cs().grid.nodes[i], 2);
  const Eigen::VectorXd f = range_initial_data(cs(), gv, 0.7);
  CHECK(mass(f, cs().grid) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("the Maxwellian is stationary") {
  const Eigen::VectorXd m = maxwellian_vector(raw().grid);
  for (const GeneratorMatrix* g : {&raw(), &cs()}) {
    for (Integrator method : {Integrator::ExponentialEuler, Integrator::Rk4}) {
      EvolveOptions opt;
      opt.method = method;
      opt.t_end = 10.0;
      const Trajectory tr = evolve(*g, m, opt);
      for (const auto& f : tr.states) CHECK(weighted_l1_norm(f - m, g->grid, kHs.weight) <= 1e-6);
    }
  }
}

TEST_CASE("positivity and mass conservation in column-stochastic mode") {
  EvolveOptions opt;
  opt.t_end = 10.0;
  const Eigen::VectorXd f0 = bump(cs().grid, 1.0);
  const Trajectory tr = evolve(cs(), f0, opt);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(tr.min_component[k] >= 0.0);
    CHECK(std::abs(tr.mass[k] - 1.0) <= 1e-8);
  }
  for (std::size_t k = 1; k < tr.norms.size(); ++k) CHECK(tr.norms[k] <= tr.norms[k - 1] * (1.0 + 1e-12));
}

TEST_CASE("hard-sphere decay rate matches the spectral gap") {
  const double lambda = spectrum(raw()).lambda_star;
  EvolveOptions opt;
  opt.t_end = 8.0;
  const Trajectory tr = evolve(cs(), bump(cs().grid, 1.0), opt);
  const DecayFit fit = fit_decay(tr, 2.0, 8.0);
  CHECK(std::abs(fit.rate - lambda) <= 0.05 * lambda);
}

TEST_CASE("semigroup composition") {
  const Eigen::VectorXd f0 = bump(raw().grid, 1.0);
  auto run = [&](const Eigen::VectorXd& f, double t, double dt) {
    EvolveOptions opt;
    opt.method = Integrator::Rk4;
    opt.t_end = t;
    opt.dt = dt;
    return evolve(raw(), f, opt).states.back();
  };
  const double dt = 0.05;
  const Eigen::VectorXd whole = run(f0, 1.0, dt);
  const double tol = (whole - run(f0, 1.0, 0.5 * dt)).norm();
  const Eigen::VectorXd split = run(run(f0, 0.37, dt), 0.63, dt);
  CHECK((split - whole).norm() <= 10.0 * tol);
}

TEST_CASE("Dyson-Phillips partial sums") {
  const GeneratorMatrix& g = raw();
  const double t = 0.2 / g.sigma.maxCoeff();
  const Eigen::VectorXd f0 = bump(g.grid, 1.0);
  const DysonPhillipsResult dp = dyson_phillips(g, f0, t, 8, 12);
  REQUIRE(dp.partial_sums.size() == 9);
  for (std::size_t j = 1; j < dp.partial_sums.size(); ++j)
    CHECK(((dp.partial_sums[j] - dp.partial_sums[j - 1]).array() >= -1e-15).all());
  EvolveOptions opt;
  opt.method = Integrator::Rk4;
  opt.t_end = t;
  opt.dt = t / 200;
  const Eigen::VectorXd ref = evolve(g, f0, opt).states.back();
  double prev = INFINITY;
  for (const auto& s : dp.partial_sums) {
    const double err = (s - ref).norm() / ref.norm();
    CHECK(err <= prev);
    prev = err;
  }
  CHECK(prev <= 1e-6);
  CHECK((dp.sum - dp.partial_sums.back()).norm() == 0.0);
  CHECK_THROWS_AS(dyson_phillips(g, f0, t, 2, 1), Error);
}

TEST_CASE("exponential fit of a synthetic trajectory") {
  Trajectory tr;
  for (int k = 0; k <= 20; ++k) {
    tr.times.push_back(0.5 * k);
    tr.norms.push_back(3.0 * std::exp(-0.7 * 0.5 * k));
  }
  const DecayFit fit = fit_decay(tr, 2.0, 8.0);
  CHECK(fit.rate == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.points == 13);
  CHECK_THROWS_AS(fit_decay(tr, 20.0, 30.0), Error);
  CHECK_THROWS_AS(fit_decay(tr, 2.0, 2.2), Error);
  tr.norms[10] = 0.0;
  CHECK_THROWS_AS(fit_decay(tr, 2.0, 8.0), Error);
}

TEST_CASE("envelope check on a trajectory that follows the envelope") {
  const RateFunctions sm{1.0};
  Trajectory tr;
  for (int k = 0; k <= 100; ++k) {
    const double t = 1.0 + k;
    tr.times.push_back(t);
    tr.norms.push_back(2.0 * theta_log_inv(0.5 * t, sm));
  }
  const EnvelopeReport rep = envelope_check(tr, sm, 0.5);
  CHECK(rep.bounded);
  CHECK(rep.max_ratio == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(envelope_check(tr, sm, 1.5), Error);
}

TEST_CASE("evolve rejects bad input") {
  const Eigen::VectorXd f0 = bump(raw().grid, 1.0);
  EvolveOptions opt;
  opt.method = Integrator::Rk4;
  opt.dt = 1.0;
  CHECK_THROWS_AS(evolve(raw(), f0, opt), Error);
  CHECK_THROWS_AS(evolve(raw(), -f0, EvolveOptions{}), Error);
  CHECK_THROWS_AS(evolve(raw(), Eigen::VectorXd::Ones(3), EvolveOptions{}), Error);
  CHECK(parse_integrator("rk4") == Integrator::Rk4);
  CHECK(to_string(Integrator::ExponentialEuler) == "exponential-euler");
  CHECK_THROWS_AS(parse_integrator("euler"), Error);
}
