#include <cmath>
#include <map>

#include "boltzgap/spectral.hpp"
#include "doctest.h"

using namespace boltzgap;

namespace {

const ModelSpec kHs{3, 1.0, 1.0, WeightSpec::unit()};
const ModelSpec kSoft{3, -1.0, 1.0, WeightSpec::unit()};

const GeneratorMatrix& soft(double r_max) {
  static std::map<double, GeneratorMatrix> cache;
  auto it = cache.find(r_max);
  if (it == cache.end()) it = cache.emplace(r_max, assemble(build_grid(64, 16, r_max, 3, true), kSoft)).first;
  return it->second;
}

// Generator with no gain: L = -diag(sigma).
GeneratorMatrix loss_only(const std::vector<double>& sigma) {
  GeneratorMatrix g;
  const int n = static_cast<int>(sigma.size());
  for (int i = 0; i < n; ++i) g.grid.nodes.push_back(1.0 + i);
  g.grid.weights.assign(n, 1.0);
  g.gain = Eigen::MatrixXd::Zero(n, n);
  g.sigma = Eigen::Map<const Eigen::VectorXd>(sigma.data(), n);
  g.sigma_exact = g.sigma;
  g.rescale = Eigen::VectorXd::Ones(n);
  return g;
}

}  // namespace

TEST_CASE("hard spheres: simple zero eigenvalue and a gap below eta") {
  const GeneratorMatrix gen = assemble(build_grid(64, 16, 8.0, 3), kHs);
  const SpectrumReport rep = spectrum(gen);
  CHECK(rep.zero_count == 1);
  CHECK(rep.lambda_star > 0.0);
  CHECK(rep.lambda_star < rep.eta);
  CHECK(rep.eta == doctest::Approx(gen.sigma.minCoeff()));
  CHECK_FALSE(rep.no_gap);
  CHECK(rep.zero_mode_positive);
  CHECK(rep.zero_mode_cosine > 1.0 - 1e-8);
  for (std::size_t k = 1; k < rep.eigenvalues.size(); ++k)
    CHECK(rep.eigenvalues[k].real() <= rep.eigenvalues[k - 1].real());
  const double mu2 = hilbert_gap(assemble_hilbert(gen.grid, kHs).S);
  CHECK(std::abs(mu2 - rep.lambda_star) <= 0.01 * rep.lambda_star);
}

TEST_CASE("Maxwell molecules: spectrum inside [-ell_b, 0]") {
  const ModelSpec mm{3, 0.0, 1.0, WeightSpec::unit()};
  const GeneratorMatrix gen = assemble(build_grid(64, 16, 8.0, 3), mm);
  const SpectrumReport rep = spectrum(gen);
  for (const auto& z : rep.eigenvalues) {
    CHECK(z.real() >= -1.0 - 1e-6);
    CHECK(z.real() <= 1e-6);
  }
  CHECK(rep.lambda_star > 0.0);
  CHECK(rep.lambda_star <= 1.0);
}

TEST_CASE("soft potential: small eigenvalues move toward zero as r_max grows") {
  std::vector<std::vector<double>> small;
  for (double R : {7.0, 8.0, 10.0}) {
    const SpectrumReport rep = spectrum(soft(R));
    std::vector<double> s;
    for (auto it = rep.eigenvalues.begin() + 1; it != rep.eigenvalues.begin() + 4; ++it) s.push_back(-it->real());
    small.push_back(s);
  }
  for (int k = 0; k < 3; ++k) {
    CHECK(small[1][k] < small[0][k]);
    CHECK(small[2][k] < small[1][k]);
  }
}

TEST_CASE("soft potential resolvent stays below theta") {
  const GeneratorMatrix& gen = soft(8.0);
  const RateFunctions sm{gen.sigma.maxCoeff()};
  for (double a : {0.1, 0.5, 1.0, 5.0}) {
    CHECK(resolvent_norm(gen, a) <= theta(a, sm) * (1.0 + 1e-6));
    CHECK(resolvent_norm(gen, -a) <= theta(a, sm) * (1.0 + 1e-6));
  }
  CHECK(1e3 * resolvent_norm(gen, 1e3) == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(resolvent_norm(gen, 0.0), Error);
}

TEST_CASE("resolvent of a pure loss generator") {
  const GeneratorMatrix g = loss_only({0.5, 1.0, 2.0});
  for (double a : {0.1, 1.0, 30.0}) CHECK(resolvent_norm(g, a) == doctest::Approx(1.0 / std::hypot(a, 0.5)).epsilon(1e-13));
}

TEST_CASE("spectrum edge cases") {
  CHECK_THROWS_AS(spectrum(loss_only({0.0, 0.0, 1.0})), Error);
  const SpectrumReport rep = spectrum(loss_only({0.0, 1.0, 1.0, 3.0}));
  CHECK(rep.lambda_star == doctest::Approx(1.0));
  REQUIRE(rep.clusters.size() == 3);
  CHECK(rep.clusters[1].multiplicity == 2);
  Eigen::MatrixXd S = Eigen::VectorXd::LinSpaced(4, 0.0, -3.0).asDiagonal();
  CHECK(hilbert_gap(S) == doctest::Approx(1.0));
  S(1, 1) = 0.0;
  CHECK_THROWS_AS(hilbert_gap(S), Error);
}

TEST_CASE("theta values and limits") {
  const RateFunctions one{1.0};
  CHECK(theta(1.0, one) == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(theta(1.0, one) == doctest::Approx(3.41421).epsilon(1e-5));
  CHECK(theta(1e-3, one) * 1e-9 == doctest::Approx(2.0).epsilon(1e-3));
  const RateFunctions two{2.0};
  CHECK(theta(1e-3, two) * 1e-9 == doctest::Approx(8.0).epsilon(1e-3));
  // 1/(1 - S/sqrt(r^2+S^2)) / r in the original form.
  for (double r : {0.2, 3.0, 50.0}) CHECK(theta(r, two) == doctest::Approx(1.0 / r / (1.0 - 2.0 / std::hypot(r, 2.0))).epsilon(1e-10));
  CHECK(theta_log(1.0, one) == doctest::Approx((2.0 + std::sqrt(2.0)) * std::log(3.0 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(theta_log(1.0, one) == doctest::Approx(5.0696).epsilon(1e-4));
  CHECK_THROWS_AS(theta(0.0, one), Error);
}

TEST_CASE("theta_log is decreasing and bounded by r^{-3.5} near zero") {
  const RateFunctions one{1.0};
  double prev = INFINITY;
  for (int k = 0; k <= 120; ++k) {
    const double r = std::pow(10.0, -3.0 + 6.0 * k / 120);
    const double v = theta_log(r, one);
    CHECK(v < prev);
    prev = v;
  }
  double hi = 0.0, lo = INFINITY;
  for (int k = 0; k <= 40; ++k) {
    const double r = std::pow(10.0, -4.0 + 2.0 * k / 40);
    const double v = std::pow(r, 3.5) * theta_log(r, one);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  // r^{3.5} theta_log(r) ~ 2 sqrt(r) log(2 / r^4) -> 0: finite on the window and smallest at its left end.
  CHECK(std::isfinite(hi));
  CHECK(hi < 10.0);
  CHECK(lo == doctest::Approx(std::pow(1e-4, 3.5) * theta_log(1e-4, one)));
}

TEST_CASE("theta_log_inv inverts theta_log and decays like t^{-1/(3+eps)}") {
  const RateFunctions sm{0.8};
  for (double r : {1e-3, 0.05, 1.0, 40.0}) CHECK(theta_log_inv(theta_log(r, sm), sm) == doctest::Approx(r).epsilon(1e-11));
  const double t1 = 1e3, t2 = 1e6;
  const double slope =
      std::log(theta_log_inv(0.5 * t2, sm) / theta_log_inv(0.5 * t1, sm)) / std::log(t2 / t1);
  CHECK(slope >= -1.0 / 3.0);
  CHECK(slope <= -0.25);
  CHECK_THROWS_AS(theta_log_inv(0.0, sm), Error);
  CHECK_THROWS_AS(theta_log_inv(1e300, sm), Error);
}
