#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "boltzgap/carleman.hpp"
#include "boltzgap/discretize.hpp"
#include "doctest.h"

using namespace boltzgap;

namespace {

ModelSpec with_weight(double gamma, WeightSpec w) { return ModelSpec{3, gamma, 1.0, w}; }

}  // namespace

TEST_CASE("H_gamma with unit weight is the collision frequency") {
  RadialIntegralConfig cfg;
  cfg.r_max = 14.0;
  for (double gamma : {1.0, -1.0}) {
    const ModelSpec spec = with_weight(gamma, WeightSpec::unit());
    for (double w : {0.5, 1.0, 3.0}) {
      CAPTURE(gamma);
      CAPTURE(w);
      CHECK(h_gamma(w, spec, cfg) == doctest::Approx(collision_frequency(w, spec)).epsilon(1e-6));
    }
  }
}

TEST_CASE("H_gamma decay exponents") {
  CHECK(h_gamma_exponent(with_weight(1.0, WeightSpec::exponential(0.25, 1.0))) == 0.0);
  CHECK(h_gamma_exponent(with_weight(1.0, WeightSpec::exponential(0.25, 0.5))) == 0.5);
  CHECK(h_gamma_exponent(with_weight(1.0, WeightSpec::algebraic(2.0))) == -1.0);
  CHECK(h_gamma_exponent(with_weight(-1.0, WeightSpec::unit())) == -1.0);
}

TEST_CASE("H_gamma bound with exponential weight: finite constant, correct exponent") {
  RadialIntegralConfig cfg;
  cfg.r_max = 20.0;
  const BoundReport rep = check_h_gamma(with_weight(1.0, WeightSpec::exponential(1.0, 1.0)), 16.0, 10, cfg);
  CHECK(rep.passed);
  CHECK(std::isfinite(rep.sup_ratio));
  CHECK(rep.extra.at("tail_slope") <= 0.25);
}

TEST_CASE("DP tail vanishes with weight, not without") {
  RadialIntegralConfig cfg;
  cfg.r_max = 16.0;
  const ModelSpec weighted = with_weight(1.0, WeightSpec::exponential(0.25, 1.0));
  double prev = INFINITY;
  for (double r : {2.0, 4.0, 6.0, 8.0, 12.0}) {
    const double v = dp_tail(3.0, r, weighted, cfg);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-6);
  CHECK(dp_tail(3.0, 16.0, weighted, cfg) == 0.0);

  const ModelSpec unit = with_weight(1.0, WeightSpec::unit());
  const double first = dp_tail(1.5 * 4.0, 4.0, unit, cfg);
  for (double r : {6.0, 8.0}) CHECK(dp_tail(1.5 * r, r, unit, cfg) > 0.5 * first);
  // Below the tail radius the kernel mass beyond r is exponentially small.
  CHECK(dp_tail(0.75 * 8.0, 8.0, unit, cfg) < 1e-3 * first);

  const BoundReport rep = check_dp_tail(unit, {2.0, 4.0, 6.0, 8.0}, 12.0, 6, cfg);
  CHECK(rep.expected_fail);
  CHECK(rep.extra.at("last_over_first") >= 0.5);
  CHECK_THROWS_AS(dp_tail(1.0, 20.0, unit, cfg), Error);
}

TEST_CASE("DP tail with the kernel singularity on the tail radius") {
  RadialIntegralConfig cfg;
  cfg.r_max = 16.0;
  const ModelSpec soft = with_weight(-1.0, WeightSpec::unit());
  const double v = dp_tail(2.0, 2.0, soft, cfg);
  ReducedKernelOptions ko;
  auto f = [&](double r) { return 4.0 * std::numbers::pi * r * r * reduced_kernel(r, 2.0, soft, ko); };
  using boost::math::quadrature::gauss_kronrod;
  const double oracle = gauss_kronrod<double, 31>::integrate(f, 2.0, 2.5, 20, 1e-11) +
                        gauss_kronrod<double, 31>::integrate(f, 2.5, 16.0, 20, 1e-11);
  CHECK(v == doctest::Approx(oracle / std::pow(1.0 + 2.0, -1.0)).epsilon(1e-7));
  CHECK(std::isfinite(dp_tail(16.0 - 1e-9, 8.0, soft, cfg)));
}

TEST_CASE("p_gamma^2 integral at the origin against a radial oracle") {
  const ModelSpec hs = with_weight(1.0, WeightSpec::unit());
  const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double r) {
        if (r <= 0.0) return 0.0;
        const double p = p_gamma(KernelPoint{0.0, r, r}, hs);
        return 4.0 * std::numbers::pi * r * r * p * p;
      },
      0.0, 8.0, 12, 1e-12);
  CHECK(lemma_g_integral(0.0, hs) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("(1 + |v|) int p^2 dw stays uniformly bounded") {
  const ModelSpec hs = with_weight(1.0, WeightSpec::unit());
  const double at0 = lemma_g_integral(0.0, hs);
  const double at4 = 5.0 * lemma_g_integral(4.0, hs);
  CHECK(at4 <= 3.0 * at0);
  const BoundReport rep = check_lemma_g(hs, {0.0, 1.0, 2.0, 4.0, 6.0});
  CHECK(rep.passed);
  CHECK_THROWS_AS(lemma_g_integral(1.0, with_weight(0.0, WeightSpec::unit())), Error);
}

TEST_CASE("dissipativity radius for hard spheres matches the scalar solution") {
  const ModelSpec spec = with_weight(1.0, WeightSpec::exponential(0.25, 1.0));
  // Exponent 0: 2 c0 - sigma0 r <= 0 exactly when r >= 2 c0 / sigma0.
  const double c0 = 3.0, s0 = 0.8;
  const DissipativityResult res = dissipativity_radius(spec, c0, s0, 40.0, 8000);
  CHECK(std::abs(res.radius - 2.0 * c0 / s0) <= 40.0 / 8000 + 1e-12);
  CHECK(res.worst_margin <= 0.0);
  CHECK(res.hypothesis_holds);
  const BoundReport rep = check_dissipativity(spec, c0, s0, 40.0, 100);
  CHECK(rep.passed);
  CHECK(rep.samples.size() == 100);
  for (const auto& s : rep.samples) CHECK(s.lhs <= s.rhs);
}

TEST_CASE("dissipativity radius is infeasible for Maxwell molecules") {
  const ModelSpec spec = with_weight(0.0, WeightSpec::exponential(0.25, 1.0));
  CHECK_THROWS_AS(dissipativity_radius(spec, 0.1, 1.0), Error);
  CHECK_THROWS_AS(dissipativity_radius(with_weight(1.0, WeightSpec::unit()), 1.0, 1.0), Error);
}

TEST_CASE("sampled checks pass for the kernel identities") {
  for (double gamma : {1.0, 0.5, -1.0}) {
    const ModelSpec spec = with_weight(gamma, WeightSpec::unit());
    const BoundReport db = check_detailed_balance(spec, 100, 42);
    CHECK(db.passed);
    CHECK(db.sup_ratio < 1e-8);
    CHECK(check_kernel_comparison(spec, 100, 42).passed);
  }
}
