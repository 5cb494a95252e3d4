#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "boltzgap/carleman.hpp"
#include "doctest.h"

using namespace boltzgap;

namespace {

KernelPoint random_point(std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const double r = r_max * u(rng), rp = r_max * u(rng);
    const double L = std::abs(r - rp), H = r + rp;
    const double D = L + (H - L) * u(rng);
    if (D > 1e-2) return {r, rp, D};
  }
}

// Polar coordinates centred at V_perp: 2 pi int rho (rho^2 + D^2)^p e^{-(rho^2+a^2)/2} I0(a rho) drho.
double i_gamma_oracle(double a, double D, double gamma) {
  const double p = 0.5 * (gamma - 1.0);
  auto f = [&](double rho) {
    return rho * std::pow(rho * rho + D * D, p) * std::exp(-0.5 * (rho - a) * (rho - a)) *
           boost::math::cyl_bessel_i(0, a * rho) * std::exp(-a * rho);
  };
  double err;
  const double hi = a + 40.0;
  const double mid = std::max(a - 20.0, 0.0);
  double v = 0.0;
  if (mid > 0.0) v += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, mid, 15, 1e-13, &err);
  v += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, mid, hi, 15, 1e-13, &err);
  return 2.0 * M_PI * v;
}

const ModelSpec kHsUnitB{3, 1.0, 4.0 * M_PI, WeightSpec::unit()};

}  // namespace

TEST_CASE("hard-sphere kernel value") {
  const KernelPoint p{1.3, 1.3, 1.0};
  CHECK(kernel_hs(p, 3) == doctest::Approx(4.0 / std::sqrt(2.0 * M_PI) * std::exp(-0.125)).epsilon(1e-15));
  CHECK(kernel_hs(p, 3) == doctest::Approx(1.40826).epsilon(1e-5));
}

TEST_CASE("hard-sphere kernel: dot-product form and detailed balance") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 500; ++k) {
    const KernelPoint p = random_point(rng, 6.0);
    const double dot = 0.5 * (p.v_mag * p.v_mag - p.w_mag * p.w_mag - p.dist * p.dist);
    CHECK(kernel_hs_dot(p.dist, dot, 3) == doctest::Approx(kernel_hs(p, 3)).epsilon(1e-12));
    const double lhs = kernel_hs(p, 3) * maxwellian(p.w_mag, 3);
    const double rhs = kernel_hs(p.swapped(), 3) * maxwellian(p.v_mag, 3);
    if (lhs > 1e-280) CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
  }
}

TEST_CASE("kernel point validation") {
  CHECK_THROWS_AS((KernelPoint{1.0, 1.0, 0.0}.validate()), Error);
  CHECK_THROWS_AS((KernelPoint{1.0, 2.0, 4.0}.validate()), Error);
  CHECK_THROWS_AS((KernelPoint{3.0, 1.0, 1.0}.validate()), Error);
  CHECK_NOTHROW((KernelPoint{1.0, 2.0, 3.0}.validate()));
  CHECK((KernelPoint{1.0, 2.0, 3.0}.vperp()) == 0.0);
  // |v| = |w| = 1 orthogonal: D = sqrt 2, (v+w)/2 has length 1/sqrt 2 and is orthogonal to v - w.
  CHECK((KernelPoint{1.0, 1.0, std::sqrt(2.0)}.vperp()) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("i_gamma at gamma = d - 2 is the Gaussian mass") {
  CHECK(i_gamma(0.7, 1.1, 1.0, 3) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  CHECK(i_gamma(0.7, 1.1, 2.0, 4) == doctest::Approx(std::pow(2.0 * M_PI, 1.5)).epsilon(1e-15));
}

TEST_CASE("i_gamma routes against an independent Bessel quadrature") {
  for (double gamma : {-1.0, -0.5, 0.0, 0.5}) {
    for (double a : {0.0, 0.4, 2.0, 7.0}) {
      for (double D : {0.05, 1.0, 3.0}) {
        const double ref = i_gamma_oracle(a, D, gamma);
        CAPTURE(gamma);
        CAPTURE(a);
        CAPTURE(D);
        CHECK(i_gamma(a, D, gamma, 3) == doctest::Approx(ref).epsilon(1e-8));
        CHECK(i_gamma(a, D, gamma, 3, IGammaRoute::Bessel) == doctest::Approx(ref).epsilon(1e-8));
        CHECK(i_gamma(a, D, gamma, 3, IGammaRoute::Tensor) == doctest::Approx(ref).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("i_gamma, gamma = -1 at V_perp = 0, D = 1") {
  // 2 pi int rho e^{-rho^2/2} / (rho^2 + 1) drho = pi e^{1/2} E1(1/2)
  const double ref = M_PI * std::exp(0.5) * boost::math::expint(1, 0.5);
  CHECK(i_gamma(0.0, 1.0, -1.0, 3, IGammaRoute::Bessel) == doctest::Approx(ref).epsilon(1e-10));
  CHECK(i_gamma(0.0, 1.0, -1.0, 3, IGammaRoute::Laplace) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("i_gamma in d = 4: Laplace and tensor routes agree") {
  for (double gamma : {-1.0, 1.0}) {
    for (double a : {0.0, 1.5}) {
      const double x = i_gamma(a, 0.8, gamma, 4);
      CHECK(i_gamma(a, 0.8, gamma, 4, IGammaRoute::Tensor) == doctest::Approx(x).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(i_gamma(0.5, 1.0, 0.0, 4, IGammaRoute::Bessel), Error);
}

TEST_CASE("i_gamma comparison bound") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 60; ++k) {
    const double a = 6.0 * u(rng), D = 0.05 + 5.0 * u(rng);
    for (double gamma : {-2.0, -1.0, 0.0, 0.7}) {
      CHECK(i_gamma(a, D, gamma, 3) <= std::pow(D, gamma - 1.0) * 2.0 * M_PI * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("kernel_gamma reduces to the hard-sphere kernel") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 1000; ++k) {
    const KernelPoint p = random_point(rng, 6.0);
    const double hs = kernel_hs(p, 3);
    if (hs < 1e-290) continue;
    CHECK(std::abs(kernel_gamma(p, kHsUnitB) - hs) <= 1e-12 * hs);
  }
  const ModelSpec spec{3, 1.0, 1.0, WeightSpec::unit()};
  const KernelPoint p{1.0, 2.0, 1.5};
  CHECK(kernel_gamma(p, spec) == doctest::Approx(kernel_hs(p, 3) / (4.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("kernel_gamma against hyperplane-integral oracle, detailed balance and comparison") {
  std::mt19937_64 rng(5);
  for (double gamma : {0.5, -1.0}) {
    const ModelSpec spec{3, gamma, 1.0, WeightSpec::unit()};
    for (int k = 0; k < 40; ++k) {
      const KernelPoint p = random_point(rng, 5.0);
      const double k1 = kernel_gamma(p, spec);
      const double hs = angular_constant(spec) * kernel_hs(p, 3);
      if (hs < 1e-200) continue;
      const double ref = hs * i_gamma_oracle(p.vperp(), p.dist, gamma) / (2.0 * M_PI);
      CHECK(k1 == doctest::Approx(ref).epsilon(1e-8));
      const double lhs = k1 * maxwellian(p.w_mag, 3);
      const double rhs = kernel_gamma(p.swapped(), spec) * maxwellian(p.v_mag, 3);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * lhs);
      CHECK(k1 <= std::pow(p.dist, gamma - 1.0) * hs * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("kernel_gamma on the diagonal is an error") {
  const ModelSpec spec{3, -1.0, 1.0, WeightSpec::unit()};
  CHECK_THROWS_AS(kernel_gamma(KernelPoint{1.0, 1.0, 0.0}, spec), Error);
}

TEST_CASE("p_gamma: symmetric and consistent with the kernel") {
  std::mt19937_64 rng(13);
  for (double gamma : {1.0, 0.5, -1.0}) {
    const ModelSpec spec{3, gamma, 1.0, WeightSpec::unit()};
    for (int k = 0; k < 50; ++k) {
      const KernelPoint p = random_point(rng, 5.0);
      const double a = p_gamma(p, spec);
      CHECK(p_gamma(p.swapped(), spec) == doctest::Approx(a).epsilon(1e-10));
      const double ref = std::sqrt(maxwellian(p.w_mag, 3) / maxwellian(p.v_mag, 3)) * kernel_gamma(p, spec);
      CHECK(a == doctest::Approx(ref).epsilon(1e-10));
    }
  }
  const ModelSpec hs{3, 1.0, 1.0, WeightSpec::unit()};
  const KernelPoint p{2.0, 1.0, 1.5};
  const double v = p_gamma(p, hs);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  CHECK(v == doctest::Approx(std::sqrt(maxwellian(1.0, 3) / maxwellian(2.0, 3)) * kernel_gamma(p, hs)).epsilon(1e-12));
}
