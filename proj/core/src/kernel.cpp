#include <algorithm>
#include <cmath>
#include <numbers>

#include "boltzgap/carleman.hpp"
#include "boltzgap/special.hpp"

namespace boltzgap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double gaussian_prefactor(int d) { return std::pow(2.0, d - 1) * std::pow(kTwoPi, -0.5 * d); }

double i_gamma_laplace(double a, double D, double gamma, int d, const quad::Config& cfg) {
  const double q = 0.5 * (d - 2 - gamma);
  const double closed = std::pow(kTwoPi, 0.5 * (d - 1));
  if (q == 0.0) return closed;
  const double pref = std::pow(2.0, -q) * closed / std::tgamma(q);
  const double e1 = 0.5 * (gamma - 1.0);
  const double a2 = a * a;
  const double D2 = D * D;
  auto g = [&](double u) {
    const double y = 1.0 - u;
    return std::pow(y, e1) * std::exp(-0.5 * a2 * u - 0.5 * D2 * u / y);
  };
  // Left piece [0, u0] carries u^{q-1}; for q < 1 use x = u^q.
  const double u0 = std::min(0.25, 0.25 / (1.0 + 0.5 * (a2 + D2)));
  const int left_levels = 6;
  const double u_first = u0 * std::ldexp(1.0, -left_levels);
  std::vector<double> br{u_first};
  for (double x = u_first * 2.0; x < 0.5; x *= 2.0) br.push_back(x);
  br.push_back(0.5);
  const double y_min = std::max(D2 / 80.0, 1e-300);
  int right_levels = 0;
  if (y_min < 0.5) right_levels = std::min(200, static_cast<int>(std::ceil(std::log2(0.5 / y_min))) + 1);
  const auto right = quad::graded_right(0.5, 1.0, right_levels);
  for (std::size_t k = 1; k + 1 < right.size(); ++k) br.push_back(right[k]);
  // The last graded piece [1 - y_min, 1] is negligible: the factor e^{-D^2/(2y)} is below e^{-40}.
  if (right_levels == 0) br.push_back(1.0);

  auto eval = [&](int order) {
    double first;
    if (q < 1.0) {
      const double xmax = std::pow(u_first, q);
      const std::vector<double> b0{0.0, xmax};
      first = quad::integrate(b0, order, [&](double x) { return g(std::pow(x, 1.0 / q)); }) / q;
    } else {
      const std::vector<double> b0{0.0, u_first};
      first = quad::integrate(b0, order, [&](double u) { return std::pow(u, q - 1.0) * g(u); });
    }
    const double rest =
        quad::integrate(br, order, [&](double u) { return std::pow(u, q - 1.0) * g(u); });
    return first + rest;
  };
  return pref * quad::converged(cfg, eval, "i_gamma");
}

double i_gamma_bessel(double a, double D, double gamma, const quad::Config& cfg) {
  const double p = 0.5 * (gamma - 1.0);
  const double lo = std::max(0.0, a - 10.0);
  const double hi = a + 10.0;
  std::vector<double> br;
  if (lo == 0.0) {
    const int levels = std::max(2, static_cast<int>(std::ceil(std::log2(1.0 / std::min(D, 1.0)))) + 2);
    const double split = std::min(1.0, hi);
    br = quad::join({quad::graded_left(0.0, split, levels), quad::uniform(split, hi, 0.5)});
  } else {
    br = quad::uniform(lo, hi, 0.5);
  }
  auto eval = [&](int order) {
    return quad::integrate(br, order, [&](double r) {
      return r * std::exp(-0.5 * (r - a) * (r - a)) * special::i0e(a * r) * std::pow(r * r + D * D, p);
    });
  };
  return kTwoPi * quad::converged(cfg, eval, "i_gamma (Bessel route)");
}

double i_gamma_tensor(double a, double D, double gamma, int d, const quad::Config& cfg) {
  const double p = 0.5 * (gamma - d + 2);
  const double lo = std::max(0.0, a - 10.0);
  const double hi = a + 10.0;
  std::vector<double> br;
  if (lo == 0.0) {
    const int levels = std::max(2, static_cast<int>(std::ceil(std::log2(1.0 / std::min(D, 1.0)))) + 2);
    const double split = std::min(1.0, hi);
    br = quad::join({quad::graded_left(0.0, split, levels), quad::uniform(split, hi, 0.5)});
  } else {
    br = quad::uniform(lo, hi, 0.5);
  }
  auto eval = [&](int order) {
    return quad::integrate(br, order, [&](double rho) {
      const double x = a * rho;
      const int levels =
          static_cast<int>(std::ceil(std::log2(std::numbers::pi * std::sqrt(x + 1.0)))) + 2;
      const auto tb = quad::graded_right(0.0, std::numbers::pi, levels);
      const double ang = quad::integrate(tb, order, [&](double t) {
        const double e = std::exp(-x * (1.0 + std::cos(t)));
        return d == 3 ? e : e * std::pow(std::sin(t), d - 3);
      });
      return std::pow(rho, d - 2) * std::pow(rho * rho + D * D, p) *
             std::exp(-0.5 * (a - rho) * (a - rho)) * ang;
    });
  };
  return sphere_area(d - 2) * quad::converged(cfg, eval, "i_gamma (tensor route)");
}

}  // namespace

void KernelPoint::validate() const {
  if (!(dist > 0.0)) throw Error(ErrorCode::DiagonalSingularity, "kernel evaluated on the diagonal v = w");
  if (v_mag < 0.0 || w_mag < 0.0) throw Error(ErrorCode::InvalidArgument, "negative velocity magnitude");
  const double lo = std::abs(v_mag - w_mag);
  const double hi = v_mag + w_mag;
  const double slack = 1e-12 * hi + 1e-14;
  if (dist < lo - slack || dist > hi + slack)
    throw Error(ErrorCode::InvalidArgument, "kernel point violates the triangle inequality");
}

double KernelPoint::vperp() const {
  const double L = std::abs(v_mag - w_mag);
  const double H = v_mag + w_mag;
  const double D = dist;
  const double num = (D - L) * (D + L) * (H - D) * (H + D);
  return num > 0.0 ? std::sqrt(num) / (2.0 * D) : 0.0;
}

double angular_constant(const ModelSpec& spec) { return spec.ell_b / sphere_area(spec.d); }

double kernel_hs(const KernelPoint& p, int d) {
  p.validate();
  const double D = p.dist;
  const double s = (D * D + p.delta()) / D;
  return std::pow(2.0, d - 1) / std::sqrt(kTwoPi) / D * std::exp(-0.125 * s * s);
}

double kernel_hs_dot(double dist, double vw_dot_w, int d) {
  if (!(dist > 0.0)) throw Error(ErrorCode::DiagonalSingularity, "kernel evaluated on the diagonal v = w");
  const double s = dist + vw_dot_w / dist;
  return std::pow(2.0, d - 1) / std::sqrt(kTwoPi) / dist * std::exp(-0.5 * s * s);
}

double i_gamma(double vperp, double dist, double gamma, int d, IGammaRoute route,
               const quad::Config& cfg) {
  if (!(dist > 0.0)) throw Error(ErrorCode::DiagonalSingularity, "i_gamma: dist must be positive");
  if (!(gamma > -d)) throw Error(ErrorCode::InvalidArgument, "i_gamma: gamma must exceed -d");
  if (vperp < 0.0) throw Error(ErrorCode::InvalidArgument, "i_gamma: negative |V_perp|");
  switch (route) {
    case IGammaRoute::Laplace:
      if (gamma <= d - 2) return i_gamma_laplace(vperp, dist, gamma, d, cfg);
      return i_gamma_tensor(vperp, dist, gamma, d, cfg);
    case IGammaRoute::Bessel:
      if (d != 3) throw Error(ErrorCode::InvalidArgument, "i_gamma: the Bessel route needs d = 3");
      return i_gamma_bessel(vperp, dist, gamma, cfg);
    case IGammaRoute::Tensor:
      return i_gamma_tensor(vperp, dist, gamma, d, cfg);
  }
  return 0.0;
}

double kernel_gamma(const KernelPoint& p, const ModelSpec& spec, IGammaRoute route) {
  p.validate();
  const double D = p.dist;
  const double s = (D * D + p.delta()) / D;
  const double I = i_gamma(p.vperp(), D, spec.gamma, spec.d, route);
  return angular_constant(spec) * gaussian_prefactor(spec.d) / D * std::exp(-0.125 * s * s) * I;
}

double p_gamma(const KernelPoint& p, const ModelSpec& spec) {
  p.validate();
  const double D = p.dist;
  const double del = p.delta();
  const double expo = -0.125 * (D * D + del * del / (D * D));
  const double I = i_gamma(p.vperp(), D, spec.gamma, spec.d);
  return angular_constant(spec) * gaussian_prefactor(spec.d) / D * std::exp(expo) * I;
}

}  // namespace boltzgap
