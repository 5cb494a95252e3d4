#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "boltzgap/carleman.hpp"
#include "boltzgap/discretize.hpp"
#include "boltzgap/special.hpp"

namespace boltzgap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e^{-shift} int_L^H exp(-A D^2 - C / D^2) dD, A > 0, C >= 0.
// Closed form through erf(sqrt(A) D +- sqrt(C)/D), with every exponential
// combined in log space before it is formed.
double gaussian_pair_integral(double A, double C, double L, double H, double shift) {
  const double al = std::sqrt(A);
  const double be = std::sqrt(C);
  auto E = [&](double D) {
    if (D == 0.0) return C == 0.0 ? 0.0 : kInf;
    return A * D * D + C / (D * D);
  };
  auto p = [&](double D) { return D == 0.0 ? (C == 0.0 ? 0.0 : kInf) : al * D + be / D; };
  auto m = [&](double D) { return D == 0.0 ? (C == 0.0 ? 0.0 : -kInf) : al * D - be / D; };
  auto term = [&](double D, double x) {
    const double e = shift + E(D);
    if (!std::isfinite(e) || !std::isfinite(x)) return 0.0;
    return std::exp(-e) * special::erfcx(x);
  };
  const double tL = term(L, p(L));
  const double tH = term(H, p(H));
  const double mL = m(L);
  const double mH = m(H);
  double second;
  double scale = tL + tH;
  if (mL >= 0.0) {
    const double a = term(L, mL), b = term(H, mH);
    second = a - b;
    scale += a + b;
  } else if (mH <= 0.0) {
    const double a = term(L, -mL), b = term(H, -mH);
    second = b - a;
    scale += a + b;
  } else {
    const double a = term(L, -mL), b = term(H, mH);
    const double c = 2.0 * std::exp(-(shift + 2.0 * al * be));
    second = c - a - b;
    scale += a + b + c;
  }
  const double sum = (tL - tH) + second;
  if (sum > 1e-6 * scale) return std::sqrt(std::numbers::pi) / (4.0 * al) * sum;
  // Narrow interval: the closed form cancels, integrate directly.
  const int pieces = std::clamp(static_cast<int>(std::ceil((H - L) * al * 4.0)), 1, 64);
  const auto br = quad::uniform(L, H, (H - L) / pieces);
  return quad::integrate(br, 16, [&](double D) { return std::exp(-(shift + E(D))); });
}

double reduced_closed_d3(double r, double rp, const ModelSpec& spec, const ReducedKernelOptions& opt) {
  const double gamma = spec.gamma;
  const double q = 0.5 * (1.0 - gamma);
  const double cb = angular_constant(spec);
  const double L = std::abs(r - rp);
  const double H = r + rp;
  const double del = (r - rp) * (r + rp);
  if (q == 0.0) {
    const double J = gaussian_pair_integral(0.125, 0.125 * del * del, L, H, 0.25 * del);
    return cb * 4.0 / std::sqrt(2.0 * std::numbers::pi) / (2.0 * r * rp) * J;
  }
  const double P = std::pow(2.0, -q) * 2.0 * std::numbers::pi / std::tgamma(q);
  const double K0 = cb * 4.0 * std::pow(2.0 * std::numbers::pi, -1.5) * P / 2.0;
  const double e1 = 0.5 * (gamma - 1.0);
  const double s2 = r * r + rp * rp;
  // Integrand in u with y = 1 - u passed separately, so that the half near
  // u = 1 is integrated in y without rounding.
  auto g = [&](double u, double y) {
    const double A = 0.125 * y + 0.5 * u / y;
    const double C = 0.125 * del * del * y;
    const double B = 0.25 * del + 0.25 * u * s2;
    return std::pow(y, e1) * gaussian_pair_integral(A, C, L, H, B);
  };
  const double u0 = std::min(0.25, 1.0 / (1.0 + 0.25 * s2));
  const double u_first = u0 * std::ldexp(1.0, -6);
  std::vector<double> left{u_first};
  for (double x = 2.0 * u_first; x < 0.5; x *= 2.0) left.push_back(x);
  left.push_back(0.5);
  // Below y_min the integrand carries less than e^{-40} (L > 0) or, on the
  // diagonal, the y^{gamma/2} singularity leaves a remainder below 1e-15.
  const double y_min = L > 0.0 ? std::max(L * L / 80.0, 1e-300) : 1e-32;
  const int levels = y_min < 0.5 ? std::min(220, static_cast<int>(std::ceil(std::log2(0.5 / y_min)))) : 0;
  std::vector<double> right = quad::graded_left(0.0, 0.5, std::max(levels, 1));
  right.erase(right.begin());

  auto eval = [&](int order) {
    double first;
    if (q < 1.0) {
      const std::vector<double> b0{0.0, std::pow(u_first, q)};
      first = quad::integrate(b0, order, [&](double x) {
                const double u = std::pow(x, 1.0 / q);
                return g(u, 1.0 - u);
              }) / q;
    } else {
      const std::vector<double> b0{0.0, u_first};
      first = quad::integrate(b0, order, [&](double u) { return std::pow(u, q - 1.0) * g(u, 1.0 - u); });
    }
    first += quad::integrate(left, order, [&](double u) { return std::pow(u, q - 1.0) * g(u, 1.0 - u); });
    return first + quad::integrate(right, order, [&](double y) {
             const double u = 1.0 - y;
             return std::pow(u, q - 1.0) * g(u, y);
           });
  };
  double v;
  if (opt.verify) {
    v = quad::converged(quad::Config{opt.n_angle, opt.rel_tol, 0.0, true}, eval, "reduced_kernel");
  } else {
    v = eval(opt.n_angle);
  }
  return K0 / (r * rp) * v;
}

double reduced_numeric(double r, double rp, const ModelSpec& spec, const ReducedKernelOptions& opt) {
  const int d = spec.d;
  const double L = std::abs(r - rp);
  const double H = r + rp;
  const double rr = r * rp;
  const double ratio = sphere_area(d - 1) / sphere_area(d);
  const int levels =
      std::min(60, static_cast<int>(std::ceil(std::log2((H - L) / std::max(L, 1e-14 * H)))) + 4);
  const double split = std::min(H, L + 1.0);
  const auto br = quad::join({quad::graded_left(L, split, std::max(levels, 2)), quad::uniform(split, H, 1.0)});
  auto eval = [&](int order) {
    return quad::integrate(br, order, [&](double D) {
      const KernelPoint kp{r, rp, D};
      const double k = kernel_gamma(kp, spec);
      double w = D;
      if (d > 3) w *= std::pow(kp.vperp() * D / rr, d - 3);
      return k * w;
    });
  };
  double v;
  if (opt.verify) {
    v = quad::converged(quad::Config{opt.n_angle, opt.rel_tol, 0.0, true}, eval, "reduced_kernel");
  } else {
    v = eval(opt.n_angle);
  }
  return ratio / rr * v;
}

}  // namespace

double reduced_kernel(double r, double rp, const ModelSpec& spec, const ReducedKernelOptions& opt) {
  if (!(r > 0.0) || !(rp > 0.0))
    throw Error(ErrorCode::InvalidArgument, "reduced_kernel: radii must be positive");
  if (r == rp && spec.gamma <= -2.0)
    throw Error(ErrorCode::DiagonalSingularity, "reduced_kernel: diagonal diverges for gamma <= -2");
  if (spec.d == 3 && !opt.numeric) return reduced_closed_d3(r, rp, spec, opt);
  if (r == rp) throw Error(ErrorCode::DiagonalSingularity, "reduced_kernel: numeric route needs r != r'");
  return reduced_numeric(r, rp, spec, opt);
}

}  // namespace boltzgap
