#include <algorithm>
#include <cmath>
#include <numbers>

#include "boltzgap/carleman.hpp"
#include "boltzgap/discretize.hpp"

namespace boltzgap {

double interpolate_radial(const Eigen::VectorXd& f, const RadialGrid& grid, double r) {
  const int n = grid.size();
  if (f.size() != n) throw Error(ErrorCode::InvalidArgument, "interpolate_radial: size mismatch with grid");
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "interpolate_radial: needs at least 4 nodes");
  const auto& x = grid.nodes;
  if (r >= x.back()) return f[n - 1] * std::exp(-0.5 * (r - x.back()) * (r + x.back()));
  // Cubic through f / M on the four nearest nodes, then times M(r).
  const int idx = static_cast<int>(std::upper_bound(x.begin(), x.end(), r) - x.begin());
  const int k0 = std::clamp(idx - 2, 0, n - 4);
  double v = 0.0;
  for (int j = k0; j < k0 + 4; ++j) {
    double l = 1.0;
    for (int k = k0; k < k0 + 4; ++k) {
      if (k != j) l *= (r - x[k]) / (x[j] - x[k]);
    }
    v += f[j] * std::exp(0.5 * (x[j] - r) * (x[j] + r)) * l;
  }
  return v;
}

double gain_sigma_form(const Eigen::VectorXd& f, const RadialGrid& grid, double v_mag,
                       const ModelSpec& spec, const quad::Config& cfg) {
  spec.validate();
  if (spec.d != 3) throw Error(ErrorCode::InvalidArgument, "gain_sigma_form is implemented for d = 3");
  if (v_mag < 0.0) throw Error(ErrorCode::InvalidArgument, "gain_sigma_form: negative |v|");
  if (f.size() != grid.size()) throw Error(ErrorCode::InvalidArgument, "gain_sigma_form: size mismatch");
  if (f.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const double cb = angular_constant(spec);
  const double rho_max = v_mag + 12.0;
  const auto rho_br = quad::join({quad::graded_left(0.0, 1.0, 8), quad::uniform(1.0, rho_max, 1.0)});
  // At large |v| the Maxwellian factor concentrates near mu = -1 with width ~ 1/(|v| rho).
  const int mu_levels = 2 + static_cast<int>(std::ceil(std::log2(1.0 + v_mag * v_mag)));
  const auto mu_br = quad::join({quad::graded_left(-1.0, 0.0, mu_levels), std::vector<double>{0.0, 1.0}});
  // The sphere of post-collision pairs is centred at c = (v + v_*)/2 with
  // radius h = |v - v_*|/2, and |v'|, |v_*'| depend on sigma only through
  // t = sigma . c / |c|; the azimuth around c contributes 2 pi.
  const auto t_br = quad::graded_right(-1.0, 1.0, 6);
  auto eval = [&](int order) {
    const quad::Rule rho = quad::composite(rho_br, order);
    const quad::Rule mu = quad::composite(mu_br, order);
    const quad::Rule tr = quad::composite(t_br, order);
    double total = 0.0;
    for (std::size_t a = 0; a < rho.x.size(); ++a) {
      const double rh = rho.x[a];
      const double h = 0.5 * rh;
      const double rad = rho.w[a] * rh * rh * std::pow(rh, spec.gamma);
      for (std::size_t b = 0; b < mu.x.size(); ++b) {
        // v_* = v + rho omega with cos(omega, v) = mu.
        const double ct = mu.x[b];
        const double c2 = v_mag * v_mag + v_mag * rh * ct + h * h;
        const double c = std::sqrt(std::max(0.0, c2));
        double inner = 0.0;
        for (std::size_t k = 0; k < tr.x.size(); ++k) {
          const double base = c2 + h * h;
          const double cross = 2.0 * h * c * tr.x[k];
          const double vs2 = std::max(0.0, base - cross);
          if (vs2 > 1400.0) continue;
          const double vp = std::sqrt(std::max(0.0, base + cross));
          inner += tr.w[k] * interpolate_radial(f, grid, vp) * std::exp(-0.5 * vs2);
        }
        total += rad * mu.w[b] * 2.0 * std::numbers::pi * inner;
      }
    }
    return 2.0 * std::numbers::pi * std::pow(2.0 * std::numbers::pi, -1.5) * total;
  };
  return cb * quad::converged(cfg, eval, "gain_sigma_form");
}

}  // namespace boltzgap
