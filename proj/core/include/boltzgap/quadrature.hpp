#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "boltzgap/error.hpp"

namespace boltzgap::quad {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre rule on [-1, 1]. Rules are built once per order and cached.
const Rule& gauss_legendre(int n);

/// Order and acceptance tolerance for a quadrature that is checked by
/// doubling its order once.
struct Config {
  int order = 16;
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  bool verify = true;
};

/// Breakpoints a < ... < b refined geometrically toward a: the pieces
/// adjacent to a shrink by `ratio` per level.
std::vector<double> graded_left(double a, double b, int levels, double ratio = 0.5);
std::vector<double> graded_right(double a, double b, int levels, double ratio = 0.5);

/// Splits [a, b] into equal pieces no wider than h.
std::vector<double> uniform(double a, double b, double h);

/// Concatenates breakpoint lists, dropping duplicates at the seams.
std::vector<double> join(std::initializer_list<std::vector<double>> parts);

/// Composite Gauss-Legendre rule with n points on every interval.
Rule composite(std::span<const double> breaks, int n);

template <class F>
double integrate(std::span<const double> breaks, int n, F&& f) {
  const Rule& g = gauss_legendre(n);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    if (!(b > a)) continue;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(mid + half * g.x[i]);
    total += half * s;
  }
  return total;
}

/// Runs `eval(order)` and `eval(2 * order)`; throws NonConvergence when the
/// two disagree beyond the tolerance, otherwise returns the finer value.
template <class G>
double converged(const Config& cfg, G&& eval, const char* what) {
  const double fine = eval(2 * cfg.order);
  if (!cfg.verify) return fine;
  const double coarse = eval(cfg.order);
  const double diff = std::abs(fine - coarse);
  if (!(diff <= cfg.rel_tol * std::abs(fine) + cfg.abs_tol)) {
    throw Error(ErrorCode::NonConvergence,
                std::string(what) + ": order doubling changed the value by " +
                    std::to_string(diff) + " (value " + std::to_string(fine) + ")");
  }
  return fine;
}

}  // namespace boltzgap::quad
