#include "boltzgap/special.hpp"

#include <cmath>
#include <numbers>

#include "boltzgap/error.hpp"

namespace boltzgap::special {

double i0e(double x) {
  if (x < 0.0) x = -x;
  if (x <= 30.0) {
    const double t = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= t / (static_cast<double>(k) * k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-x);
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double erfcx(double x) {
  if (x < 0.0) throw Error(ErrorCode::InvalidArgument, "erfcx: argument must be non-negative");
  if (x < 4.0) return std::exp(x * x) * std::erfc(x);
  // Continued fraction erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
  double k = x;
  for (int n = 90; n >= 1; --n) k = x + 0.5 * n / k;
  return 1.0 / (std::sqrt(std::numbers::pi) * k);
}

}  // namespace boltzgap::special
