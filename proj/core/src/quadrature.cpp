#include "boltzgap/quadrature.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <numbers>

namespace boltzgap::quad {

namespace {

constexpr int kMaxOrder = 512;

Rule build_gauss_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1 || n > kMaxOrder) {
    throw Error(ErrorCode::InvalidArgument,
                "Gauss-Legendre order must lie in [1, 512], got " + std::to_string(n));
  }
  static std::array<std::once_flag, kMaxOrder + 1> flags;
  static std::array<std::unique_ptr<Rule>, kMaxOrder + 1> rules;
  std::call_once(flags[n], [n] { rules[n] = std::make_unique<Rule>(build_gauss_legendre(n)); });
  return *rules[n];
}

std::vector<double> graded_left(double a, double b, int levels, double ratio) {
  std::vector<double> out;
  out.reserve(levels + 2);
  out.push_back(a);
  double frac = std::pow(ratio, levels);
  for (int k = levels; k >= 1; --k) {
    out.push_back(a + (b - a) * frac);
    frac /= ratio;
  }
  out.push_back(b);
  return out;
}

std::vector<double> graded_right(double a, double b, int levels, double ratio) {
  std::vector<double> left = graded_left(0.0, 1.0, levels, ratio);
  std::vector<double> out(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) out[left.size() - 1 - i] = b - (b - a) * left[i];
  out.front() = a;
  out.back() = b;
  return out;
}

std::vector<double> uniform(double a, double b, double h) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-12)));
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) out[i] = a + (b - a) * i / n;
  out.back() = b;
  return out;
}

std::vector<double> join(std::initializer_list<std::vector<double>> parts) {
  std::vector<double> out;
  for (const auto& p : parts) {
    for (double x : p) {
      if (out.empty() || x > out.back()) out.push_back(x);
    }
  }
  return out;
}

Rule composite(std::span<const double> breaks, int n) {
  const Rule& g = gauss_legendre(n);
  Rule out;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    if (!(b > a)) continue;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      out.x.push_back(mid + half * g.x[i]);
      out.w.push_back(half * g.w[i]);
    }
  }
  return out;
}

}  // namespace boltzgap::quad
