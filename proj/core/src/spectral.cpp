#include "boltzgap/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace boltzgap {

SpectrumReport spectrum(const GeneratorMatrix& gen, double zero_tol, double no_gap_threshold, double cluster_tol) {
  const int n = gen.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "spectrum: matrix too small");
  const Eigen::MatrixXd L = gen.generator();
  Eigen::EigenSolver<Eigen::MatrixXd> es(L, true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "spectrum: eigensolver failed");
  const Eigen::VectorXcd ev = es.eigenvalues();

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ev[a].real() != ev[b].real()) return ev[a].real() > ev[b].real();
    return ev[a].imag() > ev[b].imag();
  });

  SpectrumReport rep;
  rep.no_gap_threshold = no_gap_threshold;
  for (int i : order) rep.eigenvalues.push_back(ev[i]);
  int zero_idx = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(ev[i]) < std::abs(ev[zero_idx])) zero_idx = i;
    if (std::abs(ev[i]) < zero_tol) ++rep.zero_count;
  }
  if (rep.zero_count > 1) {
    throw Error(ErrorCode::DegenerateZero, std::to_string(rep.zero_count) + " eigenvalues lie within " +
                                               std::to_string(zero_tol) + " of zero; refine the grid");
  }
  rep.zero_eigenvalue = ev[zero_idx];
  rep.lambda_star = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (i != zero_idx) rep.lambda_star = std::min(rep.lambda_star, -ev[i].real());
  }
  rep.eta = gen.sigma.minCoeff();
  rep.sigma_max = gen.sigma.maxCoeff();
  rep.no_gap = rep.lambda_star < no_gap_threshold;

  for (const auto& z : rep.eigenvalues) {
    if (!rep.clusters.empty() && std::abs(rep.clusters.back().re - z.real()) <= cluster_tol) {
      ++rep.clusters.back().multiplicity;
    } else {
      rep.clusters.push_back({z.real(), 1});
    }
  }

  Eigen::VectorXd m0 = es.eigenvectors().col(zero_idx).real();
  double mass = 0.0;
  for (int i = 0; i < n; ++i) mass += gen.grid.weights[i] * m0[i];
  if (mass != 0.0) m0 /= mass;
  rep.zero_mode = m0;
  rep.zero_mode_residual = (L * m0).norm() / m0.norm();
  rep.zero_mode_positive = m0.minCoeff() > 0.0;
  const Eigen::VectorXd mh = maxwellian_vector(gen.grid);
  rep.zero_mode_cosine = m0.dot(mh) / (m0.norm() * mh.norm());
  return rep;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "symmetric eigensolver failed");
  return es.eigenvalues().reverse();
}

double hilbert_gap(const Eigen::MatrixXd& S) {
  if (S.rows() < 2 || S.rows() != S.cols()) throw Error(ErrorCode::InvalidArgument, "hilbert_gap: bad matrix");
  const Eigen::VectorXd ev = symmetric_eigenvalues(S);
  if (!(ev[1] < 0.0)) {
    throw Error(ErrorCode::Degenerate, "second eigenvalue of the symmetric generator is " + std::to_string(ev[1]));
  }
  return -ev[1];
}

namespace {

void check_rate_args(double r, const RateFunctions& sm) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "rate functions need r > 0");
  if (!(sm.sigma_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "rate functions need sigma_max > 0");
}

}  // namespace

double theta(double r, const RateFunctions& sm) {
  check_rate_args(r, sm);
  const double S = sm.sigma_max;
  const double q = std::hypot(r, S);
  // 1/(1 - S/q) = q (q + S) / r^2
  return q * (q + S) / (r * r * r);
}

double theta_log(double r, const RateFunctions& sm) {
  const double t = theta(r, sm);
  return t * std::log1p(t / r);
}

double theta_log_inv(double y, const RateFunctions& sm) {
  if (!(y > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta_log_inv needs y > 0");
  double lo = 1e-12, hi = 1e12;
  const double y_hi = theta_log(lo, sm);
  const double y_lo = theta_log(hi, sm);
  if (y > y_hi || y < y_lo) {
    throw Error(ErrorCode::Range, "theta_log_inv: y = " + std::to_string(y) + " outside the attained range");
  }
  // Bisection in log r; theta_log is decreasing.
  for (int it = 0; it < 400 && hi / lo - 1.0 > 1e-13; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (theta_log(mid, sm) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

double resolvent_norm(const GeneratorMatrix& gen, double alpha) {
  if (alpha == 0.0) {
    throw Error(ErrorCode::Singular, "resolvent at alpha = 0 is singular: the generator has a zero eigenvalue");
  }
  const int n = gen.size();
  Eigen::MatrixXcd A = -gen.generator().cast<std::complex<double>>();
  A.diagonal().array() += std::complex<double>(0.0, alpha);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  if (!(lu.rcond() > 1e-14)) throw Error(ErrorCode::Singular, "i alpha - L_h is numerically singular");
  const Eigen::MatrixXcd R = lu.inverse();
  Eigen::VectorXd mw(n);
  for (int i = 0; i < n; ++i) mw[i] = gen.grid.weights[i] * weight_inv(gen.grid.nodes[i], gen.spec.weight);
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += mw[i] * std::abs(R(i, j));
    best = std::max(best, s / mw[j]);
  }
  return best;
}

}  // namespace boltzgap
