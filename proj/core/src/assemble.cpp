#include <algorithm>
#include <cmath>
#include <string>

#include "boltzgap/discretize.hpp"

namespace boltzgap {

std::string to_string(Normalization n) {
  return n == Normalization::Raw ? "raw" : "column-stochastic";
}

Normalization parse_normalization(const std::string& s) {
  if (s == "raw") return Normalization::Raw;
  if (s == "column-stochastic") return Normalization::ColumnStochastic;
  throw Error(ErrorCode::Config, "unknown normalization '" + s + "'", "assemble.normalization");
}

Eigen::MatrixXd GeneratorMatrix::generator() const {
  Eigen::MatrixXd L = gain;
  L.diagonal() -= sigma;
  return L;
}

Eigen::VectorXd GeneratorMatrix::apply(const Eigen::VectorXd& f) const {
  return gain * f - sigma.cwiseProduct(f);
}

Eigen::VectorXd maxwellian_vector(const RadialGrid& grid) {
  Eigen::VectorXd m(grid.size());
  for (int i = 0; i < grid.size(); ++i) m[i] = maxwellian(grid.nodes[i], grid.d);
  return m;
}

namespace {

double lagrange(const double* x, int n, int j, double s) {
  double v = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k != j) v *= (s - x[k]) / (x[j] - x[k]);
  }
  return v;
}

// Product integration of the reduced kernel against the interpolation basis
// of panel p, for the target radius r.
void local_row(const RadialGrid& grid, const ModelSpec& spec, const ReducedKernelOptions& ko,
               const AssembleOptions& opt, double r, int p, double* out) {
  const int n = grid.panel_order;
  const double a = grid.panel_breaks[p];
  const double b = grid.panel_breaks[p + 1];
  const double* x = grid.nodes.data() + p * n;
  std::vector<double> br;
  if (r > a && r < b) {
    br = quad::join({quad::graded_right(a, r, opt.local_levels), quad::graded_left(r, b, opt.local_levels)});
  } else if (r <= a) {
    br = quad::graded_left(a, b, opt.local_levels);
  } else {
    br = quad::graded_right(a, b, opt.local_levels);
  }
  const quad::Rule rule = quad::composite(br, opt.local_order);
  const double area = sphere_area(grid.d);
  std::fill(out, out + n, 0.0);
  for (std::size_t k = 0; k < rule.x.size(); ++k) {
    const double s = rule.x[k];
    const double base = rule.w[k] * reduced_kernel(r, s, spec, ko) * area * std::pow(s, grid.d - 1);
    for (int j = 0; j < n; ++j) out[j] += base * lagrange(x, n, j, s);
  }
}

}  // namespace

GeneratorMatrix assemble(const RadialGrid& grid, const ModelSpec& spec, const AssembleOptions& opt) {
  spec.validate();
  if (grid.d != spec.d)
    throw Error(ErrorCode::InvalidArgument, "grid dimension differs from model dimension", "grid.d");
  const int n = grid.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "assemble: empty grid");
  ReducedKernelOptions ko;
  ko.n_angle = grid.n_angle;

  GeneratorMatrix gen;
  gen.grid = grid;
  gen.spec = spec;
  gen.normalization = Normalization::Raw;
  gen.gain.resize(n, n);

  // Reduced kernel on node pairs; the lower triangle follows from detailed
  // balance kbar(r', r) = kbar(r, r') M(r') / M(r).
  Eigen::MatrixXd kb = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (std::abs(grid.panel_of(i) - grid.panel_of(j)) <= opt.neighbours) continue;
      kb(i, j) = reduced_kernel(grid.nodes[i], grid.nodes[j], spec, ko);
      const double ri = grid.nodes[i], rj = grid.nodes[j];
      kb(j, i) = kb(i, j) * std::exp(0.5 * (ri - rj) * (ri + rj));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gen.gain(i, j) = kb(i, j) * grid.weights[j];
  }
  std::vector<double> row(grid.panel_order);
  for (int i = 0; i < n; ++i) {
    const int pi = grid.panel_of(i);
    const int lo = std::max(0, pi - opt.neighbours);
    const int hi = std::min(grid.panels() - 1, pi + opt.neighbours);
    for (int p = lo; p <= hi; ++p) {
      local_row(grid, spec, ko, opt, grid.nodes[i], p, row.data());
      for (int j = 0; j < grid.panel_order; ++j) gen.gain(i, p * grid.panel_order + j) = row[j];
    }
  }

  SigmaQuad sq = opt.sigma_quad;
  gen.sigma_exact.resize(n);
  for (int i = 0; i < n; ++i) gen.sigma_exact[i] = collision_frequency(grid.nodes[i], spec, sq);
  gen.sigma = gen.sigma_exact;
  gen.rescale = Eigen::VectorXd::Ones(n);
  if (opt.normalization == Normalization::ColumnStochastic) return make_column_stochastic(gen, opt.max_rescale);
  return gen;
}

GeneratorMatrix make_column_stochastic(const GeneratorMatrix& raw, double max_rescale) {
  const int n = raw.size();
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(raw.grid.weights.data(), n);
  const Eigen::VectorXd m = maxwellian_vector(raw.grid);
  Eigen::MatrixXd A = w.asDiagonal() * raw.gain * m.asDiagonal();
  A = 0.5 * (A + A.transpose()).eval();
  GeneratorMatrix out = raw;
  out.normalization = Normalization::ColumnStochastic;
  out.gain = w.cwiseInverse().asDiagonal() * A * m.cwiseInverse().asDiagonal();
  out.sigma.resize(n);
  out.rescale.resize(n);
  for (int j = 0; j < n; ++j) {
    out.sigma[j] = w.dot(out.gain.col(j)) / w[j];
    out.rescale[j] = out.sigma[j] / raw.sigma_exact[j];
    if (!(std::abs(out.rescale[j] - 1.0) <= max_rescale)) {
      throw Error(ErrorCode::DiscretizationInconsistent,
                  "column rescaling factor " + std::to_string(out.rescale[j]) + " at r = " +
                      std::to_string(raw.grid.nodes[j]) + " is outside 1 +- " + std::to_string(max_rescale));
    }
  }
  return out;
}

ColumnIdentity column_identity(const GeneratorMatrix& gen, double margin) {
  const int n = gen.size();
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(gen.grid.weights.data(), n);
  ColumnIdentity ci;
  ci.margin = margin;
  ci.column_sum.resize(n);
  ci.rel_error.resize(n);
  for (int j = 0; j < n; ++j) {
    ci.column_sum[j] = w.dot(gen.gain.col(j)) / w[j];
    ci.rel_error[j] = std::abs(ci.column_sum[j] / gen.sigma_exact[j] - 1.0);
    ci.max_all = std::max(ci.max_all, ci.rel_error[j]);
    if (gen.grid.nodes[j] <= gen.grid.r_max - margin) ci.max_interior = std::max(ci.max_interior, ci.rel_error[j]);
  }
  return ci;
}

double equilibrium_residual(const GeneratorMatrix& gen) {
  const Eigen::VectorXd m = maxwellian_vector(gen.grid);
  const Eigen::VectorXd res = gen.apply(m);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < gen.size(); ++i) {
    num += gen.grid.weights[i] * std::abs(res[i]);
    den += gen.grid.weights[i] * m[i];
  }
  return num / den;
}

HilbertMatrix hilbert_matrix(const GeneratorMatrix& gen, double max_asymmetry) {
  const int n = gen.size();
  HilbertMatrix h;
  h.transform.resize(n);
  for (int i = 0; i < n; ++i) h.transform[i] = std::sqrt(gen.grid.weights[i] / maxwellian(gen.grid.nodes[i], gen.grid.d));
  Eigen::MatrixXd S = h.transform.asDiagonal() * gen.generator() * h.transform.cwiseInverse().asDiagonal();
  const double scale = S.cwiseAbs().maxCoeff();
  h.asymmetry = (S - S.transpose()).cwiseAbs().maxCoeff() / scale;
  if (!(h.asymmetry <= max_asymmetry)) {
    throw Error(ErrorCode::DiscretizationInconsistent,
                "symmetrized generator has relative asymmetry " + std::to_string(h.asymmetry) +
                    " above " + std::to_string(max_asymmetry));
  }
  h.S = 0.5 * (S + S.transpose());
  return h;
}

HilbertMatrix assemble_hilbert(const RadialGrid& grid, const ModelSpec& spec, const AssembleOptions& opt) {
  spec.validate();
  if (grid.d != spec.d)
    throw Error(ErrorCode::InvalidArgument, "grid dimension differs from model dimension", "grid.d");
  const int n = grid.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "assemble_hilbert: empty grid");
  ReducedKernelOptions ko;
  ko.n_angle = grid.n_angle;
  // p(r, r') = kbar(r, r') sqrt(M(r') / M(r)); both orderings are evaluated
  // so that the symmetry defect measures the kernel itself.
  Eigen::MatrixXd P(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double ri = grid.nodes[i], rj = grid.nodes[j];
      P(i, j) = reduced_kernel(ri, rj, spec, ko) * std::exp(0.25 * (ri - rj) * (ri + rj)) *
                std::sqrt(grid.weights[i] * grid.weights[j]);
    }
  }
  HilbertMatrix h;
  h.transform.resize(n);
  for (int i = 0; i < n; ++i) h.transform[i] = std::sqrt(grid.weights[i] / maxwellian(grid.nodes[i], grid.d));
  const double scale = P.cwiseAbs().maxCoeff();
  h.asymmetry = (P - P.transpose()).cwiseAbs().maxCoeff() / scale;
  if (!(h.asymmetry <= 1e-6)) {
    throw Error(ErrorCode::DiscretizationInconsistent,
                "symmetrized kernel matrix has relative asymmetry " + std::to_string(h.asymmetry) + " above 1e-06");
  }
  h.S = 0.5 * (P + P.transpose());
  // Loss rates from Sigma(v) = int k(w, v) dw on the same rule, so that
  // sqrt(w M) spans the kernel of S.
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s[i] = std::sqrt(grid.weights[i] * maxwellian(grid.nodes[i], grid.d));
  const Eigen::VectorXd loss = (h.S * s).cwiseQuotient(s);
  SigmaQuad sq = opt.sigma_quad;
  h.sigma_defect = 0.0;
  for (int i = 0; i < n; ++i) {
    const double exact = collision_frequency(grid.nodes[i], spec, sq);
    if (grid.nodes[i] <= grid.r_max - 2.0) h.sigma_defect = std::max(h.sigma_defect, std::abs(loss[i] / exact - 1.0));
    h.S(i, i) -= loss[i];
  }
  return h;
}

}  // namespace boltzgap
