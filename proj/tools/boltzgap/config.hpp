#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "boltzgap/discretize.hpp"
#include "boltzgap/evolve.hpp"
#include "boltzgap/model.hpp"

namespace boltzgap::cli {

/// One parsed right-hand side.
struct Value {
  enum class Kind { Number, String, Bool, NumberArray, StringArray };
  Kind kind = Kind::Number;
  double number = 0.0;
  std::string string;
  bool boolean = false;
  std::vector<double> numbers;
  std::vector<std::string> strings;
  int line = 0;
};

/// "section.key" -> value, in file order of first appearance.
using RawConfig = std::map<std::string, Value>;

/// Parses `[section]` headers and `key = value` lines. Values are numbers,
/// double-quoted strings, true/false, or flat arrays of numbers or strings.
/// `#` starts a comment. Duplicate keys and malformed lines are Config errors.
RawConfig parse_config_text(const std::string& text);

struct GridConfig {
  int n_radial = 64;
  int n_angle = 16;
  double r_max = 8.0;
  /// Defaults to true for soft potentials.
  bool graded_origin = false;
};

struct SpectrumConfig {
  double zero_tol = 1e-6;
  double no_gap_threshold = 1e-2;
  double cluster_tol = 1e-6;
  bool hilbert = true;
};

struct EvolveConfig {
  EvolveOptions options;
  Normalization normalization = Normalization::ColumnStochastic;
  std::string initial = "bump";
  double bump_center = 2.0;
  double bump_width = 0.5;
  double rho0 = 1.0;
  std::vector<double> fit_window{2.0, 8.0};
  bool envelope = false;
  double envelope_c = 0.5;
  std::vector<double> envelope_window{10.0, 100.0};
  /// spectrum.json whose lambda_star the fitted rate is compared with.
  std::string spectrum;
  double rate_tol = 0.05;
};

struct ResolventConfig {
  std::vector<double> alphas{0.1, -0.1, 0.5, -0.5, 1.0, -1.0, 5.0, -5.0, 20.0, -20.0};
  Normalization normalization = Normalization::Raw;
  /// 0 selects the largest loss rate of the matrix.
  double sigma_max = 0.0;
  double tol = 1e-6;
  double alpha_large = 1e3;
  double large_tol = 0.05;
};

struct VerifyConfig {
  std::uint64_t seed = 42;
  int n_samples = 200;
  std::vector<std::string> checks{"detailed_balance", "kernel_comparison", "h_gamma", "dp_tail",
                                  "dp_tail_unit", "lemma_g", "dissipativity", "resolvent"};
  double h_gamma_w_max = 32.0;
  double h_gamma_r_max = 40.0;
  int h_gamma_samples = 16;
  std::vector<double> dp_radii{2.0, 4.0, 6.0, 8.0};
  double dp_w_max = 12.0;
  double dp_r_max = 16.0;
  int dp_samples = 12;
  std::vector<double> lemma_radii{0.0, 1.0, 2.0, 4.0, 6.0};
  double lemma_factor = 3.0;
  double dissipativity_r_max = 40.0;
  double resolvent_gamma = -1.0;
  int resolvent_n_radial = 64;
};

struct RunConfig {
  ModelSpec model;
  GridConfig grid;
  AssembleOptions assemble;
  /// Stem of a saved matrix (stem.json + stem.csv); empty means assemble.
  std::string matrix;
  SpectrumConfig spectrum;
  EvolveConfig evolve;
  ResolventConfig resolvent;
  VerifyConfig verify;
  std::string output_dir = "out";
};

/// Strict conversion: unknown keys, wrong types and out-of-range values are
/// Config errors naming the key.
RunConfig build_config(const RawConfig& raw);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace boltzgap::cli
