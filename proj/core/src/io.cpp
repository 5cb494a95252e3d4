#include "boltzgap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace boltzgap::io {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename onto " + path.string());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string() + ": file not found or unreadable");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) out += ',';
    out += header[k];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_number(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::vector<std::string>* header) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      first = false;
      if (header) *header = cells;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Io, "malformed CSV cell '" + c + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Numbers are written through format_number so they survive the round trip.
std::string number_array(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += format_number(v[k]);
  }
  return s + "]";
}

}  // namespace

void save_generator(const GeneratorMatrix& gen, const fs::path& stem) {
  const auto& g = gen.grid;
  const auto& s = gen.spec;
  std::string j = "{\n";
  j += "  \"format\": \"boltzgap-generator-1\",\n";
  j += "  \"normalization\": \"" + to_string(gen.normalization) + "\",\n";
  j += "  \"model\": {\"d\": " + std::to_string(s.d) + ", \"gamma\": " + format_number(s.gamma) +
       ", \"ell_b\": " + format_number(s.ell_b) + ", \"weight\": {\"kind\": \"" + s.weight.kind_name() +
       "\", \"a\": " + format_number(s.weight.a) + ", \"s\": " + format_number(s.weight.s) +
       ", \"beta\": " + format_number(s.weight.beta) + "}},\n";
  j += "  \"grid\": {\"d\": " + std::to_string(g.d) + ", \"r_max\": " + format_number(g.r_max) +
       ", \"panel_order\": " + std::to_string(g.panel_order) + ", \"n_angle\": " + std::to_string(g.n_angle) +
       ", \"graded_origin\": " + (g.graded_origin ? "true" : "false") + ",\n";
  j += "    \"panel_breaks\": " + number_array(g.panel_breaks) + ",\n";
  j += "    \"nodes\": " + number_array(g.nodes) + ",\n";
  j += "    \"weights\": " + number_array(g.weights) + "},\n";
  j += "  \"sigma\": " + number_array(to_std(gen.sigma)) + ",\n";
  j += "  \"sigma_exact\": " + number_array(to_std(gen.sigma_exact)) + ",\n";
  j += "  \"rescale\": " + number_array(to_std(gen.rescale)) + ",\n";
  j += "  \"body\": \"" + stem.filename().string() + ".csv\"\n}\n";

  const int n = gen.size();
  std::vector<std::string> header;
  for (int c = 0; c < n; ++c) header.push_back("c" + std::to_string(c));
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) rows[r][c] = gen.gain(r, c);
  fs::path jp = stem, cp = stem;
  jp += ".json";
  cp += ".csv";
  atomic_write(cp, csv(header, rows));
  atomic_write(jp, j);
}

GeneratorMatrix load_generator(const fs::path& stem) {
  fs::path jp = stem, cp = stem;
  jp += ".json";
  cp += ".csv";
  Json j;
  try {
    j = Json::parse(read_file(jp));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Io, "malformed matrix header " + jp.string() + ": " + e.what());
  }
  GeneratorMatrix gen;
  try {
    if (j.at("format") != "boltzgap-generator-1") throw Error(ErrorCode::Io, "unknown matrix format in " + jp.string());
    gen.normalization = parse_normalization(j.at("normalization").get<std::string>());
    const auto& m = j.at("model");
    gen.spec.d = m.at("d").get<int>();
    gen.spec.gamma = m.at("gamma").get<double>();
    gen.spec.ell_b = m.at("ell_b").get<double>();
    const auto& w = m.at("weight");
    const std::string kind = w.at("kind").get<std::string>();
    if (kind == "exponential") {
      gen.spec.weight = WeightSpec::exponential(w.at("a").get<double>(), w.at("s").get<double>());
    } else if (kind == "algebraic") {
      gen.spec.weight = WeightSpec::algebraic(w.at("beta").get<double>());
    } else {
      gen.spec.weight = WeightSpec::unit();
    }
    const auto& g = j.at("grid");
    gen.grid.d = g.at("d").get<int>();
    gen.grid.r_max = g.at("r_max").get<double>();
    gen.grid.panel_order = g.at("panel_order").get<int>();
    gen.grid.n_angle = g.at("n_angle").get<int>();
    gen.grid.graded_origin = g.at("graded_origin").get<bool>();
    gen.grid.panel_breaks = g.at("panel_breaks").get<std::vector<double>>();
    gen.grid.nodes = g.at("nodes").get<std::vector<double>>();
    gen.grid.weights = g.at("weights").get<std::vector<double>>();
    gen.sigma = to_eigen(j.at("sigma").get<std::vector<double>>());
    gen.sigma_exact = to_eigen(j.at("sigma_exact").get<std::vector<double>>());
    gen.rescale = to_eigen(j.at("rescale").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Io, "incomplete matrix header " + jp.string() + ": " + e.what());
  }
  gen.spec.validate();
  const auto rows = parse_csv(read_file(cp));
  const int n = gen.grid.size();
  if (static_cast<int>(rows.size()) != n || gen.sigma.size() != n) {
    throw Error(ErrorCode::Io, "matrix body " + cp.string() + " does not match its header");
  }
  gen.gain.resize(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n) throw Error(ErrorCode::Io, "ragged row in " + cp.string());
    for (int c = 0; c < n; ++c) gen.gain(r, c) = rows[r][c];
  }
  return gen;
}

}  // namespace boltzgap::io
