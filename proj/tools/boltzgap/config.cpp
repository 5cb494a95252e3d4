#include "config.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "boltzgap/error.hpp"
#include "boltzgap/io.hpp"

namespace boltzgap::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Error syntax(int line, const std::string& what, const std::string& key = {}) {
  return Error(ErrorCode::Config, "line " + std::to_string(line) + ": " + what, key);
}

// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '"' && (k == 0 || s[k - 1] != '\\')) in_str = !in_str;
    if (s[k] == '#' && !in_str) return s.substr(0, k);
  }
  return s;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_string(const std::string& s, std::string& out) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return false;
  out.clear();
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    if (s[k] == '\\' && k + 2 < s.size()) {
      out += s[++k];
    } else if (s[k] == '"') {
      return false;
    } else {
      out += s[k];
    }
  }
  return true;
}

Value parse_value(const std::string& text, int line, const std::string& key) {
  Value v;
  v.line = line;
  if (text.empty()) throw syntax(line, "missing value for '" + key + "'", key);
  if (text == "true" || text == "false") {
    v.kind = Value::Kind::Bool;
    v.boolean = text == "true";
    return v;
  }
  if (text.front() == '"') {
    if (!parse_string(text, v.string)) throw syntax(line, "malformed string for '" + key + "'", key);
    v.kind = Value::Kind::String;
    return v;
  }
  if (text.front() == '[') {
    if (text.back() != ']') throw syntax(line, "unterminated array for '" + key + "'", key);
    const std::string body = trim(text.substr(1, text.size() - 2));
    std::vector<std::string> items;
    if (!body.empty()) {
      std::string cur;
      bool in_str = false;
      for (char c : body) {
        if (c == '"') in_str = !in_str;
        if (c == ',' && !in_str) {
          items.push_back(trim(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
      items.push_back(trim(cur));
    }
    bool strings = !items.empty() && !items.front().empty() && items.front().front() == '"';
    v.kind = strings ? Value::Kind::StringArray : Value::Kind::NumberArray;
    for (const auto& it : items) {
      if (strings) {
        std::string s;
        if (!parse_string(it, s)) throw syntax(line, "mixed or malformed array for '" + key + "'", key);
        v.strings.push_back(s);
      } else {
        double x;
        if (!parse_number(it, x)) throw syntax(line, "malformed number '" + it + "' in '" + key + "'", key);
        v.numbers.push_back(x);
      }
    }
    return v;
  }
  if (!parse_number(text, v.number)) throw syntax(line, "malformed value '" + text + "' for '" + key + "'", key);
  v.kind = Value::Kind::Number;
  return v;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace

RawConfig parse_config_text(const std::string& text) {
  RawConfig out;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = trim(strip_comment(text.substr(pos, nl - pos)));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw syntax(line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_name(section)) throw syntax(line_no, "invalid section name '" + section + "'", section);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw syntax(line_no, "expected key = value");
    const std::string name = trim(line.substr(0, eq));
    if (!valid_name(name)) throw syntax(line_no, "invalid key '" + name + "'", name);
    if (section.empty()) throw syntax(line_no, "key '" + name + "' appears before any [section]", name);
    const std::string key = section + "." + name;
    if (out.count(key)) throw syntax(line_no, "duplicate key '" + key + "'", key);
    out[key] = parse_value(trim(line.substr(eq + 1)), line_no, key);
  }
  return out;
}

namespace {

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Number: return "number";
    case Value::Kind::String: return "string";
    case Value::Kind::Bool: return "boolean";
    case Value::Kind::NumberArray: return "array of numbers";
    case Value::Kind::StringArray: return "array of strings";
  }
  return "value";
}

class Reader {
 public:
  explicit Reader(const RawConfig& raw) : raw_(raw) {}

  const Value* find(const std::string& key, Value::Kind kind) {
    seen_.insert(key);
    auto it = raw_.find(key);
    if (it == raw_.end()) return nullptr;
    const Value& v = it->second;
    const bool empty_array = (v.kind == Value::Kind::NumberArray && v.numbers.empty());
    if (v.kind != kind && !(empty_array && kind == Value::Kind::StringArray)) {
      throw Error(ErrorCode::Config,
                  "line " + std::to_string(v.line) + ": '" + key + "' must be a " + kind_name(kind) + ", got a " +
                      kind_name(v.kind),
                  key);
    }
    return &v;
  }

  void number(const std::string& key, double& out, double lo, double hi, bool open_lo = false) {
    if (const Value* v = find(key, Value::Kind::Number)) {
      const bool ok = (open_lo ? v->number > lo : v->number >= lo) && v->number <= hi;
      if (!ok) range(key, v->number, lo, hi, open_lo);
      out = v->number;
    }
  }

  void integer(const std::string& key, int& out, int lo, int hi) {
    if (const Value* v = find(key, Value::Kind::Number)) {
      if (v->number != std::floor(v->number)) {
        throw Error(ErrorCode::Config, "'" + key + "' must be an integer", key);
      }
      if (v->number < lo || v->number > hi) range(key, v->number, lo, hi, false);
      out = static_cast<int>(v->number);
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const Value* v = find(key, Value::Kind::Bool)) out = v->boolean;
  }

  void string(const std::string& key, std::string& out, const std::set<std::string>& allowed = {}) {
    if (const Value* v = find(key, Value::Kind::String)) {
      if (!allowed.empty() && !allowed.count(v->string)) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw Error(ErrorCode::Config, "'" + key + "' must be one of " + list + ", got '" + v->string + "'", key);
      }
      out = v->string;
    }
  }

  void numbers(const std::string& key, std::vector<double>& out, std::size_t min_size) {
    if (const Value* v = find(key, Value::Kind::NumberArray)) {
      if (v->numbers.size() < min_size) {
        throw Error(ErrorCode::Config, "'" + key + "' needs at least " + std::to_string(min_size) + " entries", key);
      }
      out = v->numbers;
    }
  }

  void strings(const std::string& key, std::vector<std::string>& out, const std::set<std::string>& allowed) {
    if (const Value* v = find(key, Value::Kind::StringArray)) {
      for (const auto& s : v->strings) {
        if (!allowed.count(s)) throw Error(ErrorCode::Config, "'" + key + "' has unknown entry '" + s + "'", key);
      }
      out = v->strings;
    }
  }

  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  void reject_unknown() const {
    for (const auto& [key, v] : raw_) {
      if (!seen_.count(key)) {
        throw Error(ErrorCode::Config, "line " + std::to_string(v.line) + ": unknown key '" + key + "'", key);
      }
    }
  }

 private:
  [[noreturn]] static void range(const std::string& key, double x, double lo, double hi, bool open_lo) {
    throw Error(ErrorCode::Config,
                "'" + key + "' = " + io::format_number(x) + " is outside " + (open_lo ? "(" : "[") +
                    io::format_number(lo) + ", " + io::format_number(hi) + "]",
                key);
  }

  const RawConfig& raw_;
  std::set<std::string> seen_;
};

constexpr double kBig = std::numeric_limits<double>::max();

Normalization normalization_of(Reader& r, const std::string& key, Normalization def) {
  std::string s = to_string(def);
  r.string(key, s, {"raw", "column-stochastic"});
  return parse_normalization(s);
}

void window(Reader& r, const std::string& key, std::vector<double>& w) {
  r.numbers(key, w, 2);
  if (w.size() != 2 || !(w[0] < w[1]) || w[0] < 0.0) {
    throw Error(ErrorCode::Config, "'" + key + "' must be [t_lo, t_hi] with 0 <= t_lo < t_hi", key);
  }
}

}  // namespace

RunConfig build_config(const RawConfig& raw) {
  RunConfig c;
  Reader r(raw);

  r.integer("model.d", c.model.d, 3, 16);
  r.number("model.gamma", c.model.gamma, -kBig, kBig);
  r.number("model.ell_b", c.model.ell_b, 0.0, kBig, true);
  if (!(c.model.gamma > -c.model.d && c.model.gamma <= c.model.d - 2)) {
    throw Error(ErrorCode::Config, "'model.gamma' must lie in (-d, d-2]", "model.gamma");
  }

  std::string kind = "unit";
  r.string("weight.kind", kind, {"unit", "exponential", "algebraic"});
  double a = 0.0, s = 1.0, beta = 0.0;
  r.number("weight.a", a, 0.0, kBig);
  r.number("weight.s", s, 0.0, 1.0, true);
  r.number("weight.beta", beta, 0.0, kBig);
  if (kind == "exponential") {
    c.model.weight = WeightSpec::exponential(a, s);
  } else if (kind == "algebraic") {
    if (r.has("weight.a") || r.has("weight.s")) {
      throw Error(ErrorCode::Config, "'weight.a' and 'weight.s' do not apply to an algebraic weight",
                  r.has("weight.a") ? "weight.a" : "weight.s");
    }
    c.model.weight = WeightSpec::algebraic(beta);
  } else {
    for (const char* k : {"weight.a", "weight.s", "weight.beta"}) {
      if (r.has(k)) throw Error(ErrorCode::Config, std::string("'") + k + "' does not apply to the unit weight", k);
    }
  }
  if (kind == "exponential" && r.has("weight.beta")) {
    throw Error(ErrorCode::Config, "'weight.beta' does not apply to an exponential weight", "weight.beta");
  }

  c.grid.graded_origin = c.model.soft();
  r.integer("grid.n_radial", c.grid.n_radial, 0, 4096);
  r.integer("grid.n_angle", c.grid.n_angle, 1, 512);
  r.number("grid.r_max", c.grid.r_max, 0.0, 100.0, true);
  r.boolean("grid.graded_origin", c.grid.graded_origin);

  c.assemble.normalization = normalization_of(r, "assemble.normalization", Normalization::Raw);
  r.integer("assemble.neighbours", c.assemble.neighbours, 0, 64);
  r.integer("assemble.local_order", c.assemble.local_order, 2, 256);
  r.integer("assemble.local_levels", c.assemble.local_levels, 0, 60);
  r.number("assemble.max_rescale", c.assemble.max_rescale, 0.0, 1.0, true);
  r.string("assemble.matrix", c.matrix);
  c.assemble.sigma_quad.r_max = c.grid.r_max;

  r.number("spectrum.zero_tol", c.spectrum.zero_tol, 0.0, 1.0, true);
  r.number("spectrum.no_gap_threshold", c.spectrum.no_gap_threshold, 0.0, kBig, true);
  r.number("spectrum.cluster_tol", c.spectrum.cluster_tol, 0.0, 1.0, true);
  r.boolean("spectrum.hilbert", c.spectrum.hilbert);

  auto& ev = c.evolve;
  std::string method = to_string(ev.options.method);
  r.string("evolve.method", method, {"rk4", "exponential-euler"});
  ev.options.method = parse_integrator(method);
  r.number("evolve.t_end", ev.options.t_end, 0.0, 1e7, true);
  r.number("evolve.dt", ev.options.dt, 0.0, kBig);
  r.integer("evolve.save_every", ev.options.save_every, 1, 1 << 30);
  ev.normalization = normalization_of(r, "evolve.normalization", Normalization::ColumnStochastic);
  r.string("evolve.initial", ev.initial, {"bump", "maxwellian", "certified"});
  r.number("evolve.bump_center", ev.bump_center, 0.0, kBig);
  r.number("evolve.bump_width", ev.bump_width, 0.0, kBig, true);
  r.number("evolve.rho0", ev.rho0, 0.0, kBig, true);
  window(r, "evolve.fit_window", ev.fit_window);
  ev.envelope = c.model.soft();
  r.boolean("evolve.envelope", ev.envelope);
  r.number("evolve.envelope_c", ev.envelope_c, 0.0, 1.0, true);
  if (!(ev.envelope_c < 1.0)) throw Error(ErrorCode::Config, "'evolve.envelope_c' must lie in (0, 1)", "evolve.envelope_c");
  window(r, "evolve.envelope_window", ev.envelope_window);
  if (ev.envelope_window[0] <= 0.0) {
    throw Error(ErrorCode::Config, "'evolve.envelope_window' must start after t = 0", "evolve.envelope_window");
  }
  r.string("evolve.spectrum", ev.spectrum);
  r.number("evolve.rate_tol", ev.rate_tol, 0.0, kBig, true);

  auto& rs = c.resolvent;
  r.numbers("resolvent.alphas", rs.alphas, 1);
  for (double al : rs.alphas) {
    if (al == 0.0) throw Error(ErrorCode::Config, "'resolvent.alphas' must not contain 0", "resolvent.alphas");
  }
  rs.normalization = normalization_of(r, "resolvent.normalization", Normalization::Raw);
  r.number("resolvent.sigma_max", rs.sigma_max, 0.0, kBig);
  r.number("resolvent.tol", rs.tol, 0.0, 1.0);
  r.number("resolvent.alpha_large", rs.alpha_large, 0.0, kBig, true);
  r.number("resolvent.large_tol", rs.large_tol, 0.0, 1.0, true);

  auto& vf = c.verify;
  double seed = static_cast<double>(vf.seed);
  r.number("verify.seed", seed, 0.0, 9007199254740992.0);
  if (seed != std::floor(seed)) throw Error(ErrorCode::Config, "'verify.seed' must be an integer", "verify.seed");
  vf.seed = static_cast<std::uint64_t>(seed);
  r.integer("verify.n_samples", vf.n_samples, 1, 1000000);
  r.strings("verify.checks", vf.checks,
            {"detailed_balance", "kernel_comparison", "h_gamma", "dp_tail", "dp_tail_unit", "lemma_g",
             "dissipativity", "resolvent"});
  r.number("verify.h_gamma_w_max", vf.h_gamma_w_max, 0.5, kBig, true);
  r.number("verify.h_gamma_r_max", vf.h_gamma_r_max, 0.0, kBig, true);
  r.integer("verify.h_gamma_samples", vf.h_gamma_samples, 4, 100000);
  r.numbers("verify.dp_radii", vf.dp_radii, 2);
  r.number("verify.dp_w_max", vf.dp_w_max, 0.0, kBig, true);
  r.number("verify.dp_r_max", vf.dp_r_max, 0.0, kBig, true);
  r.integer("verify.dp_samples", vf.dp_samples, 2, 100000);
  r.numbers("verify.lemma_radii", vf.lemma_radii, 1);
  r.number("verify.lemma_factor", vf.lemma_factor, 0.0, kBig, true);
  r.number("verify.dissipativity_r_max", vf.dissipativity_r_max, 0.0, kBig, true);
  r.number("verify.resolvent_gamma", vf.resolvent_gamma, -kBig, 0.0);
  r.integer("verify.resolvent_n_radial", vf.resolvent_n_radial, 0, 4096);

  r.string("output.dir", c.output_dir);
  r.reject_unknown();
  c.model.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what(), "--config");
  }
  return build_config(parse_config_text(text));
}

}  // namespace boltzgap::cli
