#include "json_out.hpp"

#include <cmath>

#include "boltzgap/io.hpp"

namespace boltzgap::cli {

namespace {

void emit(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string end_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? io::format_number(x) : "null";
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += "\n" + pad;
        emit(e, depth + 1, out);
      }
      if (!flat) out += "\n" + end_pad;
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += "\n" + pad + Json(it.key()).dump() + ": ";
        emit(it.value(), depth + 1, out);
      }
      out += "\n" + end_pad + '}';
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  emit(j, 0, out);
  out += '\n';
  return out;
}

}  // namespace boltzgap::cli
