#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>

#include "boltzgap/io.hpp"
#include "doctest.h"

using namespace boltzgap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("boltzgap_io_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(3.0) == "3");
  CHECK(io::format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(io::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  for (double x : {M_PI, -1e-300, 6.02214076e23, 5e-324}) CHECK(std::strtod(io::format_number(x).c_str(), nullptr) == x);
}

TEST_CASE("atomic write creates directories and leaves no temporary") {
  const fs::path dir = scratch("atomic");
  const fs::path p = dir / "a" / "b.txt";
  io::atomic_write(p, "one");
  io::atomic_write(p, "two");
  CHECK(io::read_file(p) == "two");
  int count = 0;
  for (const auto& e : fs::directory_iterator(p.parent_path())) {
    (void)e;
    ++count;
  }
  CHECK(count == 1);
  CHECK_THROWS_AS(io::read_file(dir / "missing"), Error);
  fs::remove_all(dir);
}

TEST_CASE("csv round trip") {
  const std::string text = io::csv({"x", "y"}, {{1.0, 0.1}, {-2.5, 1e-17}});
  CHECK(text.rfind("x,y\n", 0) == 0);
  std::vector<std::string> header;
  const auto rows = io::parse_csv(text, &header);
  CHECK(header == std::vector<std::string>{"x", "y"});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][1] == 0.1);
  CHECK(rows[1][1] == 1e-17);
  CHECK_THROWS_AS(io::parse_csv("a\nfoo\n"), Error);
}

TEST_CASE("generator save and load") {
  const ModelSpec spec{3, 1.0, 1.0, WeightSpec::exponential(0.25, 1.0)};
  const GeneratorMatrix g = make_column_stochastic(assemble(build_grid(64, 16, 8.0, 3), spec));
  const fs::path dir = scratch("gen");
  io::save_generator(g, dir / "matrix");
  CHECK(fs::exists(dir / "matrix.json"));
  CHECK(fs::exists(dir / "matrix.csv"));
  const GeneratorMatrix h = io::load_generator(dir / "matrix");
  CHECK(h.normalization == Normalization::ColumnStochastic);
  CHECK(h.spec.weight.kind == WeightSpec::Kind::Exponential);
  CHECK(h.spec.weight.a == 0.25);
  CHECK(h.grid.nodes == g.grid.nodes);
  CHECK(h.grid.weights == g.grid.weights);
  CHECK((h.gain - g.gain).cwiseAbs().maxCoeff() <= 1e-12 * g.gain.cwiseAbs().maxCoeff());
  CHECK((h.sigma - g.sigma).cwiseAbs().maxCoeff() == 0.0);
  CHECK((h.sigma_exact - g.sigma_exact).cwiseAbs().maxCoeff() == 0.0);

  io::atomic_write(dir / "matrix.csv", "c0,c1\n1,2\n");
  CHECK_THROWS_AS(io::load_generator(dir / "matrix"), Error);
  CHECK_THROWS_AS(io::load_generator(dir / "nothing"), Error);
  fs::remove_all(dir);
}
