#include <cstdint>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "boltzgap/io.hpp"
#include "commands.hpp"

namespace fs = std::filesystem;
using namespace boltzgap;

int main(int argc, char** argv) {
  CLI::App app{"Spectral and decay experiments for the linear Boltzmann operator"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;

  const std::pair<const char*, const char*> subcommands[] = {
      {"assemble", "Assemble the generator matrix and check the column identity"},
      {"spectrum", "Eigenvalues, spectral gap and Hilbert gap"},
      {"evolve", "Time evolution, decay fit and envelope check"},
      {"resolvent", "Resolvent norms along the imaginary axis"},
      {"verify", "Kernel identities and bound checks"},
      {"report", "Markdown table of all summaries in the output directory"},
  };
  for (const auto& [name, help] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Run configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--seed", seed, "Seed for randomized sample points (overrides verify.seed)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kConfigError;
  }

  cli::Invocation inv;
  inv.command = app.get_subcommands().front()->get_name();
  try {
    inv.config = cli::load_config(config_path);
    if (seed) inv.config.verify.seed = *seed;
    inv.out_dir = out_dir.empty() ? fs::path(inv.config.output_dir) : fs::path(out_dir);
    return cli::run(inv, std::cout);
  } catch (const Error& e) {
    const std::string j = cli::error_json(e);
    std::cerr << j;
    if (!inv.out_dir.empty()) {
      try {
        io::atomic_write(inv.out_dir / "error.json", j);
      } catch (const Error&) {
      }
    }
    return cli::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << cli::error_json(Error(ErrorCode::NonConvergence, e.what()));
    return cli::kNumericalError;
  }
}
