#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "boltzgap/discretize.hpp"

namespace boltzgap::io {

/// printf("%.17g"); non-finite values print as nan, inf, -inf.
std::string format_number(double x);

/// Writes to a temporary sibling and renames it over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Header row followed by one line per row, every number via format_number.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Parses numeric CSV with a header row.
std::vector<std::vector<double>> parse_csv(const std::string& text, std::vector<std::string>* header = nullptr);

/// Saves `stem`.json (grid, model, normalization, sigma vectors) and
/// `stem`.csv (the gain matrix, one row per line).
void save_generator(const GeneratorMatrix& gen, const std::filesystem::path& stem);
GeneratorMatrix load_generator(const std::filesystem::path& stem);

}  // namespace boltzgap::io
