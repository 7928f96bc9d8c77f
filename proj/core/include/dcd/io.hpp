#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "dcd/harness.hpp"
#include "dcd/model.hpp"

namespace dcd {

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
// Parses "1.25", "-3e-2" or a fraction "p/q"; throws ConfigError.
double parse_coefficient(std::string_view text);

// Model files: {"dim", "urange": [lo, hi], "flux": [pp...], "diffusion":
// [pp... row-major], "name"?}, each pp {"breakpoints", "pieces", "centers"?,
// "extension"?: "extend" | "strict"}. Coefficients are numbers or strings.
std::string piecewise_to_json(const PiecewisePoly& p);
PiecewisePoly piecewise_from_json(std::string_view text);
std::string model_to_json(const ScalarModel& m);
ScalarModel model_from_json(std::string_view text);
ScalarModel load_model(const std::filesystem::path& path);

// Grid snapshot: CSV "x[,y],value" in storage order plus a sidecar
// <path>.json with origin, cell_size, shape and bc.
std::string grid_csv(const GridFunction& g);
std::string grid_sidecar(const GridFunction& g);
void write_grid(const std::filesystem::path& csv_path, const GridFunction& g);
GridFunction read_grid(const std::filesystem::path& csv_path);
GridFunction grid_from_text(std::string_view csv, std::string_view sidecar);

// Columns t, x_norm, l1_norm, min, max[, bound_rhs].
std::string decay_csv(const DecaySeries& s);
DecaySeries decay_from_csv(std::string_view text);

std::string report_to_json(const PropertyReport& r);
std::string gn_report_to_json(const GNReport& r);

std::uint64_t fnv1a(std::string_view bytes);
std::string hash_hex(std::string_view bytes);
std::string read_file(const std::filesystem::path& path);
// Writes to a temporary sibling, then renames over the target.
void atomic_write(const std::filesystem::path& path, std::string_view content);

}  // namespace dcd
