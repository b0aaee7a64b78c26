#pragma once

#include <optional>
#include <string>

#include "zmp/arith.hpp"
#include "zmp/common.hpp"
#include "zmp/mellin.hpp"

namespace zmp::cli {

struct ExperimentConfig {
  // [curve]: a preset label, or label plus inline a-invariants
  arith::EllipticCurveData curve = arith::EllipticCurveData::curve_32a();

  // [grid]: symmetric log grid for the boundary function
  double grid_log_step = 1.0 / 64;
  std::size_t grid_n = 1537;

  // [contour]: c = 0 picks center + omega + 1/2 of the assembled product
  double contour_c = 0.0;
  double contour_T = 60.0;
  double contour_step = 0.0;

  // [coefficients]
  std::size_t coeff_N = 10000;
  std::uint64_t ap_bound = 1000;

  // [zeros]
  std::string zeros_path;
  std::size_t zeros_count = 50;

  // [meanper]
  std::string kernel = "v_full";
  double meanper_log_step = 0.25;
  double kernel_half_width = 16.0;
  double h_half_width = 20.0;
  double kernel_T = 20.0;
  int levels = 3;
  double w0_log_step = 1.0 / 16;  // w0 is not symmetric and decays slowly to the right
  double w0_half_width = 40.0;
  double w0_T = 30.0;

  // [eisenstein]
  std::size_t eis_cutoff = 2000;
  std::size_t eis_terms = 40;

  PrecisionPolicy precision{1e-10, 1e-12, 1'000'000};  // abs_tol bounds contour truncation tails
  std::string out_dir = "out";

  mellin::GridFunction boundary_grid() const { return mellin::symmetric_grid(grid_log_step, grid_n); }
  mellin::ContourSpec contour(double auto_c) const;

  /// Throws ConfigError naming the first offending key.
  void validate() const;

  /// Sorted key = value lines of every resolved field; the manifest hashes this text.
  std::string canonical() const;
};

/// Reads an INI file; missing keys keep their defaults. Throws IoError if the
/// file cannot be opened, ConfigError on unknown keys or malformed values.
ExperimentConfig load_config(const std::string& path);

struct Overrides {
  std::optional<std::string> out;
  std::optional<std::string> curve;
  std::optional<std::string> zeros;
  std::optional<std::size_t> grid_n;
  std::optional<double> contour_T;
  std::optional<std::size_t> coeff_N;
};

void apply(ExperimentConfig& cfg, const Overrides& o);

}  // namespace zmp::cli
