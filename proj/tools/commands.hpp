#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "manifest.hpp"

namespace zmp::cli {

struct RunContext {
  ExperimentConfig cfg;
  Manifest manifest;
  std::filesystem::path out;

  /// Opens out/name for writing and records it in the manifest.
  std::ofstream open(const std::string& name);
  void warn(const std::string& w);
};

void cmd_ap_table(RunContext& ctx);
void cmd_coeffs(RunContext& ctx);
void cmd_boundary(RunContext& ctx);
void cmd_verify_fe(RunContext& ctx);
void cmd_verify_meanper(RunContext& ctx);
void cmd_mellin_at_poles(RunContext& ctx);
void cmd_eisenstein(RunContext& ctx);
void cmd_hecke_check(RunContext& ctx);
void cmd_scan_zeros(RunContext& ctx);

struct Command {
  const char* name;
  const char* help;
  void (*run)(RunContext&);
};
const std::vector<Command>& commands();

}  // namespace zmp::cli
