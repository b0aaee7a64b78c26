#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace zmp::cli {

std::string sha256_hex(const std::string& bytes);

struct SuiteResult {
  std::string name;
  bool passed = true;
  double metric = 0.0;
  double budget = 0.0;
  std::string note;
};

/// Run metadata kept apart from the data files: command, config hash, suite
/// verdicts and the SHA-256 of every artifact written.
class Manifest {
 public:
  Manifest(std::string command, std::string config_text);

  void add_file(const std::filesystem::path& p);
  void add_suite(SuiteResult r);
  void add_warning(std::string w);

  bool all_passed() const;
  const std::vector<SuiteResult>& suites() const { return suites_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  void write(const std::filesystem::path& p) const;

 private:
  std::string command_;
  std::string config_text_;
  std::vector<std::filesystem::path> files_;
  std::vector<SuiteResult> suites_;
  std::vector<std::string> warnings_;
};

}  // namespace zmp::cli
