#include "manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>

#include "zmp/common.hpp"
#include "zmp/csv.hpp"

namespace zmp::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr)) {
    throw Error("sha256: digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

Manifest::Manifest(std::string command, std::string config_text)
    : command_(std::move(command)), config_text_(std::move(config_text)) {}

void Manifest::add_file(const std::filesystem::path& p) { files_.push_back(p); }
void Manifest::add_suite(SuiteResult r) { suites_.push_back(std::move(r)); }
void Manifest::add_warning(std::string w) { warnings_.push_back(std::move(w)); }

bool Manifest::all_passed() const {
  for (const auto& s : suites_) {
    if (!s.passed) return false;
  }
  return true;
}

void Manifest::write(const std::filesystem::path& p) const {
  std::ofstream os(p);
  if (!os) throw IoError("cannot write " + p.string());
  os << "command: " << command_ << '\n';
  os << "config_sha256: " << sha256_hex(config_text_) << '\n';
  os << "status: " << (all_passed() ? "pass" : "fail") << '\n';
  for (const auto& s : suites_) {
    os << "suite: " << s.name << " | " << (s.passed ? "pass" : "fail") << " | metric " << csv::fmt(s.metric)
       << " | budget " << csv::fmt(s.budget);
    if (!s.note.empty()) os << " | " << s.note;
    os << '\n';
  }
  for (const auto& w : warnings_) os << "warning: " << w << '\n';
  for (const auto& f : files_) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw IoError("cannot read back " + f.string());
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    os << "file: " << f.filename().string() << " sha256 " << sha256_hex(bytes) << '\n';
  }
  os << "[config]\n" << config_text_;
}

}  // namespace zmp::cli
