#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "zmp/csv.hpp"

namespace zmp::cli {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> kKeys = {
    {"curve", {"label", "a1", "a2", "a3", "a4", "a6", "conductor", "bad_factors"}},
    {"grid", {"log_step", "n"}},
    {"contour", {"c", "T", "step"}},
    {"coefficients", {"N", "ap_bound"}},
    {"zeros", {"path", "count"}},
    {"meanper",
     {"kernel", "log_step", "kernel_half_width", "h_half_width", "kernel_T", "levels", "w0_log_step", "w0_half_width",
      "w0_T"}},
    {"eisenstein", {"cutoff", "n_terms"}},
    {"precision", {"abs_tol", "rel_tol", "max_terms"}},
    {"output", {"dir"}},
};

template <class T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto v = tree.get_optional<std::string>(key);
  if (!v) return fallback;
  std::istringstream is(*v);
  T out{};
  is >> out;
  if (!is || !(is >> std::ws).eof()) throw ConfigError("config: bad value for " + key + ": '" + *v + "'");
  return out;
}

template <>
std::string get(const pt::ptree& tree, const std::string& key, std::string fallback) {
  return tree.get<std::string>(key, fallback);
}

// "2:1; 11:1,-1" -> {2: {1}, 11: {1, -1}}
std::map<std::uint64_t, std::vector<arith::Int>> parse_bad_factors(const std::string& text) {
  std::map<std::uint64_t, std::vector<arith::Int>> out;
  for (auto entry : csv::split(text, ';')) {
    while (!entry.empty() && entry.front() == ' ') entry.remove_prefix(1);
    if (entry.empty()) continue;
    const auto colon = entry.find(':');
    if (colon == std::string_view::npos) throw ConfigError("config: curve.bad_factors entry needs p:coeffs");
    try {
      const auto p = static_cast<std::uint64_t>(std::stoull(std::string(entry.substr(0, colon))));
      std::vector<arith::Int> poly;
      for (auto c : csv::split(entry.substr(colon + 1), ',')) poly.push_back(std::stoll(std::string(c)));
      out[p] = poly;
    } catch (const std::logic_error&) {
      throw ConfigError("config: malformed curve.bad_factors '" + text + "'");
    }
  }
  return out;
}

std::string format_bad_factors(const std::map<std::uint64_t, std::vector<arith::Int>>& bf) {
  std::string s;
  for (const auto& [p, poly] : bf) {
    if (!s.empty()) s += "; ";
    s += std::to_string(p) + ":";
    for (std::size_t i = 0; i < poly.size(); ++i) s += (i ? "," : "") + std::to_string(poly[i]);
  }
  return s;
}

}  // namespace

mellin::ContourSpec ExperimentConfig::contour(double auto_c) const {
  mellin::ContourSpec k;
  k.c = contour_c > 0.0 ? contour_c : auto_c;
  k.T = contour_T;
  k.step = contour_step;
  k.conjugate_symmetric = true;
  return k;
}

void ExperimentConfig::validate() const {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("config: ") + key + " must be positive");
  };
  try {
    curve.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  positive(grid_log_step, "grid.log_step");
  if (grid_n < 3 || grid_n % 2 == 0) throw ConfigError("config: grid.n must be odd and at least 3");
  if (contour_c < 0.0) throw ConfigError("config: contour.c must be positive (or 0 for automatic)");
  positive(contour_T, "contour.T");
  if (contour_step < 0.0) throw ConfigError("config: contour.step must be positive (or 0 for automatic)");
  if (coeff_N < 1) throw ConfigError("config: coefficients.N must be positive");
  if (ap_bound < 2) throw ConfigError("config: coefficients.ap_bound must be at least 2");
  if (zeros_count < 1) throw ConfigError("config: zeros.count must be positive");
  if (kernel != "v" && kernel != "v_full") throw ConfigError("config: meanper.kernel must be v or v_full");
  positive(meanper_log_step, "meanper.log_step");
  positive(kernel_half_width, "meanper.kernel_half_width");
  positive(kernel_T, "meanper.kernel_T");
  if (!(h_half_width > kernel_half_width)) {
    throw ConfigError("config: meanper.h_half_width must exceed meanper.kernel_half_width");
  }
  positive(w0_log_step, "meanper.w0_log_step");
  positive(w0_half_width, "meanper.w0_half_width");
  positive(w0_T, "meanper.w0_T");
  if (levels < 1) throw ConfigError("config: meanper.levels must be positive");
  if (eis_cutoff < 1 || eis_terms < 1) throw ConfigError("config: eisenstein.cutoff and n_terms must be positive");
  try {
    precision.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (out_dir.empty()) throw ConfigError("config: output.dir must not be empty");
}

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv;
  kv["coefficients.N"] = std::to_string(coeff_N);
  kv["coefficients.ap_bound"] = std::to_string(ap_bound);
  kv["contour.T"] = csv::fmt(contour_T);
  kv["contour.c"] = csv::fmt(contour_c);
  kv["contour.step"] = csv::fmt(contour_step);
  kv["curve.label"] = curve.label;
  kv["curve.a1"] = std::to_string(curve.a1);
  kv["curve.a2"] = std::to_string(curve.a2);
  kv["curve.a3"] = std::to_string(curve.a3);
  kv["curve.a4"] = std::to_string(curve.a4);
  kv["curve.a6"] = std::to_string(curve.a6);
  kv["curve.conductor"] = std::to_string(curve.conductor);
  kv["curve.bad_factors"] = format_bad_factors(curve.bad_factors);
  kv["eisenstein.cutoff"] = std::to_string(eis_cutoff);
  kv["eisenstein.n_terms"] = std::to_string(eis_terms);
  kv["grid.log_step"] = csv::fmt(grid_log_step);
  kv["grid.n"] = std::to_string(grid_n);
  kv["meanper.h_half_width"] = csv::fmt(h_half_width);
  kv["meanper.kernel"] = kernel;
  kv["meanper.kernel_T"] = csv::fmt(kernel_T);
  kv["meanper.kernel_half_width"] = csv::fmt(kernel_half_width);
  kv["meanper.levels"] = std::to_string(levels);
  kv["meanper.log_step"] = csv::fmt(meanper_log_step);
  kv["meanper.w0_T"] = csv::fmt(w0_T);
  kv["meanper.w0_half_width"] = csv::fmt(w0_half_width);
  kv["meanper.w0_log_step"] = csv::fmt(w0_log_step);
  kv["output.dir"] = out_dir;
  kv["precision.abs_tol"] = csv::fmt(precision.abs_tol);
  kv["precision.max_terms"] = std::to_string(precision.max_terms);
  kv["precision.rel_tol"] = csv::fmt(precision.rel_tol);
  kv["zeros.count"] = std::to_string(zeros_count);
  kv["zeros.path"] = zeros_path;
  std::string s;
  for (const auto& [k, v] : kv) s += k + " = " + v + "\n";
  return s;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError("config: key " + section + " outside a section");
    const auto it = kKeys.find(section);
    if (it == kKeys.end()) throw ConfigError("config: unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError("config: unknown key " + section + "." + key);
    }
  }

  ExperimentConfig cfg;
  const auto label = get<std::string>(tree, "curve.label", "32a");
  const bool inline_curve = tree.get_optional<std::string>("curve.a1") || tree.get_optional<std::string>("curve.a2") ||
                            tree.get_optional<std::string>("curve.a3") || tree.get_optional<std::string>("curve.a4") ||
                            tree.get_optional<std::string>("curve.a6");
  if (inline_curve) {
    auto& c = cfg.curve;
    c = arith::EllipticCurveData{};
    c.label = label;
    c.a1 = get<arith::Int>(tree, "curve.a1", 0);
    c.a2 = get<arith::Int>(tree, "curve.a2", 0);
    c.a3 = get<arith::Int>(tree, "curve.a3", 0);
    c.a4 = get<arith::Int>(tree, "curve.a4", 0);
    c.a6 = get<arith::Int>(tree, "curve.a6", 0);
    c.conductor = get<std::uint64_t>(tree, "curve.conductor", 0);
    c.bad_factors = parse_bad_factors(get<std::string>(tree, "curve.bad_factors", ""));
  } else {
    cfg.curve = arith::EllipticCurveData::preset(label);
  }

  cfg.grid_log_step = get(tree, "grid.log_step", cfg.grid_log_step);
  cfg.grid_n = get(tree, "grid.n", cfg.grid_n);
  cfg.contour_c = get(tree, "contour.c", cfg.contour_c);
  cfg.contour_T = get(tree, "contour.T", cfg.contour_T);
  cfg.contour_step = get(tree, "contour.step", cfg.contour_step);
  cfg.coeff_N = get(tree, "coefficients.N", cfg.coeff_N);
  cfg.ap_bound = get(tree, "coefficients.ap_bound", cfg.ap_bound);
  cfg.zeros_path = get(tree, "zeros.path", cfg.zeros_path);
  cfg.zeros_count = get(tree, "zeros.count", cfg.zeros_count);
  cfg.kernel = get(tree, "meanper.kernel", cfg.kernel);
  cfg.meanper_log_step = get(tree, "meanper.log_step", cfg.meanper_log_step);
  cfg.kernel_half_width = get(tree, "meanper.kernel_half_width", cfg.kernel_half_width);
  cfg.h_half_width = get(tree, "meanper.h_half_width", cfg.h_half_width);
  cfg.kernel_T = get(tree, "meanper.kernel_T", cfg.kernel_T);
  cfg.levels = get(tree, "meanper.levels", cfg.levels);
  cfg.w0_log_step = get(tree, "meanper.w0_log_step", cfg.w0_log_step);
  cfg.w0_half_width = get(tree, "meanper.w0_half_width", cfg.w0_half_width);
  cfg.w0_T = get(tree, "meanper.w0_T", cfg.w0_T);
  cfg.eis_cutoff = get(tree, "eisenstein.cutoff", cfg.eis_cutoff);
  cfg.eis_terms = get(tree, "eisenstein.n_terms", cfg.eis_terms);
  cfg.precision.abs_tol = get(tree, "precision.abs_tol", cfg.precision.abs_tol);
  cfg.precision.rel_tol = get(tree, "precision.rel_tol", cfg.precision.rel_tol);
  cfg.precision.max_terms = get(tree, "precision.max_terms", cfg.precision.max_terms);
  cfg.out_dir = get(tree, "output.dir", cfg.out_dir);
  return cfg;
}

void apply(ExperimentConfig& cfg, const Overrides& o) {
  if (o.out) cfg.out_dir = *o.out;
  if (o.curve) cfg.curve = arith::EllipticCurveData::preset(*o.curve);
  if (o.zeros) cfg.zeros_path = *o.zeros;
  if (o.grid_n) cfg.grid_n = *o.grid_n;
  if (o.contour_T) cfg.contour_T = *o.contour_T;
  if (o.coeff_N) cfg.coeff_N = *o.coeff_N;
}

}  // namespace zmp::cli
