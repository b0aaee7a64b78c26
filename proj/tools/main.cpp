#include <algorithm>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "zmp/csv.hpp"

namespace {

// 0 pass, 1 numerical failure, 2 config, 3 I/O, 4 budget exceeded
enum Exit { kPass = 0, kNumerical = 1, kConfig = 2, kIo = 3, kBudget = 4 };

}  // namespace

int main(int argc, char** argv) {
  using namespace zmp::cli;
  CLI::App app{"zmp: mean-periodicity experiments for elliptic curve zeta functions"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides o;
  app.add_option("--config", config_path, "INI config file; flags below override it");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--curve", o.curve, "curve preset (32a or 11a)");
  app.add_option("--zeros", o.zeros, "zero-ordinate file");
  app.add_option("--grid-n", o.grid_n, "boundary grid size (odd)");
  app.add_option("--contour-T", o.contour_T, "contour truncation height");
  app.add_option("--coeff-N", o.coeff_N, "number of Dirichlet coefficients");

  for (const auto& c : commands()) app.add_subcommand(c.name, c.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kConfig;
  }

  const auto* sub = app.get_subcommands().front();
  const auto& cmd = *std::find_if(commands().begin(), commands().end(),
                                  [&](const Command& c) { return sub->get_name() == c.name; });
  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    apply(cfg, o);
    cfg.validate();

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw zmp::IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());

    RunContext ctx{cfg, Manifest(cmd.name, cfg.canonical()), cfg.out_dir};
    cmd.run(ctx);
    ctx.manifest.write(ctx.out / (std::string(cmd.name) + ".manifest"));
    for (const auto& s : ctx.manifest.suites()) {
      std::cout << (s.passed ? "PASS " : "FAIL ") << s.name << ": " << zmp::csv::fmt(s.metric) << " (budget "
                << zmp::csv::fmt(s.budget) << ")\n";
    }
    return ctx.manifest.all_passed() ? kPass : kBudget;
  } catch (const zmp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const zmp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const zmp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
