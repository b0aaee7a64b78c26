#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <memory>
#include <optional>

#include "zmp/arith.hpp"
#include "zmp/boundary.hpp"
#include "zmp/csv.hpp"
#include "zmp/eisenstein.hpp"
#include "zmp/hecke.hpp"
#include "zmp/lfunc.hpp"
#include "zmp/meanper.hpp"
#include "zmp/mellin.hpp"

namespace zmp::cli {

using csv::fmt;

std::ofstream RunContext::open(const std::string& name) {
  const auto p = out / name;
  std::ofstream os(p);
  if (!os) throw IoError("cannot write " + p.string());
  manifest.add_file(p);
  return os;
}

void RunContext::warn(const std::string& w) {
  std::cerr << "warning: " << w << '\n';
  manifest.add_warning(w);
}

namespace {

struct Curve {
  std::shared_ptr<const lfunc::CompletedSeries> xi;
  std::shared_ptr<const lfunc::CompletedSeries> lam;
  lfunc::ProductEvaluator Z;

  explicit Curve(const arith::EllipticCurveData& c)
      : xi(std::make_shared<const lfunc::CompletedSeries>(lfunc::riemann_xi())),
        lam(std::make_shared<const lfunc::CompletedSeries>(lfunc::curve_lambda(c))),
        Z(lfunc::zeta_product_zc(xi, lam)) {}

  mellin::Evaluator F() const {
    return [this](cplx s) { return Z(s); };
  }
  double auto_c() const { return Z.center() + Z.omega() + 0.5; }
};

bool same_curve(const arith::EllipticCurveData& a, const arith::EllipticCurveData& b) {
  return a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.a4 == b.a4 && a.a6 == b.a6;
}

void write_cplx(std::ostream& os, cplx z) { os << fmt(z.real()) << ',' << fmt(z.imag()); }

boundary::ZeroList zeros_for(RunContext& ctx, const lfunc::CompletedSeries& lam, std::size_t count) {
  if (!ctx.cfg.zeros_path.empty()) {
    std::ifstream in(ctx.cfg.zeros_path);
    if (!in) throw IoError("cannot open zero file '" + ctx.cfg.zeros_path + "'");
    return boundary::read_zero_list(in).first(count);
  }
  return boundary::scan_critical_zeros(lam, count);
}

mellin::ContourSpec kernel_contour(const ExperimentConfig& cfg) {
  mellin::ContourSpec k;
  k.T = cfg.kernel_T;
  k.conjugate_symmetric = true;
  return k;
}

mellin::GridFunction h_grid(const ExperimentConfig& cfg) {
  const auto half = static_cast<std::size_t>(std::lround(cfg.h_half_width / cfg.meanper_log_step));
  return mellin::symmetric_grid(cfg.meanper_log_step, 2 * half + 1);
}

}  // namespace

void cmd_ap_table(RunContext& ctx) {
  const auto& c = ctx.cfg.curve;
  const bool cm = same_curve(c, arith::EllipticCurveData::curve_32a());
  auto os = ctx.open("ap_table.csv");
  os << "p,a_p,source\n";
  for (auto p : arith::primes_up_to(ctx.cfg.ap_bound)) {
    if (c.conductor % p == 0) {
      const auto& poly = c.bad_factors.at(p);
      os << p << ',' << (poly.size() > 1 ? -poly[1] : 0) << ",bad\n";
    } else if (cm) {
      // p = 3 mod 4 is inert in Z[i], so a_p = 0
      os << p << ',' << (p % 4 == 3 ? 0 : arith::hecke_ap(p)) << ",hecke\n";
    } else {
      os << p << ',' << arith::count_points_ap(c, p) << ",count\n";
    }
  }
}

void cmd_coeffs(RunContext& ctx) {
  const auto N = ctx.cfg.coeff_N;
  const auto a = arith::l_coefficients(ctx.cfg.curve, N);
  const auto cc = arith::zeta_C_coefficients(ctx.cfg.curve, N);
  const auto sq = arith::dirichlet_square(cc);
  auto os = ctx.open("coeffs.csv");
  os << "m,a_m,c_m\n";
  for (std::size_t m = 1; m <= N; ++m) os << m << ',' << a[m] << ',' << cc[m] << '\n';
  auto sqs = ctx.open("coeffs_squared.csv");
  sqs << "m,c2_m\n";
  for (std::size_t m = 1; m <= N; ++m) sqs << m << ',' << sq[m] << '\n';
}

void cmd_boundary(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  std::optional<boundary::ZeroList> zeros;
  if (!cfg.zeros_path.empty()) {
    std::ifstream in(cfg.zeros_path);
    if (!in) throw IoError("cannot open zero file '" + cfg.zeros_path + "'");
    zeros = boundary::read_zero_list(in).first(cfg.zeros_count);
    if (zeros->count() == 0) {
      ctx.warn("zero file '" + cfg.zeros_path + "' lists no zeros; route C skipped");
      zeros.reset();
    }
  }
  const Curve z(cfg.curve);
  const auto grid = cfg.boundary_grid();
  const auto A = boundary::boundary_route_contour(z.F(), 1.0, cfg.contour(z.auto_c()), grid, cfg.precision.abs_tol);
  const auto B = boundary::boundary_route_series(boundary::zc_series_coefficients(cfg.curve, cfg.coeff_N),
                                                 boundary::zc_kappa_atom(1024 * grid.x(0)), 1.0, grid);
  {
    auto os = ctx.open("boundary_A.csv");
    boundary::write_csv(os, A);
  }
  {
    auto os = ctx.open("boundary_B.csv");
    boundary::write_csv(os, B);
  }

  std::optional<boundary::BoundaryFunction> C;
  if (zeros) {
    C = boundary::boundary_route_spectral(boundary::spectral_poles(z.Z, *zeros), 1e9, grid);
    auto os = ctx.open("boundary_C.csv");
    boundary::write_csv(os, *C);
  }

  auto os = ctx.open("boundary_delta.csv");
  os << "x,delta_ab_re,delta_ab_im" << (C ? ",delta_ac_re,delta_ac_im" : "") << '\n';
  for (std::size_t j = 0; j < grid.size(); ++j) {
    os << fmt(grid.x(j)) << ',';
    write_cplx(os, A.grid.values[j] - B.grid.values[j]);
    if (C) {
      os << ',';
      write_cplx(os, A.grid.values[j] - C->grid.values[j]);
    }
    os << '\n';
  }

  const double lo = std::max(std::exp(-2.0), grid.x(0)), hi = std::min(std::exp(2.0), grid.x_max());
  const double dev = boundary::sup_relative_deviation(A, B, lo, hi);
  ctx.manifest.add_suite({"boundary_route_ab", dev < 1e-4, dev, 1e-4, "sup relative deviation on [e^-2, e^2]"});
  // h underflows near x = 1 for conductor 32; compare where it is representable
  if (grid.x_max() > std::exp(7.0)) {
    const double w = std::min(12.0, std::log(grid.x_max()));
    const double far = std::max(boundary::sup_relative_deviation(A, B, std::exp(-w), std::exp(-7.0)),
                                boundary::sup_relative_deviation(A, B, std::exp(7.0), std::exp(w)));
    ctx.manifest.add_suite(
        {"boundary_route_ab_far", far < 1e-4, far, 1e-4, "sup relative deviation on 7 <= |log x| <= " + fmt(w)});
  }
  if (C) {
    const double l2 = boundary::l2_deviation(A, *C, grid.x(0), grid.x_max());
    ctx.manifest.add_suite({"boundary_route_ac", true, l2, 0.0, "L2 deviation; no absolute tolerance"});
  }
}

void cmd_verify_fe(RunContext& ctx) {
  const Curve z(ctx.cfg.curve);
  auto os = ctx.open("fe_residual.csv");
  os << "series,s_re,s_im,residual\n";
  auto sweep = [&](const lfunc::CompletedSeries& cs, double re_lo, double re_hi, double im_max) {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      for (int k = 0; k < 10; ++k) {
        const cplx s(re_lo + (re_hi - re_lo) * i / 4.0, -im_max + 2 * im_max * k / 9.0);
        const double r = lfunc::fe_residual(cs, s);
        worst = std::max(worst, r);
        os << cs.label << ',' << fmt(s.real()) << ',' << fmt(s.imag()) << ',' << fmt(r) << '\n';
      }
    }
    return worst;
  };
  const double rx = sweep(*z.xi, 0.3, 0.7, 20.0);
  const double c = z.lam->fe_center;
  const double rl = sweep(*z.lam, c - 0.2, c + 0.2, 10.0);
  ctx.manifest.add_suite({"fe_xi", rx < 1e-10, rx, 1e-10, "50 points, Re in [0.3, 0.7], |Im| <= 20"});
  ctx.manifest.add_suite({"fe_lambda", rl < 1e-8, rl, 1e-8,
                          "50 points, |Re - center| <= 0.2, |Im| <= 10, epsilon " + fmt(z.lam->epsilon.real())});
}

void cmd_verify_meanper(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const Curve z(cfg.curve);
  const auto vgrid = meanper::convolutor_grid(cfg.meanper_log_step, cfg.kernel_half_width);
  const auto v = cfg.kernel == "v" ? meanper::convolutor_v(*z.lam, kernel_contour(cfg), vgrid)
                                   : meanper::convolutor_v_full(*z.lam, kernel_contour(cfg), vgrid);
  const auto h = boundary::boundary_route_contour(z.F(), 1.0, cfg.contour(z.auto_c()), h_grid(cfg),
                                                  cfg.precision.abs_tol);
  const auto r = meanper::verify_convolution(v, h, h.pointwise_error, cfg.levels);
  {
    auto os = ctx.open("meanper_report.txt");
    os << "kernel: " << v.description << '\n';
    meanper::write_report(os, r);
  }
  {
    auto os = ctx.open("meanper_refinement.csv");
    meanper::write_refinement_csv(os, r);
  }
  ctx.manifest.add_suite({"meanper_" + cfg.kernel, r.within_budget, r.sup_residual, r.budget.total(),
                          r.monotone ? "refinement monotone" : "refinement not monotone"});
  if (!r.monotone) ctx.manifest.add_suite({"meanper_monotone", false, 0.0, 0.0, "residual rose under refinement"});
}

void cmd_mellin_at_poles(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const Curve z(cfg.curve);
  const double gamma1 = zeros_for(ctx, *z.lam, 1).ordinates.at(0);
  const auto grid = meanper::convolutor_grid(cfg.meanper_log_step, cfg.kernel_half_width);
  const auto kc = kernel_contour(cfg);

  auto os = ctx.open("mellin_at_poles.csv");
  os << "kernel,s_re,s_im,value_re,value_im,budget,expect\n";
  auto run = [&](const meanper::Convolutor& w, const std::string& name, const std::vector<cplx>& vanish,
                 const std::vector<cplx>& nonvanish) {
    bool ok = true;
    double worst = 0.0, budget = 0.0, ratio = -1.0;
    std::vector<cplx> all = vanish;
    all.insert(all.end(), nonvanish.begin(), nonvanish.end());
    const auto vals = meanper::mellin_at_poles(w, all);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const bool zero = i < vanish.size();
      const double a = std::abs(vals[i].value);
      if (zero) {
        ok = ok && a <= vals[i].budget;
        if (a / vals[i].budget > ratio) {
          ratio = a / vals[i].budget;
          worst = a;
          budget = vals[i].budget;
        }
      } else {
        ok = ok && a > vals[i].budget;
      }
      os << name << ',';
      write_cplx(os, vals[i].location);
      os << ',';
      write_cplx(os, vals[i].value);
      os << ',' << fmt(vals[i].budget) << ',' << (zero ? "zero" : "nonzero") << '\n';
    }
    ctx.manifest.add_suite({"orthogonality_" + name, ok, worst, budget, "worst vanishing entry relative to budget"});
  };

  if (cfg.kernel == "v") {
    run(meanper::convolutor_v(*z.lam, kc, grid), "v", {-0.5, 0.5, 1.5}, {});
  } else {
    run(meanper::convolutor_v_full(*z.lam, kc, grid), "v_full", {0.0, 0.5, 1.0, cplx(0.5, gamma1 / 2)}, {});
  }
  auto wc = kc;
  wc.T = cfg.w0_T;
  run(meanper::convolutor_w0(cfg.curve, wc, meanper::convolutor_grid(cfg.w0_log_step, cfg.w0_half_width)), "w0",
      {0.0, 1.0, 2.0}, {cplx(1.0, gamma1)});
}

void cmd_eisenstein(RunContext& ctx) {
  using namespace eisenstein;
  const auto& cfg = ctx.cfg;
  const UpperHalfPoint points[] = {{0.0, 1.0}, {0.3, 0.8}, {-0.5, 1.7}};
  auto os = ctx.open("eisenstein.csv");
  write_csv_header(os);
  double worst = 0.0;
  for (double w : {2.0, 2.5}) {
    for (const auto& p : points) {
      const auto d = eisenstein_direct(p, w, cfg.eis_cutoff);
      const auto wh = eisenstein_whittaker(p, w, cfg.eis_terms);
      write_csv_row(os, p, w, d.value, wh.value);
      worst = std::max(worst, std::abs(d.value - wh.value));
    }
  }
  ctx.manifest.add_suite({"eisenstein_two_route", worst < 1e-6, worst, 1e-6, "raw box sum vs Whittaker expansion"});

  const cplx pts[10][2] = {{2.0, 4.0},
                           {2.5, 3.5},
                           {1.5, 3.0},
                           {cplx(1.5, 0.5), cplx(3.0, 1.0)},
                           {0.3, 2.5},
                           {cplx(0.5, 2.0), 2.0},
                           {3.0, cplx(5.0, -2.0)},
                           {cplx(2.0, -1.0), cplx(4.0, 3.0)},
                           {-0.5, 3.5},
                           {cplx(1.2, 0.3), cplx(2.6, 10.0)}};
  auto ls = ctx.open("eisenstein_l.csv");
  ls << "w_re,w_im,s_re,s_im,series_re,series_im,product_re,product_im,printed_re,printed_im,delta\n";
  double lworst = 0.0;
  bool warned = false;
  for (const auto& p : pts) {
    const auto L = eis_l_function(p[0], p[1]);
    const double rel = std::abs(L.series - L.product) / std::max(1.0, std::abs(L.product));
    lworst = std::max(lworst, rel);
    for (cplx v : {p[0], p[1], L.series, L.product, L.printed}) {
      write_cplx(ls, v);
      ls << ',';
    }
    ls << fmt(rel) << '\n';
    if (!L.warning.empty() && !warned) {
      ctx.warn("w = " + fmt(p[0].real()) + ", s = " + fmt(p[1].real()) + ": " + L.warning);
      warned = true;
    }
  }
  ctx.manifest.add_suite({"eisenstein_l_series_product", lworst < 1e-10, lworst, 1e-10, "10 sample points"});
}

void cmd_hecke_check(RunContext& ctx) {
  if (!same_curve(ctx.cfg.curve, arith::EllipticCurveData::curve_32a())) {
    ctx.warn("hecke-check compares against 32a; curve " + ctx.cfg.curve.label + " is ignored");
  }
  const auto r = hecke::cm_decomposition_check(ctx.cfg.coeff_N);
  {
    auto os = ctx.open("hecke_report.txt");
    hecke::write_report(os, r);
  }
  ctx.manifest.add_suite({"cm_decomposition", r.passed(), double(r.mismatches), 0.0, "mismatches up to N"});

  const auto chi = hecke::HeckeCharacterData::trivial();
  auto os = ctx.open("decay_check.csv");
  os << "N,C,worst,worst_x\n";
  try {
    const auto w = hecke::zeta_integral_decay_check([&](double x) { return hecke::tate_zeta_integral(x, chi); },
                                                    {1, 2, 5, 10});
    double worst = 0.0;
    for (const auto& d : w) {
      os << d.N << ',' << fmt(d.C) << ',' << fmt(d.worst) << ',' << fmt(d.worst_x) << '\n';
      worst = std::max(worst, d.worst);
    }
    ctx.manifest.add_suite({"schwartz_decay", true, worst, 1.0, "max |Z(x)| x^N / C, N in {1, 2, 5, 10}"});
  } catch (const BoundViolated& e) {
    ctx.manifest.add_suite({"schwartz_decay", false, e.witness(), 1.0, e.what()});
  }
}

void cmd_scan_zeros(RunContext& ctx) {
  const Curve z(ctx.cfg.curve);
  const auto zeros = boundary::scan_critical_zeros(*z.lam, ctx.cfg.zeros_count);
  auto os = ctx.open("zeros_" + ctx.cfg.curve.label + ".txt");
  boundary::write_zero_list(os, zeros);
}

const std::vector<Command>& commands() {
  static const std::vector<Command> c = {
      {"ap-table", "a_p for p <= coefficients.ap_bound (p,a_p,source)", cmd_ap_table},
      {"coeffs", "L-series and zeta_C coefficients, plus the Dirichlet square of zeta_C", cmd_coeffs},
      {"boundary", "boundary function by the contour and series routes, spectral with --zeros", cmd_boundary},
      {"verify-fe", "functional-equation residuals for xi and the curve's Lambda", cmd_verify_fe},
      {"verify-meanper", "convolution residual of the kernel against h, with its error budget", cmd_verify_meanper},
      {"mellin-at-poles", "Mellin transforms of the convolutors at the orthogonality points", cmd_mellin_at_poles},
      {"eisenstein", "direct sum vs Whittaker expansion, and the L-series factorization", cmd_eisenstein},
      {"hecke-check", "CM decomposition and Schwartz decay of the Tate zeta integral", cmd_hecke_check},
      {"scan-zeros", "zeros of Lambda on the critical line (zeros.count of them)", cmd_scan_zeros},
  };
  return c;
}

}  // namespace zmp::cli
