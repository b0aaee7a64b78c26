// Acceptance run: one PASS/FAIL line per criterion. Tolerances and runtime
// limits are fixed here; 5b, 7b and 8b are supplementary checks printed after
// the literal criteria they accompany.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zmp/arith.hpp"
#include "zmp/boundary.hpp"
#include "zmp/csv.hpp"
#include "zmp/eisenstein.hpp"
#include "zmp/hecke.hpp"
#include "zmp/lfunc.hpp"
#include "zmp/meanper.hpp"
#include "zmp/mellin.hpp"
#include "zmp/specfun.hpp"

using namespace zmp;
using csv::fmt;
using arith::Int;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double seconds;  // runtime limit
  std::function<Outcome()> run;
};

// Shared 32a objects; built once, outside every criterion's timer.
struct Curve32a {
  arith::EllipticCurveData curve = arith::EllipticCurveData::curve_32a();
  std::shared_ptr<const lfunc::CompletedSeries> xi =
      std::make_shared<const lfunc::CompletedSeries>(lfunc::riemann_xi());
  std::shared_ptr<const lfunc::CompletedSeries> lam =
      std::make_shared<const lfunc::CompletedSeries>(lfunc::curve_lambda(curve));
  lfunc::ProductEvaluator Z = lfunc::zeta_product_zc(xi, lam);
  boundary::ZeroList zeros = boundary::scan_critical_zeros(*lam, 50);

  mellin::Evaluator F() const {
    return [this](cplx s) { return Z(s); };
  }
  mellin::ContourSpec contour() const {
    mellin::ContourSpec k;
    k.c = Z.center() + Z.omega() + 0.5;
    k.T = 60.0;
    k.conjugate_symmetric = true;
    return k;
  }
  static mellin::ContourSpec kernel_contour(double T) {
    mellin::ContourSpec k;
    k.T = T;
    k.conjugate_symmetric = true;
    return k;
  }
};

const Curve32a& c32() {
  static const Curve32a c;
  return c;
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

// ---- 1 ----------------------------------------------------------------------

Outcome functional_equations() {
  const auto& c = c32();
  double rx = 0.0, rl = 0.0;
  std::vector<cplx> pts;
  for (int i = 0; i < 5; ++i) {
    for (int k = 0; k < 10; ++k) {
      rx = std::max(rx, lfunc::fe_residual(*c.xi, cplx(0.3 + 0.1 * i, -20.0 + 40.0 * k / 9)));
      const cplx s(0.8 + 0.1 * i, -10.0 + 20.0 * k / 9);
      rl = std::max(rl, lfunc::fe_residual(*c.lam, s));
      pts.push_back(s);
    }
  }
  const cplx eps = lfunc::fit_epsilon(*c.lam, pts);
  const bool ok = rx < 1e-10 && rl < 1e-8 && std::abs(eps - 1.0) < 1e-12;
  return {ok, "xi residual " + sci(rx) + " < 1e-10, Lambda(32a) residual " + sci(rl) + " < 1e-8, fitted epsilon " +
                  fmt(eps.real())};
}

// ---- 2 ----------------------------------------------------------------------

std::vector<Int> naive_convolve(const std::vector<Int>& f, const std::vector<Int>& g) {
  std::vector<Int> h(f.size(), 0);
  for (std::size_t d = 1; d < f.size(); ++d) {
    for (std::size_t m = d; m < f.size(); m += d) h[m] += f[d] * g[m / d];
  }
  return h;
}

std::vector<Int> naive_inverse(const std::vector<Int>& f) {
  std::vector<Int> g(f.size(), 0);
  g[1] = 1;
  for (std::size_t n = 2; n < f.size(); ++n) {
    Int s = 0;
    for (std::size_t d = 1; d < n; ++d) {
      if (n % d == 0) s += f[n / d] * g[d];
    }
    g[n] = -s;
  }
  return g;
}

Outcome exact_arithmetic() {
  const auto& curve = c32().curve;
  const std::size_t N = 10000;
  const auto z = arith::zeta_C_coefficients(curve, N);
  const auto a = arith::l_coefficients(curve, N);
  std::vector<Int> one(N + 1, 1), id(N + 1);
  one[0] = 0;
  for (std::size_t n = 0; n <= N; ++n) id[n] = static_cast<Int>(n);
  const auto oracle = naive_convolve(naive_convolve(one, id), naive_inverse(a.values));
  std::size_t conv_bad = 0;
  for (std::size_t n = 1; n <= N; ++n) conv_bad += z[n] != oracle[n];

  std::size_t mult_bad = 0, pairs = 0;
  for (std::size_t m = 1; m <= N; ++m) {
    for (std::size_t n = 1; m * n <= N; ++n) {
      if (std::gcd(m, n) != 1) continue;
      ++pairs;
      mult_bad += a[m * n] != a[m] * a[n];
    }
  }

  std::size_t hasse_bad = 0, primes = 0;
  for (auto p : arith::primes_up_to(N - 1)) {
    if (curve.conductor % p == 0) continue;
    ++primes;
    const Int ap = arith::count_points_ap(curve, p);
    hasse_bad += double(ap) * double(ap) > 4.0 * double(p);
  }
  const bool ok = conv_bad == 0 && mult_bad == 0 && hasse_bad == 0;
  return {ok, std::to_string(conv_bad) + " convolution mismatches to 1e4, " + std::to_string(mult_bad) +
                  " multiplicativity failures over " + std::to_string(pairs) + " coprime pairs, " +
                  std::to_string(hasse_bad) + " Hasse violations over " + std::to_string(primes) + " primes"};
}

// ---- 3 ----------------------------------------------------------------------

Outcome cm_decomposition() {
  const auto r = hecke::cm_decomposition_check(10000);
  return {r.passed(), std::to_string(r.mismatches) + " mismatches between Hecke and curve coefficients to 1e4"};
}

// ---- 4 ----------------------------------------------------------------------

Outcome mellin_engine() {
  mellin::ContourSpec k;
  k.c = 2.0;
  k.T = 60.0;
  k.conjugate_symmetric = true;
  const mellin::Evaluator gamma = [](cplx s) { return specfun::gamma(s); };
  const auto grid = mellin::log_grid(0.1, std::exp(std::log(100.0) / 200), 201);
  const auto g = mellin::inverse_mellin_grid(gamma, k, grid);
  double roundtrip = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double want = std::exp(-g.grid.x(j));
    roundtrip = std::max(roundtrip, std::abs(g.grid.values[j].real() - want) / want);
  }

  const auto& xi = *c32().xi;
  const mellin::Evaluator F = [&](cplx s) {
    const cplx v = lfunc::eval_completed_smoothed(xi, s);
    return v * v;
  };
  double shift = 0.0;
  for (double m : {2.0, 3.0, 5.0}) {
    for (double x : {0.3, 0.7, 1.1}) {
      const auto lhs = mellin::inverse_mellin([&](cplx s) { return F(s) * std::exp(-s * std::log(m)); }, k, x);
      const auto rhs = mellin::inverse_mellin(F, k, m * x);
      shift = std::max(shift, std::abs(lhs.value - rhs.value));
    }
  }

  // random log-Gaussian mixtures, M(f * g) = M(f) M(g)
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mu(-1.0, 1.0), sd(0.5, 1.0), amp(-1.0, 1.0), im(-3.0, 3.0);
  const auto cg = mellin::symmetric_grid(1.0 / 32, 769);
  auto mixture = [&] {
    auto f = cg;
    const double m1 = mu(rng), s1 = sd(rng), m2 = mu(rng), s2 = sd(rng), a1 = amp(rng), a2 = amp(rng);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double u1 = (f.log_x(j) - m1) / s1, u2 = (f.log_x(j) - m2) / s2;
      f.values[j] = a1 * std::exp(-0.5 * u1 * u1) + a2 * std::exp(-0.5 * u2 * u2);
    }
    return f;
  };
  double exchange = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const auto f = mixture(), h = mixture();
    const auto fh = meanper::mult_convolve(f, h);
    for (int i = 0; i < 3; ++i) {
      const cplx z(mu(rng), im(rng));
      const cplx lhs = mellin::forward_mellin(fh, z).value;
      const cplx rhs = mellin::forward_mellin(f, z).value * mellin::forward_mellin(h, z).value;
      exchange = std::max(exchange, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
    }
  }
  const bool ok = roundtrip < 1e-8 && shift < 1e-9 && exchange < 1e-7;
  return {ok, "Gamma roundtrip " + sci(roundtrip) + " < 1e-8, shift law " + sci(shift) + " < 1e-9, exchange " +
                  sci(exchange) + " < 1e-7"};
}

// ---- 5 ----------------------------------------------------------------------

struct Routes {
  boundary::BoundaryFunction A, B;
};

const Routes& routes() {
  static const Routes r = [] {
    const auto& c = c32();
    const auto grid = mellin::symmetric_grid(1.0 / 64, 1537);  // e^{-12} .. e^{12}
    return Routes{boundary::boundary_route_contour(c.F(), 1.0, c.contour(), grid),
                  boundary::boundary_route_series(boundary::zc_series_coefficients(c.curve, 10000),
                                                  boundary::zc_kappa_atom(1024 * grid.x(0)), 1.0, grid)};
  }();
  return r;
}

Outcome boundary_routes() {
  const auto& r = routes();
  const double d = boundary::sup_relative_deviation(r.A, r.B, std::exp(-2.0), std::exp(2.0));
  double peak = 0.0;
  for (std::size_t j = 0; j < r.B.grid.size(); ++j) {
    if (r.B.grid.x(j) >= std::exp(-2.0) && r.B.grid.x(j) <= std::exp(2.0)) {
      peak = std::max(peak, std::abs(r.B.grid.values[j]));
    }
  }
  return {d < 1e-4, "sup relative deviation on [e^-2, e^2] " + sci(d) + " < 1e-4 (max |h| there " + sci(peak) + ")"};
}

Outcome boundary_routes_far() {
  const auto& r = routes();
  const double d = std::max(boundary::sup_relative_deviation(r.A, r.B, std::exp(-12.0), std::exp(-7.0)),
                            boundary::sup_relative_deviation(r.A, r.B, std::exp(7.0), std::exp(12.0)));
  return {d < 1e-4, "sup relative deviation on 7 <= |log x| <= 12 " + sci(d) + " < 1e-4"};
}

// ---- 6 ----------------------------------------------------------------------

Outcome spectral_route() {
  const auto& c = c32();
  const auto grid = mellin::symmetric_grid();
  const auto A = boundary::boundary_route_contour(c.F(), 1.0, c.contour(), grid);
  std::vector<double> d;
  for (std::size_t n : {10u, 20u, 50u}) {
    const auto C = boundary::boundary_route_spectral(boundary::spectral_poles(c.Z, c.zeros.first(n)), 1e9, grid);
    d.push_back(boundary::l2_deviation(A, C, grid.x(0), grid.x_max()));
  }
  const bool ok = d[1] < d[0] && d[2] < d[1];
  return {ok, "L2 deviation from route A with 10/20/50 zeros: " + sci(d[0]) + ", " + sci(d[1]) + ", " + sci(d[2])};
}

// ---- 7 ----------------------------------------------------------------------

const boundary::BoundaryFunction& h_wide() {
  // route A on e^{-20} .. e^{20}, step 1/4
  static const auto h = boundary::boundary_route_contour(c32().F(), 1.0, c32().contour(),
                                                         mellin::symmetric_grid(0.25, 161));
  return h;
}

Outcome mean_periodicity(const meanper::Convolutor& v) {
  const auto& h = h_wide();
  const auto r = meanper::verify_convolution(v, h, h.pointwise_error, 3);
  const auto atom = boundary::zc_kappa_atom(1024 * h.grid.x(0));
  // b_1024 = 1 is the leading series coefficient; move it by 1%
  const auto hp = meanper::perturb_term(h, atom, 1024, 0.01);
  const auto rp = meanper::verify_convolution(v, hp, h.pointwise_error, 3);
  const double budget = r.budget.total();
  const bool ok = r.within_budget && r.monotone && rp.sup_residual >= 10 * budget;
  std::string series;
  for (const auto& [step, sup] : r.refinement_series) series += (series.empty() ? "" : ", ") + sci(sup);
  return {ok, "residual " + sci(r.sup_residual) + " vs budget " + sci(budget) + ", refinement [" + series + "] " +
                  (r.monotone ? "monotone" : "not monotone") + ", perturbed/budget " + sci(rp.sup_residual / budget)};
}

Outcome mean_periodicity_literal() {
  return mean_periodicity(
      meanper::convolutor_v(*c32().lam, Curve32a::kernel_contour(20.0), meanper::convolutor_grid(0.25, 16.0)));
}

Outcome mean_periodicity_full() {
  return mean_periodicity(
      meanper::convolutor_v_full(*c32().lam, Curve32a::kernel_contour(20.0), meanper::convolutor_grid(0.25, 16.0)));
}

// ---- 8 ----------------------------------------------------------------------

struct PoleCheck {
  bool ok = true;
  std::string detail;
};

PoleCheck vanishing(const meanper::Convolutor& w, const std::string& name, const std::vector<cplx>& poles) {
  PoleCheck c;
  double worst = 0.0;
  for (const auto& p : meanper::mellin_at_poles(w, poles)) {
    c.ok = c.ok && std::abs(p.value) <= p.budget;
    worst = std::max(worst, std::abs(p.value) / p.budget);
  }
  c.detail = name + " max |M|/budget " + sci(worst);
  return c;
}

Outcome orthogonality(bool literal) {
  const auto& c = c32();
  const double g1 = c.zeros.ordinates.at(0);
  const auto kc = Curve32a::kernel_contour(20.0);
  const auto grid = meanper::convolutor_grid(0.25, 16.0);
  const auto v = literal ? vanishing(meanper::convolutor_v(*c.lam, kc, grid), "v at -1/2, 1/2, 3/2", {-0.5, 0.5, 1.5})
                         : vanishing(meanper::convolutor_v_full(*c.lam, kc, grid), "v_full at 0, 1/2, 1, 1/2+i g1/2",
                                     {0.0, 0.5, 1.0, cplx(0.5, g1 / 2)});
  const auto w0 = meanper::convolutor_w0(c.curve, Curve32a::kernel_contour(30.0), meanper::convolutor_grid(1.0 / 16, 40.0));
  const auto w = vanishing(w0, "w0 at 0, 1, 2", {0.0, 1.0, 2.0});
  const auto nz = meanper::mellin_at_poles(w0, {cplx(1.0, g1)}).at(0);
  const bool nonvanishing = std::abs(nz.value) > 1e3 * nz.budget;
  return {v.ok && w.ok && nonvanishing, v.detail + "; " + w.detail + "; |M(w0)(1+i g1)| " + sci(std::abs(nz.value)) +
                                            " vs budget " + sci(nz.budget)};
}

// ---- 9 ----------------------------------------------------------------------

Outcome eisenstein_routes() {
  using namespace eisenstein;
  double worst = 0.0;
  for (double w : {2.0, 2.5}) {
    for (const UpperHalfPoint z : {UpperHalfPoint{0.0, 1.0}, {0.3, 0.8}, {-0.5, 1.7}}) {
      worst = std::max(worst, std::abs(eisenstein_direct(z, w, 2000).value - eisenstein_whittaker(z, w, 40).value));
    }
  }
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
  double lworst = 0.0;
  for (const auto& p : pts) {
    const auto L = eis_l_function(p[0], p[1]);
    lworst = std::max(lworst, std::abs(L.series - L.product) / std::max(1.0, std::abs(L.product)));
  }
  const bool warned = !eis_l_function(2.0, 4.0).warning.empty();
  return {worst < 1e-6 && lworst < 1e-10 && warned, "two-route " + sci(worst) + " < 1e-6, series/product " +
                                                        sci(lworst) + " < 1e-10, printed-product warning " +
                                                        (warned ? "emitted" : "missing")};
}

// ---- 10 ---------------------------------------------------------------------

Outcome schwartz_decay() {
  const auto chi = hecke::HeckeCharacterData::trivial();
  try {
    const auto w =
        hecke::zeta_integral_decay_check([&](double x) { return hecke::tate_zeta_integral(x, chi); }, {1, 2, 5, 10});
    double worst = 0.0;
    for (const auto& d : w) worst = std::max(worst, d.worst);
    return {true, "N in {1, 2, 5, 10}: max |Z(x)| x^N / C = " + fmt(worst)};
  } catch (const BoundViolated& e) {
    return {false, e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<std::string> expected;
  app.add_option("--expect-fail", expected,
                 "criteria known to fail; exit 0 only if exactly these fail")
      ->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"1", "functional equations", 30, functional_equations},
      {"2", "exact arithmetic", 60, exact_arithmetic},
      {"3", "CM decomposition", 60, cm_decomposition},
      {"4", "Mellin engine", 30, mellin_engine},
      {"5", "boundary routes A/B", 300, boundary_routes},
      {"5b", "boundary routes A/B where h is representable", 300, boundary_routes_far},
      {"6", "spectral route", 300, spectral_route},
      {"7", "mean-periodicity, kernel as printed", 300, mean_periodicity_literal},
      {"7b", "mean-periodicity, kernel clearing all poles", 300, mean_periodicity_full},
      {"8", "orthogonality, kernel as printed", 60, [] { return orthogonality(true); }},
      {"8b", "orthogonality, kernel clearing all poles", 60, [] { return orthogonality(false); }},
      {"9", "Eisenstein two routes", 120, eisenstein_routes},
      {"10", "Schwartz decay", 10, schwartz_decay},
  };

  c32();  // shared setup, untimed
  std::set<std::string> failed;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.passed && dt < c.seconds;
    if (!ok) failed.insert(c.id);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail << " ["
              << fmt(std::round(dt * 100) / 100) << " s, limit " << fmt(c.seconds) << " s]" << std::endl;
  }

  if (app.count("--expect-fail") == 0) return failed.empty() ? 0 : 1;
  const std::set<std::string> want(expected.begin(), expected.end());
  if (failed != want) {
    std::cout << "failing set differs from the expected {";
    for (const auto& e : want) std::cout << ' ' << e;
    std::cout << " }\n";
    return 1;
  }
  return 0;
}
