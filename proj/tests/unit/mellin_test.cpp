#include "zmp/mellin.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "zmp/lfunc.hpp"
#include "zmp/specfun.hpp"

using namespace zmp::mellin;
using zmp::cplx;
namespace sf = zmp::specfun;

namespace {

const Evaluator kGamma = [](cplx s) { return sf::gamma(s); };

ContourSpec gamma_contour(double c = 2.0) {
  ContourSpec k;
  k.c = c;
  k.T = 60.0;
  k.conjugate_symmetric = true;
  return k;
}

// e^{-x} on x0 .. x1, r = e^{1/32}
GridFunction exp_samples(double lx0, double lx1) {
  const auto n = static_cast<std::size_t>(std::llround((lx1 - lx0) * 32)) + 1;
  auto g = log_grid(std::exp(lx0), std::exp(1.0 / 32), n);
  for (std::size_t j = 0; j < n; ++j) g.values[j] = std::exp(-g.x(j));
  return g;
}

}  // namespace

TEST(InverseMellin, GammaAtOne) {
  const auto r = inverse_mellin(kGamma, gamma_contour(), 1.0);
  EXPECT_NEAR(r.value.real(), std::exp(-1.0), 1e-13);
  EXPECT_EQ(r.value.imag(), 0.0);
  EXPECT_LT(r.error(), 1e-10);
}

TEST(InverseMellin, GridMatchesPointwise) {
  const auto g = inverse_mellin_grid(kGamma, gamma_contour(), log_grid(0.5, 2.0, 3));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(g.grid.values[j].real(), std::exp(-g.grid.x(j)), 1e-12);
  for (std::size_t j = 0; j < 3; ++j) {
    ContourSpec k = gamma_contour();
    k.step = auto_step(0.5, 2.0, 1e-10);
    const auto p = inverse_mellin(kGamma, k, g.grid.x(j));
    EXPECT_NEAR(std::abs(p.value - g.grid.values[j]), 0.0, 1e-12);
  }
}

TEST(InverseMellin, ZeroIntegrand) {
  const auto g = inverse_mellin_grid([](cplx) { return cplx(0.0); }, gamma_contour(), symmetric_grid(0.25, 9));
  for (const auto& v : g.grid.values) EXPECT_EQ(v, cplx(0.0));
}

TEST(InverseMellin, UndampedPoleHasInsufficientDecay) {
  ContourSpec k;
  k.c = 1.3;
  EXPECT_THROW(inverse_mellin([](cplx s) { return 1.0 / (s - 0.3); }, k, 2.0), zmp::TailError);
}

TEST(InverseMellin, GaussianDampedPole) {
  // c > a: e^{s^2/2} / (s - a) <-> e^{-aL + a^2/2} erfc((L - a)/sqrt 2) / 2, L = log x
  const double a = 0.3;
  ContourSpec k;
  k.c = 1.3;
  k.T = 20.0;
  k.conjugate_symmetric = true;
  const auto r = inverse_mellin([a](cplx s) { return std::exp(0.5 * s * s) / (s - a); }, k, 2.0);
  EXPECT_NEAR(r.value.real(), 0.29491414956230188012, 1e-12);
}

TEST(InverseMellin, GammaRelativeAccuracyOnDecade) {
  // criterion-4 range x in [0.1, 10]
  auto grid = log_grid(0.1, std::exp(std::log(100.0) / 200), 201);
  const auto g = inverse_mellin_grid(kGamma, gamma_contour(), grid);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double want = std::exp(-g.grid.x(j));
    worst = std::max(worst, std::abs(g.grid.values[j].real() - want) / want);
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(ForwardMellin, ExponentialMoments) {
  const auto f = exp_samples(-40.0, 4.0);
  EXPECT_NEAR(std::abs(forward_mellin(f, 1.0).value - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(forward_mellin(f, 3.0).value - 2.0), 0.0, 1e-12);
}

TEST(ForwardMellin, TailDominatedThrows) {
  auto f = log_grid(0.1, 1.1, 50);
  for (auto& v : f.values) v = 1.0;
  EXPECT_THROW(forward_mellin(f, 0.5, 1e-3), zmp::TailError);
  const auto ok = forward_mellin(exp_samples(-20.0, 4.0), 1.0, 1e-6);
  EXPECT_LT(ok.tail_estimate, 1e-6);
}

TEST(ForwardMellin, RoundtripGamma) {
  auto grid = log_grid(std::exp(-13.0), std::exp(1.0 / 32), 545);
  const auto g = inverse_mellin_grid(kGamma, gamma_contour(0.5), grid);
  for (cplx s : {cplx(1.7, 0.4), cplx(1.2, -2.0), cplx(2.5, 5.0)}) {
    const auto fw = forward_mellin(g.grid, s);
    EXPECT_LE(std::abs(fw.value - sf::gamma(s)), 1e-8 * std::abs(sf::gamma(s))) << s;
  }
}

TEST(InverseMellin, Linearity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const cplx alpha(u(rng), u(rng)), beta(u(rng), u(rng));
  const Evaluator G = [](cplx s) { return sf::gamma(s) * sf::gamma(s); };
  ContourSpec k;
  k.T = 40.0;
  const auto grid = symmetric_grid(1.0 / 16, 33);
  const auto a = inverse_mellin_grid(kGamma, k, grid);
  const auto b = inverse_mellin_grid(G, k, grid);
  const auto ab = inverse_mellin_grid([&](cplx s) { return alpha * kGamma(s) + beta * G(s); }, k, grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    EXPECT_NEAR(std::abs(ab.grid.values[j] - alpha * a.grid.values[j] - beta * b.grid.values[j]), 0.0, 1e-14);
  }
}

TEST(InverseMellin, ShiftLaw) {
  const auto xi = zmp::lfunc::riemann_xi();
  const Evaluator F = [&](cplx s) {
    const cplx v = zmp::lfunc::eval_completed_smoothed(xi, s);
    return v * v;
  };
  ContourSpec k;
  k.c = 2.0;
  k.T = 60.0;
  k.conjugate_symmetric = true;
  for (double m : {2.0, 3.0, 5.0}) {
    for (double x : {0.3, 0.7, 1.1}) {
      const auto lhs = inverse_mellin([&](cplx s) { return F(s) * std::exp(-s * std::log(m)); }, k, x);
      const auto rhs = inverse_mellin(F, k, m * x);
      EXPECT_NEAR(std::abs(lhs.value - rhs.value), 0.0, 1e-9) << m << " " << x;
    }
  }
}

TEST(InverseMellin, TruncationErrorDecreasesWithHeight) {
  auto xi = std::make_shared<const zmp::lfunc::CompletedSeries>(zmp::lfunc::riemann_xi());
  auto lam = std::make_shared<const zmp::lfunc::CompletedSeries>(
      zmp::lfunc::curve_lambda(zmp::arith::EllipticCurveData::curve_32a()));
  const auto P = zmp::lfunc::zeta_product_boundary(xi, lam);
  double prev = std::numeric_limits<double>::infinity();
  for (double T : {8.0, 16.0, 32.0}) {
    ContourSpec k;
    k.c = 2.0;
    k.T = T;
    k.step = 0.1;
    k.conjugate_symmetric = true;
    const auto r = inverse_mellin([&](cplx s) { return P(s); }, k, 1.0, 1.0);
    EXPECT_LT(r.truncation_error, prev) << T;
    prev = r.truncation_error;
  }
}

TEST(GridCsv, RoundTripExact) {
  auto g = symmetric_grid(1.0 / 64, 11);
  for (std::size_t j = 0; j < g.size(); ++j) g.values[j] = cplx(std::sin(double(j)) / 3, 1.0 / (j + 7.0));
  std::stringstream ss;
  write_csv(ss, g);
  const auto h = read_csv(ss);
  ASSERT_EQ(h.size(), g.size());
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(h.values[j], g.values[j]);
  EXPECT_TRUE(compatible(g, h));
  std::stringstream bad("x,y\n1,2\n");
  EXPECT_THROW(read_csv(bad), zmp::IoError);
}

TEST(Grid, SymmetricAndCompatible) {
  const auto g = symmetric_grid();
  EXPECT_EQ(g.size(), 385u);
  EXPECT_NEAR(g.x(192), 1.0, 1e-13);
  EXPECT_NEAR(std::log(g.x0), -3.0, 1e-13);
  EXPECT_FALSE(compatible(g, symmetric_grid(1.0 / 32, 193)));
  EXPECT_THROW(symmetric_grid(0.1, 10), zmp::DomainError);
}
