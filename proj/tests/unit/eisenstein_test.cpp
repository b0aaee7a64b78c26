#include "zmp/eisenstein.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <sstream>

using namespace zmp;
using namespace zmp::eisenstein;

namespace {

const UpperHalfPoint kPoints[] = {{0.0, 1.0}, {0.3, 0.8}, {-0.5, 1.7}};

std::size_t terms_for(double y) { return static_cast<std::size_t>(10 + 8 / y); }

UpperHalfPoint act(long a, long b, long c, long d, UpperHalfPoint p) {
  const cplx z = p.z();
  const cplx g = (double(a) * z + double(b)) / (double(c) * z + double(d));
  return {g.real(), g.imag()};
}

}  // namespace

TEST(Eisenstein, TwoRoutesAgree) {
  for (double w : {2.0, 2.5}) {
    for (const auto& z : kPoints) {
      const auto d = eisenstein_direct(z, w, 2000);
      const auto wh = eisenstein_whittaker(z, w, 40);
      EXPECT_LT(std::abs(d.value - wh.value), 1e-6) << w << " " << z.x << " " << z.y;
      EXPECT_LT(std::abs(d.value + d.tail_correction - wh.value), 1e-9) << w << " " << z.x << " " << z.y;
    }
  }
}

TEST(Eisenstein, CompletedGammaReadingDisagrees) {
  // reading Gamma(Q,w) as Gamma_R(w) breaks the two-route agreement
  const auto d = eisenstein_direct(kPoints[0], 2.0, 400);
  const auto wh = eisenstein_whittaker(kPoints[0], 2.0, 40, GammaReading::completed);
  EXPECT_GT(std::abs(d.value - wh.value), 1e-2);
}

TEST(Eisenstein, PartialSumsWithinTail) {
  const UpperHalfPoint i{0.0, 1.0};
  const auto a = eisenstein_direct(i, 2.0, 200);
  const auto b = eisenstein_direct(i, 2.0, 400);
  EXPECT_LT(std::abs(a.value - b.value), a.tail_estimate);
  EXPECT_GT(std::abs(a.value - b.value), 0.5 * a.tail_estimate);
}

TEST(Eisenstein, DirectRejectsNonConvergentRegion) {
  EXPECT_THROW(eisenstein_direct({0.0, 1.0}, 1.0, 10), DomainError);
  EXPECT_THROW(eisenstein_direct({0.0, 1.0}, cplx(0.9, 3.0), 10), DomainError);
  EXPECT_THROW(eisenstein_direct({0.0, -1.0}, 2.0, 10), DomainError);
}

TEST(Eisenstein, ComplexWeight) {
  const cplx w(2.2, 1.5);
  const UpperHalfPoint z{0.1, 1.1};
  const auto d = eisenstein_direct(z, w, 1000);
  const auto wh = eisenstein_whittaker(z, w, 40);
  EXPECT_LT(std::abs(d.value + d.tail_correction - wh.value), 1e-8);
}

TEST(Eisenstein, PeriodicInX) {
  for (const auto& z : kPoints) {
    const auto a = eisenstein_whittaker(z, 2.5, 40);
    const auto b = eisenstein_whittaker({z.x + 1.0, z.y}, 2.5, 40);
    EXPECT_LT(std::abs(a.value - b.value), 1e-12 * std::abs(a.value));
  }
}

TEST(Eisenstein, ModularInvariance) {
  const long m[3][4] = {{1, 1, 0, 1}, {2, 1, 1, 1}, {3, -1, 4, -1}};
  const UpperHalfPoint z{0.2, 1.3};
  const auto base = eisenstein_whittaker(z, 2.0, terms_for(z.y));
  for (const auto& g : m) {
    const auto gz = act(g[0], g[1], g[2], g[3], z);
    const auto v = eisenstein_whittaker(gz, 2.0, terms_for(gz.y));
    EXPECT_LT(std::abs(v.value - base.value), 1e-8 * std::abs(base.value)) << gz.x << " " << gz.y;
  }
}

TEST(Eisenstein, ConstantTermAtLargeHeight) {
  const double y = 12.0;
  const cplx w = 2.0;
  const auto v = eisenstein_whittaker({0.4, y}, w, 5);
  const cplx want = std::pow(y, w) + phi_const(w) * std::pow(y, 1.0 - w);
  EXPECT_LT(std::abs(v.value - want), 1e-14 * std::abs(want));
}

TEST(Eisenstein, WhittakerTailChecked) {
  EXPECT_THROW(eisenstein_whittaker({0.0, 0.05}, 2.0, 3), TailError);
}

TEST(PhiConst, ClosedFormAtTwo) {
  EXPECT_NEAR(std::abs(phi_const(2.0) - 1.74456808213125595235), 0.0, 1e-13);
}

TEST(PhiConst, FunctionalEquation) {
  const cplx w(0.7, 2.0);
  EXPECT_LT(std::abs(phi_const(w) * phi_const(1.0 - w) - 1.0), 1e-12);
}

TEST(PhiConst, PoleAtOne) {
  EXPECT_THROW(phi_const(1.0), PoleError);
  EXPECT_GT(std::abs(phi_const(1.0 + 1e-6)), 1e5);
  EXPECT_GT(std::abs(phi_const(1.0 + 1e-7)), std::abs(phi_const(1.0 + 1e-6)));
}

TEST(SpecialFunctions, RiemannZeta) {
  for (double s : {2.0, 3.0, 0.5, -1.5, 5.5}) {
    EXPECT_NEAR(riemann_zeta(s).real(), boost::math::zeta(s), 1e-13 * std::abs(boost::math::zeta(s))) << s;
  }
  EXPECT_EQ(riemann_zeta(0.0), cplx(-0.5));
  EXPECT_EQ(riemann_zeta(-4.0), cplx(0.0));
  EXPECT_THROW(riemann_zeta(1.0), PoleError);
  // mpmath zeta(1 + 1e-4 + 2e-4 i)
  EXPECT_LT(std::abs(riemann_zeta(cplx(1.0001, 2e-4)) - cplx(2000.5772229466314, -3999.9999854370247)), 1e-9);
}

TEST(SpecialFunctions, HurwitzTail) {
  for (double b : {1.5, 3.0, 6.0}) EXPECT_NEAR(hurwitz_tail(b, 1).real(), boost::math::zeta(b), 1e-14) << b;
  // zeta(4, 5) from mpmath
  EXPECT_NEAR(hurwitz_tail(4.0, 5).real(), 0.003571304698792512503658018, 1e-17);
  EXPECT_THROW(hurwitz_tail(1.0, 3), DomainError);
}

TEST(SpecialFunctions, BesselKComplexOrder) {
  EXPECT_LT(std::abs(bessel_k_complex(cplx(1.0, 0.5), 2.0) -
                     cplx(0.130380739245606787865, 0.0270320831022785334449)),
            1e-14);
  EXPECT_LT(std::abs(bessel_k_complex(cplx(2.2, -1.3), 7.5) -
                     cplx(0.000284990958821755541903, -0.000106112626923661462126)),
            1e-17);
  EXPECT_NEAR(bessel_k_complex(1.5, 3.0).real(), boost::math::cyl_bessel_k(1.5, 3.0), 1e-15);
}

TEST(LFunction, SeriesEqualsCorrectedProduct) {
  const auto L = eis_l_function(2.0, 4.0);
  const double want = boost::math::zeta(5.5) * boost::math::zeta(2.5);
  EXPECT_NEAR(L.series.real(), want, 1e-12);
  EXPECT_NEAR(L.series.imag(), 0.0, 1e-14);
  EXPECT_NEAR(L.product.real(), want, 1e-12);
}

TEST(LFunction, TenSamplePoints) {
  const cplx pts[10][2] = {{2.0, 4.0},          {2.5, 3.5},          {1.5, 3.0},          {cplx(1.5, 0.5), cplx(3.0, 1.0)},
                           {0.3, 2.5},          {cplx(0.5, 2.0), 2.0}, {3.0, cplx(5.0, -2.0)}, {cplx(2.0, -1.0), cplx(4.0, 3.0)},
                           {-0.5, 3.5},         {cplx(1.2, 0.3), cplx(2.6, 10.0)}};
  for (const auto& p : pts) {
    const auto L = eis_l_function(p[0], p[1]);
    EXPECT_LT(std::abs(L.series - L.product), 1e-10 * std::max(1.0, std::abs(L.product))) << p[0] << " " << p[1];
  }
  const auto L = eis_l_function(cplx(1.5, 0.5), cplx(3.0, 1.0));
  EXPECT_LT(std::abs(L.series - cplx(1.45752710122448293520, -0.480792683369297677280)), 1e-12);
}

TEST(LFunction, PrintedProductIsWarnedAbout) {
  const auto L = eis_l_function(2.0, 4.0);
  EXPECT_FALSE(L.warning.empty());
  EXPECT_GT(std::abs(L.printed - L.series), 1.0);
}

TEST(LFunction, ProductSymmetricInW) {
  for (const cplx w : {cplx(0.7, 0.0), cplx(0.3, 1.2)}) {
    const cplx s(3.0, 0.5);
    EXPECT_LT(std::abs(eis_l_function(w, s).product - eis_l_function(1.0 - w, s).product), 1e-13);
  }
}

TEST(LFunction, SecondCoefficient) {
  // Only n = 1, 2 contribute through N = 2; the Euler-Maclaurin tail supplies the rest.
  const cplx w = 2.0, s = 4.0;
  const auto full = eis_l_function(w, s, 2000).series;
  const auto short_head = eis_l_function(w, s, 2).series;
  EXPECT_LT(std::abs(full - short_head), 1e-12);
  const double c2 = (1.0 + std::pow(2.0, -3.0)) * std::pow(2.0, 2.0 - 4.0 - 0.5);
  EXPECT_NEAR(c2, 1.125 * std::pow(2.0, -2.5), 1e-16);
}

TEST(LFunction, DivergentRegionRejected) {
  EXPECT_THROW(eis_l_function(2.0, 1.5), DomainError);
}

TEST(Csv, Header) {
  std::stringstream ss;
  write_csv_header(ss);
  write_csv_row(ss, {0.0, 1.0}, 2.0, 1.0, 1.5);
  std::string h, r;
  std::getline(ss, h);
  std::getline(ss, r);
  EXPECT_EQ(h, "x,y,w_re,w_im,direct_re,direct_im,whittaker_re,whittaker_im,delta");
  EXPECT_EQ(r.substr(r.rfind(',') + 1), "0.5");
}
