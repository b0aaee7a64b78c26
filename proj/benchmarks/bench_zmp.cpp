#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "zmp/arith.hpp"
#include "zmp/boundary.hpp"
#include "zmp/eisenstein.hpp"
#include "zmp/lfunc.hpp"
#include "zmp/meanper.hpp"
#include "zmp/mellin.hpp"
#include "zmp/specfun.hpp"

using namespace zmp;

namespace {

struct Zc {
  std::shared_ptr<const lfunc::CompletedSeries> xi =
      std::make_shared<const lfunc::CompletedSeries>(lfunc::riemann_xi());
  std::shared_ptr<const lfunc::CompletedSeries> lam =
      std::make_shared<const lfunc::CompletedSeries>(lfunc::curve_lambda(arith::EllipticCurveData::curve_32a()));
  lfunc::ProductEvaluator Z = lfunc::zeta_product_zc(xi, lam);

  mellin::ContourSpec contour() const {
    mellin::ContourSpec k;
    k.c = Z.center() + Z.omega() + 0.5;
    k.T = 60.0;
    k.conjugate_symmetric = true;
    return k;
  }
};

const Zc& zc() {
  static const Zc z;
  return z;
}

}  // namespace

static void BM_LCoefficients(benchmark::State& state) {
  const auto c = arith::EllipticCurveData::curve_32a();
  for (auto _ : state) benchmark::DoNotOptimize(arith::l_coefficients(c, state.range(0)));
}
BENCHMARK(BM_LCoefficients)->Arg(1000)->Arg(10000);

static void BM_CountPoints(benchmark::State& state) {
  const auto c = arith::EllipticCurveData::curve_11a();
  for (auto _ : state) benchmark::DoNotOptimize(arith::count_points_ap(c, state.range(0)));
}
BENCHMARK(BM_CountPoints)->Arg(101)->Arg(9973);

static void BM_LogGamma(benchmark::State& state) {
  cplx z(0.3, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::log_gamma(z));
    z += cplx(0.0, 1e-3);
  }
}
BENCHMARK(BM_LogGamma);

static void BM_XiSmoothed(benchmark::State& state) {
  const auto& xi = *zc().xi;
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lfunc::eval_completed_smoothed(xi, cplx(0.5, t)));
    t += 1e-3;
  }
}
BENCHMARK(BM_XiSmoothed);

static void BM_InverseMellinGrid(benchmark::State& state) {
  mellin::ContourSpec k;
  k.c = 2.0;
  k.T = 60.0;
  k.conjugate_symmetric = true;
  const auto grid = mellin::symmetric_grid(1.0 / 64, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mellin::inverse_mellin_grid([](cplx s) { return specfun::gamma(s); }, k, grid));
  }
}
BENCHMARK(BM_InverseMellinGrid)->Arg(385)->Arg(1537)->Unit(benchmark::kMillisecond);

static void BM_BoundaryContour(benchmark::State& state) {
  const auto& z = zc();
  const auto grid = mellin::symmetric_grid(1.0 / 64, 1537);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        boundary::boundary_route_contour([&](cplx s) { return z.Z(s); }, 1.0, z.contour(), grid));
  }
}
BENCHMARK(BM_BoundaryContour)->Unit(benchmark::kMillisecond);

static void BM_BoundarySeries(benchmark::State& state) {
  const auto grid = mellin::symmetric_grid(1.0 / 64, 1537);
  const auto B = boundary::zc_series_coefficients(arith::EllipticCurveData::curve_32a(), 10000);
  const auto atom = boundary::zc_kappa_atom(1024 * grid.x(0));
  for (auto _ : state) benchmark::DoNotOptimize(boundary::boundary_route_series(B, atom, 1.0, grid));
}
BENCHMARK(BM_BoundarySeries)->Unit(benchmark::kMillisecond);

static void BM_MultConvolve(benchmark::State& state) {
  auto f = mellin::symmetric_grid(0.25, 129), h = mellin::symmetric_grid(0.25, state.range(0));
  for (std::size_t j = 0; j < f.size(); ++j) f.values[j] = std::exp(-std::abs(f.log_x(j)));
  for (std::size_t j = 0; j < h.size(); ++j) h.values[j] = std::exp(-h.x(j));
  for (auto _ : state) benchmark::DoNotOptimize(meanper::mult_convolve(f, h, meanper::ConvMode::valid));
}
BENCHMARK(BM_MultConvolve)->Arg(161)->Arg(1537);

static void BM_EisensteinDirect(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(eisenstein::eisenstein_direct({0.3, 0.8}, 2.0, state.range(0)));
  }
}
BENCHMARK(BM_EisensteinDirect)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_EisensteinWhittaker(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eisenstein::eisenstein_whittaker({0.3, 0.8}, 2.5, 40));
}
BENCHMARK(BM_EisensteinWhittaker);
BENCHMARK_MAIN();
