#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "zmp/boundary.hpp"
#include "zmp/lfunc.hpp"
#include "zmp/mellin.hpp"

namespace zmp::meanper {

enum class ConvMode {
  full,   // every output node with at least one contributing pair
  valid,  // only nodes where the shorter input lies entirely inside the longer one
};

/// (f*g)(x) = sum_j f(x / y_j) g(y_j) log r. Needs a common ratio r.
mellin::GridFunction mult_convolve(const mellin::GridFunction& f, const mellin::GridFunction& g,
                                   ConvMode mode = ConvMode::full);

/// Samples of a convolutor with their pointwise error estimate.
struct Convolutor {
  mellin::GridFunction grid;
  std::vector<double> pointwise_error;
  std::string description;
};

/// Inverse Mellin transform of M(s) on the grid. Each abscissa must lie to the right of
/// every pole of M; per node the contour with the smallest error estimate is kept.
/// contour supplies T, the step and the symmetry flag.
Convolutor convolutor_from_kernel(const mellin::Evaluator& M, const mellin::ContourSpec& contour,
                                  const std::vector<double>& abscissae, const mellin::GridFunction& grid,
                                  std::string description);

/// Lambda(E,2s) s(s-1): the printed convolutor for Z_C.
cplx v_kernel(const lfunc::CompletedSeries& lambda, cplx s);
/// Lambda(E,2s)^2 s^4 (2s-1)^4 (s-1)^4: vanishes to the full order of every pole of Z_C.
cplx v_full_kernel(const lfunc::CompletedSeries& lambda, cplx s);
/// (N/4pi^2)^s Gamma(s)^2 s^4 (s-2)^4 (s-1)^2.
cplx w0_kernel(const arith::EllipticCurveData& curve, cplx s);

Convolutor convolutor_v(const lfunc::CompletedSeries& lambda, const mellin::ContourSpec& contour,
                        const mellin::GridFunction& grid);
Convolutor convolutor_v_full(const lfunc::CompletedSeries& lambda, const mellin::ContourSpec& contour,
                             const mellin::GridFunction& grid);
Convolutor convolutor_w0(const arith::EllipticCurveData& curve, const mellin::ContourSpec& contour,
                         const mellin::GridFunction& grid);

/// Default v grid: the convolutors decay like exp(-sqrt(x / 0.81)), so e^{-8}..e^{8}.
mellin::GridFunction convolutor_grid(double log_step = 1.0 / 64, double half_width = 8.0);

struct BudgetTerms {
  double h_error = 0.0;     // sum |v| dh log r
  double v_error = 0.0;     // sum dv |h| log r
  double rounding = 0.0;    // 16 eps sum |v| |h| log r
  double quadrature = 0.0;  // |S_h - S_2h| of the convolution sum
  double total() const { return h_error + v_error + rounding + quadrature; }
};

struct ConvolutionReport {
  double sup_residual = 0.0;
  double l2_residual = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  std::vector<std::pair<double, double>> refinement_series;  // (log step, sup residual), coarse to fine
  BudgetTerms budget;
  bool within_budget = false;
  bool monotone = false;
};

/// Residuals of v*h on the valid range at `levels` step sizes: the finest uses every
/// sample, each coarser level every second sample of the one below. The budget is
/// evaluated at the finest level.
ConvolutionReport verify_convolution(const Convolutor& v, const boundary::BoundaryFunction& h,
                                     const std::vector<double>& h_error, int levels = 3);

/// h plus delta_b [atom(k x) - eps x^{-1} atom(k / x)]: the boundary function of the
/// series with coefficient b_k moved by delta_b.
boundary::BoundaryFunction perturb_term(const boundary::BoundaryFunction& h, const boundary::SeriesAtom& atom,
                                        arith::Int k, double delta_b);

void write_report(std::ostream& os, const ConvolutionReport& r);
void write_refinement_csv(std::ostream& os, const ConvolutionReport& r);

struct PoleValue {
  cplx location;
  cplx value;
  double budget = 0.0;
};

/// int_0^inf w(y) y^lambda dy/y at each lambda, with the forward-quadrature budget
/// (input error, end tails and step halving).
std::vector<PoleValue> mellin_at_poles(const Convolutor& w, const std::vector<cplx>& poles);

}  // namespace zmp::meanper
