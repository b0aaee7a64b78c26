#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "zmp/common.hpp"

namespace zmp::mellin {

using Evaluator = std::function<cplx(cplx)>;

/// Vertical line Re(s) = c, truncated to |Im s| <= T.
struct ContourSpec {
  double c = 2.0;
  double T = 60.0;
  double step = 0.0;  // 0: chosen from the grid extent
  /// F(conj s) = conj F(s): only the upper half of the line is evaluated.
  bool conjugate_symmetric = false;

  void validate() const;
};

/// Samples on x_j = x0 r^j, j = 0..n-1.
struct GridFunction {
  double x0 = 1.0;
  double ratio = 2.0;
  std::vector<cplx> values;

  std::size_t size() const { return values.size(); }
  double x(std::size_t j) const;
  double log_x(std::size_t j) const;
  double log_step() const;
  double x_max() const { return x(size() - 1); }

  void validate() const;
};

GridFunction log_grid(double x0, double ratio, std::size_t n);
/// n nodes symmetric about x = 1 (n odd), spacing log r; default e^{-3}..e^{3}.
GridFunction symmetric_grid(double log_ratio = 1.0 / 64.0, std::size_t n = 385);

/// Convolution-compatible: same ratio, and x0 ratios are integral powers of r.
bool compatible(const GridFunction& a, const GridFunction& b);

/// pi / (log(span / tol) + 10): places the aliased copies e^{2 pi / h} apart below tol.
double auto_step(double x_min, double x_max, double tol);

struct InverseValue {
  cplx value;
  double truncation_error = 0.0;      // tail beyond |Im s| = T
  double discretization_error = 0.0;  // |S_h - S_{2h}|
  double error() const { return truncation_error + discretization_error; }
};

/// (1/2pi) int_{-T}^{T} F(c+it) x^{-c-it} dt by the trapezoidal rule.
/// Throws TailError when |F(c+iT)| x^{-c} exceeds tol.
InverseValue inverse_mellin(const Evaluator& F, const ContourSpec& contour, double x, double tol = 1e-10);

struct InverseGrid {
  GridFunction grid;
  double truncation_error = 0.0;
  double discretization_error = 0.0;
  double rounding_error = 0.0;  // 8 eps x^{-c} (h / 2pi) sum |F|
  std::vector<double> pointwise_error;
  double error() const { return truncation_error + discretization_error + rounding_error; }
};

/// inverse_mellin on every node of the template; F is evaluated once per contour node.
InverseGrid inverse_mellin_grid(const Evaluator& F, const ContourSpec& contour, const GridFunction& grid,
                                double tol = 1e-10);

/// Contour node values, for callers that reuse one pass over the line.
struct ContourSamples {
  ContourSpec contour;
  std::vector<double> t;  // nodes 0, h, 2h, ... (or -T..T)
  std::vector<cplx> F;
  double step = 0.0;
};
ContourSamples sample_contour(const Evaluator& F, const ContourSpec& contour, double step);
InverseGrid inverse_from_samples(const ContourSamples& samples, const GridFunction& grid, double tol = 1e-10);

struct ForwardValue {
  cplx value;
  double tail_estimate = 0.0;
};

/// sum_j f(x_j) x_j^s log r, with geometric extrapolation of both end tails.
/// Throws TailError when the tail estimate exceeds tol.
ForwardValue forward_mellin(const GridFunction& f, cplx s,
                            double tol = std::numeric_limits<double>::infinity());

/// CSV with header x,re,im.
void write_csv(std::ostream& os, const GridFunction& f);
GridFunction read_csv(std::istream& is);

}  // namespace zmp::mellin
