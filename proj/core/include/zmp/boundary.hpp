#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "zmp/arith.hpp"
#include "zmp/lfunc.hpp"
#include "zmp/mellin.hpp"

namespace zmp::boundary {

enum class Route { contour, series, spectral };
const char* route_name(Route r);

/// Samples of h(x) = f(x) - eps x^{-1} f(1/x).
struct BoundaryFunction {
  mellin::GridFunction grid;
  double epsilon = 1.0;
  Route route = Route::contour;
  std::string source;
  double error_estimate = 0.0;
  std::vector<double> pointwise_error;  // per node; empty when the route does not track it
};

/// Ordinates gamma_1 < gamma_2 < ... of zeros fe_center + i gamma.
struct ZeroList {
  std::vector<double> ordinates;
  std::string source;

  std::size_t count() const { return ordinates.size(); }
  void validate() const;
  ZeroList first(std::size_t n) const;
};

ZeroList read_zero_list(std::istream& is);
void write_zero_list(std::ostream& os, const ZeroList& zeros);

/// Zeros of a self-dual completed series on its critical line, located by sign changes
/// of the real function t -> Lhat(fe_center + it) and refined by bracketing.
ZeroList scan_critical_zeros(const lfunc::CompletedSeries& cs, std::size_t count, double step = 0.05,
                             double t_max = 200.0);

/// x0 symmetric about 1, so that node j and node n-1-j are reflections.
bool is_symmetric(const mellin::GridFunction& grid);

/// h from samples of f on a symmetric grid.
mellin::GridFunction reflect(const mellin::GridFunction& f, double epsilon);

/// max |h(x) + eps x^{-1} h(1/x)| over paired nodes.
double reflection_defect(const BoundaryFunction& h);

/// Route A: f = inverse Mellin transform of the product along the contour.
BoundaryFunction boundary_route_contour(const mellin::Evaluator& product, double epsilon,
                                        const mellin::ContourSpec& contour, const mellin::GridFunction& grid,
                                        double tol = 1e-10);

/// Real atom y -> kappa(y) with kappa(y) below the double range for y > cutoff.
struct SeriesAtom {
  std::function<double(double)> eval;
  double cutoff = 0.0;
  std::string name;
  double rel_error = 1e-14;
};

/// Sparse Dirichlet coefficients b_k; every k <= truncation is represented.
struct SparseCoefficients {
  std::vector<arith::Int> k;
  std::vector<double> b;
  arith::Int truncation = 0;

  void validate() const;
};

SparseCoefficients sparse_from_dense(const std::vector<double>& dense);

/// Route B: f(x) = sum_k b_k kappa(kx). Throws TailError when the first omitted
/// term can exceed tol relative to the largest sample.
BoundaryFunction boundary_route_series(const SparseCoefficients& coeffs, const SeriesAtom& atom, double epsilon,
                                       const mellin::GridFunction& grid, double tol = 1e-12);

/// kappa(x) = 4 sum sigma_0(n) K_0(2 pi n x), the inverse Mellin transform of xi(Q,s)^2
/// on Re s = 2.
double kappa_eval(double x);
SeriesAtom kappa_atom();

/// Inverse Mellin transform of pi^{-s} Gamma(s/2)^2 16 pi^2 / (2s-1)^2 (the gamma part of Z_C):
/// 16 pi^2 int_0^inf K_0(2 pi y e^u) u e^{u/2} du, by adaptive quadrature.
double zc_kappa_direct(double y);

/// zc_kappa_direct tabulated in log y from y_min and interpolated.
SeriesAtom zc_kappa_atom(double y_min);

/// Z_C(s) = gamma(s) sum B_k k^{-s}, k = N^2 n j^2 with n, j j^2 <= N_coef:
/// B_k = sum sigma_0(n) c_j, c = coefficients of zeta(C,s)^2.
SparseCoefficients zc_series_coefficients(const arith::EllipticCurveData& curve, std::size_t n_coef);

/// Laurent coefficients C_1..C_max_m at lambda by trapezoidal circle quadrature.
/// Radii r and r/2 must agree to agree_tol, else a second singularity is assumed inside.
lfunc::PoleDatum principal_part(const mellin::Evaluator& F, cplx lambda, int max_m, double radius = 0.05,
                                double agree_tol = 1e-6, int nodes = 64);

/// Poles for route C: the evaluator's declared poles and those induced by zeros of the
/// denominator factors at fe_center + i gamma (and conjugates), with principal parts.
std::vector<lfunc::PoleDatum> spectral_poles(const lfunc::ProductEvaluator& product, const ZeroList& zeros,
                                             double radius = 0.05);

/// Route C: sum over poles with |Im| <= T of the residues of F(s) x^{-s}.
/// Poles below the real axis are taken as conjugates of those above.
BoundaryFunction boundary_route_spectral(const std::vector<lfunc::PoleDatum>& poles, double T,
                                         const mellin::GridFunction& grid);

struct OmegaPhi {
  cplx phi;
  cplx omega;
  double phi_tail = 0.0;    // f at the right end of the grid
  double omega_tail = 0.0;  // h x^s at the left end; large where omega diverges
};

/// phi(s) = int_1^inf f x^s dx/x + eps int_1^inf f x^{1-s} dx/x, omega(s) = int_0^1 h x^s dx/x.
/// Throws TailError when phi_tail exceeds tol; omega is only meaningful when omega_tail is small.
OmegaPhi omega_phi_split(const mellin::GridFunction& f, double epsilon, cplx s, double tol = 1e-8);

/// max |a - b| / max |a| over nodes with x in [x_lo, x_hi].
double sup_relative_deviation(const BoundaryFunction& a, const BoundaryFunction& b, double x_lo, double x_hi);
/// sqrt(sum |a - b|^2 log r) over the same nodes.
double l2_deviation(const BoundaryFunction& a, const BoundaryFunction& b, double x_lo, double x_hi);

/// CSV with header x,h_re,h_im,route.
void write_csv(std::ostream& os, const BoundaryFunction& h);

}  // namespace zmp::boundary
