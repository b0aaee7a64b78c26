#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zmp/arith.hpp"
#include "zmp/common.hpp"
#include "zmp/specfun.hpp"

namespace zmp::lfunc {

/// Principal part at a pole: principal_coeffs[m-1] = C_m, coefficient of (s - location)^{-m}.
struct PoleDatum {
  cplx location;
  int multiplicity = 1;
  std::vector<cplx> principal_coeffs;

  void validate() const;
};

/// gamma(s) * sum a_n n^{-s}, with Lhat(s) = epsilon * conj(Lhat(2 fe_center - conj(s))).
struct CompletedSeries {
  std::vector<double> coeffs;  // coeffs[n] = a_n, coeffs[0] unused
  specfun::GammaFactor gamma;
  cplx epsilon = 1.0;
  std::vector<PoleDatum> poles;
  std::vector<cplx> declared_zeros;
  double convergence_abscissa = 1.0;
  double fe_center = 0.5;
  std::string label;

  void validate() const;
  std::size_t length() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

std::vector<double> to_real(const arith::DirichletCoefficients& c);

/// xi(Q,s) = Gamma_R(s) zeta(s); simple poles at 0 (residue -1) and 1 (residue +1).
CompletedSeries riemann_xi(std::size_t N = 256);

/// Lambda(E,s) = (sqrt(N)/2pi)^s Gamma(s) L(E,s), fe_center 1. The sign is
/// fitted with fit_epsilon, not assumed.
CompletedSeries curve_lambda(const arith::EllipticCurveData& curve, std::size_t N = 4000);

struct SeriesValue {
  cplx value;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};

/// Truncated Dirichlet series with a tail bound from the coefficient growth.
/// Requires Re(s) > convergence_abscissa + margin.
SeriesValue eval_dirichlet(const CompletedSeries& cs, cplx s, double margin = 0.5,
                           const PrecisionPolicy& policy = {});

struct SmoothingOptions {
  /// Rotation of the theta variable; chosen from Im(s) when unset.
  std::optional<double> theta;
  /// Modulus of the split point (1 is the symmetric split).
  double split = 1.0;
  /// Multiplies the automatically chosen number of terms.
  double term_scale = 1.0;
};

/// Two-sided incomplete-gamma expansion
///   sum a_n [(A/n)^s G(u, X_n d) + eps (A/n)^{s'} G(u', X_n / d)] + sum_p R_p d^{lambda(s-p)} / (s-p)
/// with A = sqrt(q), X_n = (n/A)^{1/lambda}, u = lambda s + mu, s' = 2 fe_center - s and
/// d = split * e^{i theta}. Single gamma atom and simple poles only.
cplx eval_completed_smoothed(const CompletedSeries& cs, cplx s, const SmoothingOptions& opts = {});

/// |Lhat(s) - eps conj(Lhat(2 fe_center - conj(s)))|. The reflected value uses a
/// different split point, so a wrong sign shows up as a nonzero residual.
double fe_residual(const CompletedSeries& cs, cplx s);

/// Picks the sign in {+1, -1} minimizing the summed fe_residual on the sample points.
cplx fit_epsilon(const CompletedSeries& cs, const std::vector<cplx>& points);

struct AnalyticShapeReport {
  double abscissa = 0.0;  // -inf for a finite series
  double omega = 0.0;     // max |Re(pole) - fe_center|
  double epsilon_modulus = 1.0;
  bool epsilon_ok = true;
  double log_derivative_ratio = 0.0;  // max |b_n| / (degree log n)
  bool log_derivative_ok = true;
  std::string note;
};

AnalyticShapeReport shape_check(const CompletedSeries& cs);

struct ProductFactor {
  std::shared_ptr<const CompletedSeries> series;
  cplx shift = 0.0;
  double scale = 1.0;
  int power = 1;  // negative powers put the factor in the denominator
};

struct PoleLocation {
  cplx location;
  int multiplicity = 1;
};

/// s -> prod f_i(scale_i s + shift_i)^{power_i}.
class ProductEvaluator {
 public:
  explicit ProductEvaluator(std::vector<ProductFactor> factors, double center = 0.5, double omega = 1.0);

  cplx operator()(cplx s) const;
  cplx eval(cplx s, const SmoothingOptions& opts) const;

  /// Declared poles of the numerator factors, transported and merged.
  const std::vector<PoleLocation>& poles() const { return poles_; }
  cplx epsilon() const { return epsilon_; }
  double center() const { return center_; }
  double omega() const { return omega_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::vector<ProductFactor>& factors() const { return factors_; }

 private:
  std::vector<ProductFactor> factors_;
  std::vector<PoleLocation> poles_;
  std::vector<std::string> warnings_;
  cplx epsilon_ = 1.0;
  double center_;
  double omega_;
};

ProductEvaluator assemble_product(std::vector<ProductFactor> factors, double center = 0.5,
                                  double omega = 1.0);

/// Z_C(s) = xi(s)^2 xi(C,2s)^2 with xi(C,s) = xi(s) xi(s-1) / Lambda(E,s).
ProductEvaluator zeta_product_zc(std::shared_ptr<const CompletedSeries> xi,
                                 std::shared_ptr<const CompletedSeries> lambda);

/// xi(C, s+1/2)^2 xi(Q, s/2+1/4)^2 (one auxiliary field, k_1 = Q).
ProductEvaluator zeta_product_boundary(std::shared_ptr<const CompletedSeries> xi,
                                       std::shared_ptr<const CompletedSeries> lambda);

}  // namespace zmp::lfunc
