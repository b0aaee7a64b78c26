#pragma once

#include <cstdint>
#include <vector>

#include "zmp/common.hpp"

namespace zmp::specfun {

/// Principal branch of log Gamma(z). Lanczos (g = 607/128, 15 terms) on
/// Re(z) >= 1/2, reflection elsewhere. Throws PoleError at z = 0, -1, -2, ...
cplx log_gamma(cplx z, const PrecisionPolicy& policy = {});
cplx gamma(cplx z, const PrecisionPolicy& policy = {});

/// Gamma_R(s) = pi^{-s/2} Gamma(s/2).
cplx gamma_r(cplx s);
/// Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s).
cplx gamma_c(cplx s);

/// One Gamma(lambda s + mu) atom of an archimedean factor.
struct GammaAtom {
  double lambda = 1.0;
  cplx mu = 0.0;
};

/// q^{s/2} prod_j Gamma(lambda_j s + mu_j).
struct GammaFactor {
  double conductor = 1.0;
  std::vector<GammaAtom> atoms;

  void validate() const;

  static GammaFactor real_place() { return {1.0 / kPi, {{0.5, 0.0}}}; }  // Gamma_R
};

/// log of q^{s/2} prod Gamma(...). PoleError carries the offending atom index.
cplx log_gamma_factor(const GammaFactor& g, cplx s);
cplx gamma_factor_eval(const GammaFactor& g, cplx s);

struct BesselK {
  double value = 0.0;
  bool underflow = false;  // true when K underflows double; value is then exactly 0
};

/// Modified Bessel K_nu(x) for real nu in [-5, 5], x > 0.
/// Temme series for x <= 2, Steed's continued fraction beyond.
BesselK bessel_k(double nu, double x, const PrecisionPolicy& policy = {});

/// e^x K_nu(x); never underflows for moderate nu.
double bessel_k_scaled(double nu, double x, const PrecisionPolicy& policy = {});

/// Upper incomplete gamma Gamma(s, x) for Re(x) > 0 (real x is the common case;
/// complex x supports the rotated smoothed L-function sums).
cplx incomplete_gamma_upper(cplx s, cplx x, const PrecisionPolicy& policy = {});

/// sigma_a(n) = sum_{d | n} d^a. Exact integer arithmetic when a is a
/// nonnegative integer small enough to fit.
double divisor_sigma(double a, std::uint64_t n);
cplx divisor_sigma(cplx a, std::uint64_t n);

}  // namespace zmp::specfun
