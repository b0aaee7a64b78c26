#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "zmp/common.hpp"

namespace zmp::eisenstein {

struct UpperHalfPoint {
  double x = 0.0;
  double y = 1.0;

  void validate() const;
  cplx z() const { return {x, y}; }
};

struct DirectValue {
  cplx value;            // half-sum over coprime (c, d) with max(|c|, |d|) <= cutoff
  cplx tail_correction;  // (3/pi^2) y^w K^{2-2w} int_{max(|c|,|d|)>1} |cz+d|^{-2w}
  double tail_estimate = 0.0;
};

/// E(z,w) = (1/2) sum_{(c,d)=1} y^w / |cz+d|^{2w}. Requires Re w > 1.
DirectValue eisenstein_direct(UpperHalfPoint z, cplx w, std::size_t cutoff);

/// Riemann zeta at any s != 1, from the completed function.
cplx riemann_zeta(cplx s);

/// phi(w) = sqrt(pi) Gamma(w - 1/2) zeta(2w - 1) / (Gamma(w) zeta(2w)).
cplx phi_const(cplx w);

/// K_nu(x) for complex order, x > 0.
cplx bessel_k_complex(cplx nu, double x);

/// Coefficient of the n-sum in the Fourier-Whittaker expansion, with
/// |n|^{w-1} sqrt(2 pi |n| y) K_{w-1/2}(2 pi |n| y) e^{2 pi i n x} as the n-th term.
enum class GammaReading {
  plain,      // Gamma(Q,w) = Gamma(w): the standard expansion
  completed,  // Gamma(Q,w) = Gamma_R(w) = pi^{-w/2} Gamma(w/2)
};
cplx whittaker_prefactor(cplx w, GammaReading reading = GammaReading::plain);

struct WhittakerValue {
  cplx value;
  double tail_estimate = 0.0;
};

/// y^w + phi(w) y^{1-w} + prefactor sum_{0<|n|<=n_terms} sigma_{1-2w}(n) ... .
/// Throws TailError when the first omitted pair can exceed tol relative to |value|.
WhittakerValue eisenstein_whittaker(UpperHalfPoint z, cplx w, std::size_t n_terms,
                                    GammaReading reading = GammaReading::plain, double tol = 1e-12);

struct LFunctionValue {
  cplx series;   // sum sigma_{1-2w}(n) n^{w-s-1/2}: n <= N directly, the rest by Euler-Maclaurin
  cplx product;  // zeta(s + w - 1/2) zeta(s - w + 1/2)
  cplx printed;  // zeta(s + w - 1/2) zeta(s - w - 1/2), the product as printed
  std::string warning;
};

/// Requires Re(s) > |Re(w) - 1/2| + 1/2 so the series converges absolutely.
LFunctionValue eis_l_function(cplx w, cplx s, std::size_t N = 2000);

/// sum_{m >= M} m^{-b}, Re b > 1, by Euler-Maclaurin.
cplx hurwitz_tail(cplx b, std::size_t M);

/// CSV header: x,y,w_re,w_im,direct_re,direct_im,whittaker_re,whittaker_im,delta.
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, UpperHalfPoint z, cplx w, cplx direct, cplx whittaker);

}  // namespace zmp::eisenstein
