#include "zmp/eisenstein.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

#include "zmp/csv.hpp"
#include "zmp/lfunc.hpp"
#include "zmp/specfun.hpp"

namespace zmp::eisenstein {

namespace {

const lfunc::CompletedSeries& xi() {
  static const lfunc::CompletedSeries s = lfunc::riemann_xi();
  return s;
}

bool near_integer(cplx s, double& k) {
  k = std::round(s.real());
  return std::abs(s.imag()) < 1e-14 && std::abs(s.real() - k) < 1e-14;
}

}  // namespace

void UpperHalfPoint::validate() const {
  if (!(y > 0.0) || !std::isfinite(x)) throw DomainError("UpperHalfPoint: need y > 0");
}

DirectValue eisenstein_direct(UpperHalfPoint z, cplx w, std::size_t cutoff) {
  z.validate();
  if (!(w.real() > 1.0)) throw DomainError("eisenstein_direct: the sum converges only for Re w > 1");
  if (cutoff < 1) throw DomainError("eisenstein_direct: cutoff must be positive");
  const auto K = static_cast<long>(cutoff);
  const double ly = std::log(z.y);
  // (c, d) and (-c, -d) give equal terms: take c > 0 and the single pair (0, 1).
  cplx sum = std::exp(w * ly);
  for (long c = 1; c <= K; ++c) {
    const double cx = double(c) * z.x, cy2 = double(c) * double(c) * z.y * z.y;
    for (long d = -K; d <= K; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const double re = cx + double(d);
      sum += std::exp(w * (ly - std::log(re * re + cy2)));
    }
  }

  // Omitted pairs fill the plane outside the box with density 6/pi^2; in polar
  // coordinates the radial integral is (K R(t))^{2-2w} / (2w-2), R(t) = 1/max(|cos t|, |sin t|).
  auto integrand = [&](double t) {
    const double ct = std::cos(t), st = std::sin(t);
    const double R = 1.0 / std::max(std::abs(ct), std::abs(st));
    const double re = ct * z.x + st, im = ct * z.y;
    return std::exp((2.0 - 2.0 * w) * std::log(R) - w * std::log(re * re + im * im));
  };
  cplx I = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double a = k * kPi / 4, b = (k + 1) * kPi / 4;
    I += boost::math::quadrature::gauss<double, 30>::integrate(
        [&](double t) { return integrand(t).real(); }, a, b);
    I += cplx(0.0, 1.0) * boost::math::quadrature::gauss<double, 30>::integrate(
                              [&](double t) { return integrand(t).imag(); }, a, b);
  }
  const cplx corr = 0.5 * (6.0 / (kPi * kPi)) * std::exp(w * ly + (2.0 - 2.0 * w) * std::log(double(K))) * I /
                    (2.0 * w - 2.0);
  return {sum, corr, std::abs(corr)};
}

cplx riemann_zeta(cplx s) {
  double k = 0.0;
  if (near_integer(s, k)) {
    if (k == 1.0) throw PoleError("riemann_zeta: pole at s = 1");
    if (k == 0.0) return -0.5;
    if (k < 0.0 && std::fmod(-k, 2.0) == 0.0) return 0.0;
  }
  const cplx e = s - 1.0;
  if (std::abs(e) < 1e-3) {
    // Laurent series with Stieltjes constants; the completed function is declared singular here.
    static constexpr double kStieltjes[] = {0.57721566490153286061, -0.07281584548367672486,
                                            -0.00969036319287231848, 0.00205383442030334586,
                                            0.00232537006546730006};
    cplx sum = 0.0, pw = 1.0;
    double fact = 1.0, sign = 1.0;
    for (int n = 0; n < 5; ++n) {
      sum += sign * kStieltjes[n] / fact * pw;
      pw *= e;
      fact *= n + 1;
      sign = -sign;
    }
    return 1.0 / e + sum;
  }
  return lfunc::eval_completed_smoothed(xi(), s) / specfun::gamma_r(s);
}

cplx phi_const(cplx w) {
  double k = 0.0;
  if (near_integer(w, k) && k == 1.0) throw PoleError("phi_const: pole at w = 1 from zeta(2w - 1)");
  if (near_integer(w - 0.5, k) && k <= 0.0) throw PoleError("phi_const: Gamma(w - 1/2) has a pole");
  return std::sqrt(kPi) * std::exp(specfun::log_gamma(w - 0.5) - specfun::log_gamma(w)) *
         riemann_zeta(2.0 * w - 1.0) / riemann_zeta(2.0 * w);
}

cplx bessel_k_complex(cplx nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k_complex: x must be positive");
  if (nu.imag() == 0.0 && std::abs(nu.real()) <= 5.0) return specfun::bessel_k(nu.real(), x).value;
  // K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt; the trapezoidal rule converges
  // geometrically in 1/h for this entire, doubly decaying integrand.
  const double h = 1.0 / 32;
  const double a = std::abs(nu.real());
  cplx sum = 0.5 * std::exp(-x);
  for (int k = 1;; ++k) {
    const double t = k * h;
    const double expo = -x * std::cosh(t) + a * t;
    if (expo < -745.0 && t > 1.0 && x * std::sinh(t) > a) break;
    sum += std::exp(-x * std::cosh(t)) * std::cosh(nu * t);
  }
  return sum * h;
}

cplx whittaker_prefactor(cplx w, GammaReading reading) {
  const cplx g = reading == GammaReading::plain ? specfun::gamma(w) : specfun::gamma_r(w);
  return std::sqrt(2.0) * std::exp((w - 0.5) * std::log(kPi)) / (g * riemann_zeta(2.0 * w));
}

WhittakerValue eisenstein_whittaker(UpperHalfPoint z, cplx w, std::size_t n_terms, GammaReading reading,
                                    double tol) {
  z.validate();
  const cplx pre = whittaker_prefactor(w, reading);
  const cplx nu = w - 0.5;
  auto pair = [&](std::size_t n) {
    // n and -n together: e^{2 pi i n x} + e^{-2 pi i n x}
    const double arg = 2 * kPi * double(n) * z.y;
    return specfun::divisor_sigma(1.0 - 2.0 * w, n) * std::exp((w - 1.0) * std::log(double(n))) *
           std::sqrt(arg) * bessel_k_complex(nu, arg) * 2.0 * std::cos(2 * kPi * double(n) * z.x);
  };
  cplx sum = 0.0;
  for (std::size_t n = 1; n <= n_terms; ++n) sum += pair(n);
  const cplx value = std::exp(w * std::log(z.y)) + phi_const(w) * std::exp((1.0 - w) * std::log(z.y)) + pre * sum;

  // Envelope of the next pair without the cosine, continued geometrically.
  const std::size_t m = n_terms + 1;
  const double arg = 2 * kPi * double(m) * z.y;
  const double next = std::abs(pre * specfun::divisor_sigma(1.0 - 2.0 * w, m) *
                               std::exp((w - 1.0) * std::log(double(m))) * std::sqrt(arg) *
                               bessel_k_complex(nu, arg)) *
                      2.0;
  const double tail = next / (1.0 - std::exp(-2 * kPi * z.y));
  if (tail > tol * std::abs(value)) {
    throw TailError("eisenstein_whittaker: K-Bessel tail " + csv::fmt(tail) + " after " + std::to_string(n_terms) +
                        " terms",
                    tail);
  }
  return {value, tail};
}

cplx hurwitz_tail(cplx b, std::size_t M) {
  if (!(b.real() > 1.0)) throw DomainError("hurwitz_tail: need Re b > 1");
  if (M < 1) throw DomainError("hurwitz_tail: M must be positive");
  constexpr int kDirect = 16;
  // B_{2j} / (2j)!
  static constexpr double kB[] = {1.0 / 12,          -1.0 / 720,           1.0 / 30240,
                                  -1.0 / 1209600,    1.0 / 47900160,       -691.0 / 1307674368000,
                                  1.0 / 74724249600, -3617.0 / 10670622842880000};
  cplx s = 0.0;
  for (int k = 0; k < kDirect; ++k) s += std::exp(-b * std::log(double(M + k)));
  const double L = double(M + kDirect);
  const double lL = std::log(L);
  s += std::exp((1.0 - b) * lL) / (b - 1.0) + 0.5 * std::exp(-b * lL);
  cplx rising = b;  // b (b+1) ... (b + 2j - 2)
  for (int j = 1; j <= 8; ++j) {
    s += kB[j - 1] * rising * std::exp((-b - double(2 * j - 1)) * lL);
    rising *= (b + double(2 * j - 1)) * (b + double(2 * j));
  }
  return s;
}

LFunctionValue eis_l_function(cplx w, cplx s, std::size_t N) {
  const cplx a = 1.0 - 2.0 * w;
  const cplx b = s - w + 0.5;
  if (!(b.real() > 1.0) || !((b - a).real() > 1.0)) {
    throw DomainError("eis_l_function: the divisor series diverges; need Re(s) > |Re(w) - 1/2| + 1/2");
  }
  if (N < 1) throw DomainError("eis_l_function: N must be positive");
  std::vector<cplx> sigma(N + 1, 0.0);
  for (std::size_t d = 1; d <= N; ++d) {
    const cplx da = std::exp(a * std::log(double(d)));
    for (std::size_t m = d; m <= N; m += d) sigma[m] += da;
  }
  LFunctionValue out;
  cplx head = 0.0;
  for (std::size_t n = 1; n <= N; ++n) head += sigma[n] * std::exp(-b * std::log(double(n)));
  // sum_{n > N} = sum_d d^{a-b} sum_{m > N/d} m^{-b}
  cplx tail = hurwitz_tail(b - a, N + 1) * hurwitz_tail(b, 1);
  for (std::size_t d = 1; d <= N; ++d) tail += std::exp((a - b) * std::log(double(d))) * hurwitz_tail(b, N / d + 1);
  out.series = head + tail;
  out.product = riemann_zeta(s + w - 0.5) * riemann_zeta(s - w + 0.5);
  try {
    out.printed = riemann_zeta(s + w - 0.5) * riemann_zeta(s - w - 0.5);
  } catch (const PoleError&) {
    out.printed = cplx(std::numeric_limits<double>::infinity(), 0.0);
  }
  const double gap = std::abs(out.printed - out.series);
  if (!(gap <= 1e-8 * std::abs(out.series))) {
    out.warning = "printed product zeta(s+w-1/2) zeta(s-w-1/2) differs from the divisor series by " +
                  csv::fmt(gap) + "; the series factors as zeta(s+w-1/2) zeta(s-w+1/2)";
  }
  return out;
}

void write_csv_header(std::ostream& os) {
  os << "x,y,w_re,w_im,direct_re,direct_im,whittaker_re,whittaker_im,delta\n";
}

void write_csv_row(std::ostream& os, UpperHalfPoint z, cplx w, cplx direct, cplx whittaker) {
  os << csv::fmt(z.x) << ',' << csv::fmt(z.y) << ',' << csv::fmt(w.real()) << ',' << csv::fmt(w.imag()) << ','
     << csv::fmt(direct.real()) << ',' << csv::fmt(direct.imag()) << ',' << csv::fmt(whittaker.real()) << ','
     << csv::fmt(whittaker.imag()) << ',' << csv::fmt(std::abs(direct - whittaker)) << '\n';
}

}  // namespace zmp::eisenstein
