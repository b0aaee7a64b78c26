#include "zmp/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zmp::lfunc {

namespace {

constexpr double kPoleGuard = 1e-6;
// Rotation keeps the cancellation between terms below e^kRotationLoss.
constexpr double kRotationLoss = 8.0;
constexpr double kTruncation = 45.0;

double auto_theta(double im_u) {
  const double a = std::abs(im_u);
  if (a <= kRotationLoss / (0.5 * kPi)) return 0.0;
  const double phi = kRotationLoss / a;
  return std::copysign(0.5 * kPi - phi, im_u);
}

// Smallest n such that the incomplete-gamma terms past n are negligible.
std::size_t needed_terms(double A, double lambda, cplx u, cplx log_delta) {
  const double c = std::cos(log_delta.imag()) * std::exp(log_delta.real());
  const double re_u = std::abs(u.real()) + 1.0;
  for (std::size_t n = 1;; n *= 2) {
    const double X = std::pow(n / A, 1.0 / lambda);
    if (X * c - re_u * std::log1p(X) - std::log(double(n)) >= kTruncation) {
      std::size_t lo = n / 2, hi = n;
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        const double Xm = std::pow(mid / A, 1.0 / lambda);
        if (Xm * c - re_u * std::log1p(Xm) - std::log(double(mid)) >= kTruncation) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return std::max<std::size_t>(hi, 1);
    }
    if (n > (std::size_t{1} << 40)) throw PrecisionNotAchieved("smoothed evaluation: no truncation point");
  }
}

double coefficient_growth(const std::vector<double>& a) {
  // regression slope of log max|a_n| over dyadic blocks
  std::vector<std::pair<double, double>> pts;
  const std::size_t N = a.size() - 1;
  for (std::size_t lo = 8; 2 * lo - 1 <= N; lo *= 2) {
    double m = 0.0;
    for (std::size_t n = lo; n < 2 * lo; ++n) m = std::max(m, std::abs(a[n]));
    if (m > 0) pts.emplace_back(std::log(double(lo)), std::log(m));
  }
  if (pts.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = double(pts.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

void PoleDatum::validate() const {
  if (multiplicity < 1 || principal_coeffs.size() != static_cast<std::size_t>(multiplicity)) {
    throw DomainError("PoleDatum: principal_coeffs must have exactly multiplicity entries");
  }
  if (principal_coeffs.back() == 0.0) throw DomainError("PoleDatum: leading coefficient is zero");
}

void CompletedSeries::validate() const {
  gamma.validate();
  if (std::abs(std::abs(epsilon) - 1.0) > 1e-12) throw DomainError(label + ": |epsilon| must be 1");
  for (const auto& p : poles) p.validate();
  if (coeffs.size() < 2) throw DomainError(label + ": empty coefficient list");
}

std::vector<double> to_real(const arith::DirichletCoefficients& c) {
  std::vector<double> out(c.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(c.values[i]);
  if (!out.empty()) out[0] = 0.0;
  return out;
}

CompletedSeries riemann_xi(std::size_t N) {
  CompletedSeries cs;
  cs.coeffs.assign(N + 1, 1.0);
  cs.coeffs[0] = 0.0;
  cs.gamma = specfun::GammaFactor::real_place();
  cs.epsilon = 1.0;
  cs.poles = {{0.0, 1, {-1.0}}, {1.0, 1, {1.0}}};
  cs.convergence_abscissa = 1.0;
  cs.fe_center = 0.5;
  cs.label = "xi(Q,s)";
  return cs;
}

CompletedSeries curve_lambda(const arith::EllipticCurveData& curve, std::size_t N) {
  CompletedSeries cs;
  cs.coeffs = to_real(arith::l_coefficients(curve, N));
  cs.gamma = {static_cast<double>(curve.conductor) / (4 * kPi * kPi), {{1.0, 0.0}}};
  cs.convergence_abscissa = 1.5;
  cs.fe_center = 1.0;
  cs.label = "Lambda(" + curve.label + ",s)";
  cs.epsilon = fit_epsilon(cs, {{1.2, 3.0}, {0.9, 1.5}, {1.35, 6.0}});
  return cs;
}

SeriesValue eval_dirichlet(const CompletedSeries& cs, cplx s, double margin, const PrecisionPolicy& policy) {
  policy.validate();
  if (!(s.real() > cs.convergence_abscissa + margin)) {
    throw DomainError("eval_dirichlet: Re(s) outside the half-plane of absolute convergence");
  }
  const std::size_t N = std::min<std::size_t>(cs.length(), policy.max_terms);
  const double alpha = cs.convergence_abscissa - 1.0 + 0.1;
  double C = 0.0;
  cplx sum = 0.0;
  for (std::size_t n = N; n >= 1; --n) {
    const double a = cs.coeffs[n];
    if (a != 0.0) sum += a * std::exp(-s * std::log(double(n)));
    C = std::max(C, std::abs(a) / std::pow(double(n), alpha));
  }
  // sum_{n > N} C n^{alpha - sigma} <= C N^{alpha - sigma + 1} / (sigma - alpha - 1)
  const double ex = alpha - s.real() + 1.0;
  const double tail = C * std::pow(double(N), ex) / (-ex);
  return {sum, tail, N};
}

cplx eval_completed_smoothed(const CompletedSeries& cs, cplx s, const SmoothingOptions& opts) {
  if (cs.gamma.atoms.size() != 1) {
    throw DomainError(cs.label + ": smoothed evaluation needs exactly one gamma atom");
  }
  for (const auto& p : cs.poles) {
    if (p.multiplicity != 1) throw DomainError(cs.label + ": smoothed evaluation needs simple poles");
    if (std::abs(s - p.location) < kPoleGuard) {
      throw PoleError(cs.label + ": evaluation point within 1e-6 of a declared pole");
    }
  }
  if (!(opts.split > 0.0) || !(opts.term_scale > 0.0)) throw DomainError("invalid smoothing options");

  const double lambda = cs.gamma.atoms[0].lambda;
  const cplx mu = cs.gamma.atoms[0].mu;
  const double A = std::sqrt(cs.gamma.conductor);
  const cplx sd = 2.0 * cs.fe_center - s;
  const cplx u = lambda * s + mu;
  const cplx ud = lambda * sd + std::conj(mu);
  const double theta = opts.theta ? *opts.theta : auto_theta(u.imag());
  if (std::abs(theta) >= 0.5 * kPi) throw DomainError("smoothing rotation must satisfy |theta| < pi/2");
  const cplx log_delta(std::log(opts.split), theta);
  const cplx delta = std::exp(log_delta);

  const std::size_t need = std::max(needed_terms(A, lambda, u, log_delta),
                                    needed_terms(A, lambda, ud, -log_delta));
  const auto N = static_cast<std::size_t>(std::ceil(opts.term_scale * double(need)));
  if (N > cs.length()) {
    throw TailError(cs.label + ": smoothed evaluation needs " + std::to_string(N) + " coefficients, have " +
                        std::to_string(cs.length()),
                    double(N));
  }

  const double logA = std::log(A);
  cplx upper = 0.0, dual = 0.0;
  for (std::size_t n = N; n >= 1; --n) {
    const double a = cs.coeffs[n];
    if (a == 0.0) continue;
    const double logn = std::log(double(n));
    const double X = std::exp((logn - logA) / lambda);
    upper += a * std::exp(s * (logA - logn)) * specfun::incomplete_gamma_upper(u, X * delta);
    dual += a * std::exp(sd * (logA - logn)) * specfun::incomplete_gamma_upper(ud, X / delta);
  }
  cplx poles = 0.0;
  for (const auto& p : cs.poles) {
    poles += p.principal_coeffs[0] * std::exp(lambda * (s - p.location) * log_delta) / (s - p.location);
  }
  return upper + cs.epsilon * dual + poles;
}

double fe_residual(const CompletedSeries& cs, cplx s) {
  const cplx lhs = eval_completed_smoothed(cs, s);
  SmoothingOptions other;
  other.split = 1.25;
  const cplx rhs = cs.epsilon * std::conj(eval_completed_smoothed(cs, 2.0 * cs.fe_center - std::conj(s), other));
  return std::abs(lhs - rhs);
}

cplx fit_epsilon(const CompletedSeries& cs, const std::vector<cplx>& points) {
  double best = std::numeric_limits<double>::infinity();
  cplx best_eps = 1.0;
  for (double e : {1.0, -1.0}) {
    CompletedSeries trial = cs;
    trial.epsilon = e;
    double r = 0.0;
    for (cplx s : points) r += fe_residual(trial, s);
    if (r < best) {
      best = r;
      best_eps = e;
    }
  }
  return best_eps;
}

AnalyticShapeReport shape_check(const CompletedSeries& cs) {
  AnalyticShapeReport rep;
  const std::size_t N = cs.length();
  bool finite = true;
  for (std::size_t n = 2; n <= N; ++n) finite = finite && cs.coeffs[n] == 0.0;
  rep.abscissa = finite ? -std::numeric_limits<double>::infinity() : 1.0 + coefficient_growth(cs.coeffs);

  for (const auto& p : cs.poles) rep.omega = std::max(rep.omega, std::abs(p.location.real() - cs.fe_center));
  rep.epsilon_modulus = std::abs(cs.epsilon);
  rep.epsilon_ok = std::abs(rep.epsilon_modulus - 1.0) < 1e-12;

  // -L'/L = sum b_n n^{-s}: sum_{d|n} b_d a_{n/d} = a_n log n.
  // Bound |b_n| <= degree n^{abscissa-1} log n (coefficients are not unitarily normalized).
  const double weight = std::max(0.0, cs.convergence_abscissa - 1.0);
  double degree = 0.0;
  for (const auto& at : cs.gamma.atoms) degree += 2.0 * at.lambda;
  if (N >= 2 && cs.coeffs[1] != 0.0) {
    std::vector<double> b(N + 1, 0.0), conv(N + 1, 0.0);
    for (std::size_t n = 2; n <= N; ++n) {
      b[n] = (cs.coeffs[n] * std::log(double(n)) - conv[n]) / cs.coeffs[1];
      for (std::size_t m = 2; m * n <= N; ++m) conv[m * n] += b[n] * cs.coeffs[m];
      const double bound = degree * std::log(double(n)) * std::pow(double(n), weight);
      rep.log_derivative_ratio = std::max(rep.log_derivative_ratio, std::abs(b[n]) / bound);
    }
    rep.log_derivative_ok = rep.log_derivative_ratio <= 1.0 + 1e-9;
  }
  rep.note = "abscissa from dyadic coefficient growth; order-of-growth is heuristic";
  return rep;
}

ProductEvaluator::ProductEvaluator(std::vector<ProductFactor> factors, double center, double omega)
    : factors_(std::move(factors)), center_(center), omega_(omega) {
  for (const auto& f : factors_) {
    if (!f.series) throw DomainError("assemble_product: null factor");
    if (!(f.scale > 0.0) || f.power == 0) throw DomainError("assemble_product: scale must be positive, power nonzero");
    epsilon_ *= std::pow(f.series->epsilon, f.power);
    if (f.power < 0) continue;
    for (const auto& p : f.series->poles) {
      const cplx loc = (p.location - f.shift) / f.scale;
      const int m = p.multiplicity * f.power;
      auto it = std::find_if(poles_.begin(), poles_.end(),
                             [&](const PoleLocation& q) { return std::abs(q.location - loc) < 1e-12; });
      if (it == poles_.end()) {
        poles_.push_back({loc, m});
      } else {
        it->multiplicity += m;
      }
    }
  }
  std::sort(poles_.begin(), poles_.end(), [](const PoleLocation& a, const PoleLocation& b) {
    return a.location.real() < b.location.real() ||
           (a.location.real() == b.location.real() && a.location.imag() < b.location.imag());
  });
  for (const auto& p : poles_) {
    if (std::abs(p.location.real() - center_) > omega_ + 1e-12) {
      warnings_.push_back("pole outside the strip |Re(s) - center| <= omega");
    }
    for (const auto& f : factors_) {
      if (f.power < 0) continue;
      for (cplx z : f.series->declared_zeros) {
        if (std::abs((z - f.shift) / f.scale - p.location) < 1e-9) {
          warnings_.push_back("pole of one factor coincides with a declared zero of " + f.series->label);
        }
      }
    }
  }
}

cplx ProductEvaluator::eval(cplx s, const SmoothingOptions& opts) const {
  cplx out = 1.0;
  for (const auto& f : factors_) {
    SmoothingOptions o = opts;
    o.theta.reset();
    const cplx v = eval_completed_smoothed(*f.series, f.scale * s + f.shift, o);
    out *= f.power == 1 ? v : std::pow(v, f.power);
  }
  return out;
}

cplx ProductEvaluator::operator()(cplx s) const { return eval(s, {}); }

ProductEvaluator assemble_product(std::vector<ProductFactor> factors, double center, double omega) {
  return ProductEvaluator(std::move(factors), center, omega);
}

ProductEvaluator zeta_product_zc(std::shared_ptr<const CompletedSeries> xi,
                                 std::shared_ptr<const CompletedSeries> lambda) {
  return assemble_product({{xi, 0.0, 1.0, 2}, {xi, 0.0, 2.0, 2}, {xi, -1.0, 2.0, 2}, {lambda, 0.0, 2.0, -2}},
                          0.5, 0.5);
}

ProductEvaluator zeta_product_boundary(std::shared_ptr<const CompletedSeries> xi,
                                       std::shared_ptr<const CompletedSeries> lambda) {
  return assemble_product(
      {{xi, 0.5, 1.0, 2}, {xi, -0.5, 1.0, 2}, {lambda, 0.5, 1.0, -2}, {xi, 0.25, 0.5, 2}}, 0.5, 1.0);
}

}  // namespace zmp::lfunc
