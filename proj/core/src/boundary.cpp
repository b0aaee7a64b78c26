#include "zmp/boundary.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "zmp/csv.hpp"
#include "zmp/specfun.hpp"

namespace zmp::boundary {

namespace {

// 2 pi y beyond which K_0 and the kappa atoms underflow.
constexpr double kBesselUnderflowArg = 745.0;

double max_abs(const mellin::GridFunction& g) {
  double m = 0.0;
  for (const auto& v : g.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

const char* route_name(Route r) {
  switch (r) {
    case Route::contour:
      return "contour";
    case Route::series:
      return "series";
    case Route::spectral:
      return "spectral";
  }
  return "?";
}

void ZeroList::validate() const {
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    if (!(ordinates[i] > 0.0) || !std::isfinite(ordinates[i])) {
      throw DomainError("ZeroList: ordinates must be positive and finite");
    }
    if (i > 0 && !(ordinates[i] > ordinates[i - 1])) throw DomainError("ZeroList: ordinates must increase strictly");
  }
}

ZeroList ZeroList::first(std::size_t n) const {
  ZeroList z{{ordinates.begin(), ordinates.begin() + static_cast<long>(std::min(n, ordinates.size()))}, source};
  return z;
}

ZeroList read_zero_list(std::istream& is) {
  ZeroList z;
  std::string line;
  while (std::getline(is, line)) {
    std::string_view v(line);
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\r' || v.back() == '\t')) v.remove_suffix(1);
    if (v.empty()) continue;
    if (v.front() == '#') {
      constexpr std::string_view tag = "# source:";
      if (v.substr(0, tag.size()) == tag) {
        auto rest = v.substr(tag.size());
        while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        if (!z.source.empty()) z.source += "; ";
        z.source += std::string(rest);
      }
      continue;
    }
    z.ordinates.push_back(csv::parse_double(v));
  }
  try {
    z.validate();
  } catch (const DomainError& e) {
    throw IoError(std::string("zero list: ") + e.what());
  }
  return z;
}

void write_zero_list(std::ostream& os, const ZeroList& zeros) {
  if (!zeros.source.empty()) os << "# source: " << zeros.source << '\n';
  for (double g : zeros.ordinates) os << csv::fmt(g) << '\n';
}

ZeroList scan_critical_zeros(const lfunc::CompletedSeries& cs, std::size_t count, double step, double t_max) {
  if (!(step > 0.0) || !(t_max > step)) throw DomainError("scan_critical_zeros: need 0 < step < t_max");
  // Lhat / sqrt(eps) is real on the critical line.
  const cplx rot = 1.0 / std::sqrt(cs.epsilon);
  auto Z = [&](double t) { return (rot * lfunc::eval_completed_smoothed(cs, cplx(cs.fe_center, t))).real(); };
  ZeroList out;
  out.source = "sign changes of " + cs.label + " on Re s = " + csv::fmt(cs.fe_center) + ", step " + csv::fmt(step);
  double ta = step, za = Z(ta);
  while (out.count() < count && ta < t_max) {
    const double tb = ta + step;
    const double zb = Z(tb);
    if (za == 0.0) {
      out.ordinates.push_back(ta);
    } else if ((za < 0.0) != (zb < 0.0) && zb != 0.0) {
      boost::uintmax_t iters = 100;
      auto tol = boost::math::tools::eps_tolerance<double>(48);
      const auto r = boost::math::tools::toms748_solve(Z, ta, tb, za, zb, tol, iters);
      out.ordinates.push_back(0.5 * (r.first + r.second));
    }
    ta = tb;
    za = zb;
  }
  if (out.count() < count) {
    throw PrecisionNotAchieved("scan_critical_zeros: found " + std::to_string(out.count()) + " zeros below t = " +
                               csv::fmt(t_max));
  }
  return out;
}

bool is_symmetric(const mellin::GridFunction& grid) {
  const double a = grid.log_x(0), b = grid.log_x(grid.size() - 1);
  return std::abs(a + b) <= 1e-9 * std::max(1.0, std::abs(a));
}

mellin::GridFunction reflect(const mellin::GridFunction& f, double epsilon) {
  if (!is_symmetric(f)) throw DomainError("reflect: grid is not symmetric about x = 1");
  mellin::GridFunction h = f;
  const std::size_t n = f.size();
  for (std::size_t j = 0; j < n; ++j) {
    h.values[j] = f.values[j] - epsilon * std::exp(-f.log_x(j)) * f.values[n - 1 - j];
  }
  return h;
}

double reflection_defect(const BoundaryFunction& h) {
  const auto& g = h.grid;
  if (!is_symmetric(g)) throw DomainError("reflection_defect: grid is not symmetric about x = 1");
  const std::size_t n = g.size();
  double d = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    d = std::max(d, std::abs(g.values[j] + h.epsilon * std::exp(-g.log_x(j)) * g.values[n - 1 - j]));
  }
  return d;
}

BoundaryFunction boundary_route_contour(const mellin::Evaluator& product, double epsilon,
                                        const mellin::ContourSpec& contour, const mellin::GridFunction& grid,
                                        double tol) {
  if (!is_symmetric(grid)) throw DomainError("boundary_route_contour: grid is not symmetric about x = 1");
  const auto f = mellin::inverse_mellin_grid(product, contour, grid, tol);
  BoundaryFunction h;
  h.grid = reflect(f.grid, epsilon);
  h.epsilon = epsilon;
  h.route = Route::contour;
  h.source = "inverse Mellin on Re s = " + csv::fmt(contour.c) + ", T = " + csv::fmt(contour.T);
  h.error_estimate = 2.0 * f.error();
  const std::size_t n = grid.size();
  h.pointwise_error.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    h.pointwise_error[j] = f.pointwise_error[j] + std::exp(-grid.log_x(j)) * f.pointwise_error[n - 1 - j];
  }
  return h;
}

void SparseCoefficients::validate() const {
  if (k.size() != b.size()) throw DomainError("SparseCoefficients: k and b differ in length");
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 1 || k[i] > truncation) throw DomainError("SparseCoefficients: index outside 1..truncation");
    if (i > 0 && k[i] <= k[i - 1]) throw DomainError("SparseCoefficients: indices must increase");
  }
}

SparseCoefficients sparse_from_dense(const std::vector<double>& dense) {
  SparseCoefficients s;
  for (std::size_t n = 1; n < dense.size(); ++n) {
    if (dense[n] != 0.0) {
      s.k.push_back(static_cast<arith::Int>(n));
      s.b.push_back(dense[n]);
    }
  }
  s.truncation = dense.empty() ? 0 : static_cast<arith::Int>(dense.size() - 1);
  return s;
}

BoundaryFunction boundary_route_series(const SparseCoefficients& coeffs, const SeriesAtom& atom, double epsilon,
                                       const mellin::GridFunction& grid, double tol) {
  coeffs.validate();
  grid.validate();
  if (!is_symmetric(grid)) throw DomainError("boundary_route_series: grid is not symmetric about x = 1");
  mellin::GridFunction f = grid;
  std::vector<double> abs_sum(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    double sum = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < coeffs.k.size(); ++i) {
      const double y = double(coeffs.k[i]) * x;
      if (y > atom.cutoff) break;
      const double t = coeffs.b[i] * atom.eval(y);
      sum += t;
      mag += std::abs(t);
    }
    f.values[j] = sum;
    abs_sum[j] = mag;
  }

  // Omitted terms k > truncation: bounded by the count of remaining k below the cutoff
  // times the largest |b| times the atom at the first omitted argument.
  double tail = 0.0;
  const double x0 = grid.x(0);
  const double y_next = double(coeffs.truncation + 1) * x0;
  if (y_next <= atom.cutoff) {
    double bmax = 0.0;
    for (double b : coeffs.b) bmax = std::max(bmax, std::abs(b));
    tail = std::abs(atom.eval(y_next)) * bmax * (atom.cutoff / x0 - double(coeffs.truncation));
    const double scale = max_abs(f);
    if (tail > tol * scale) {
      const auto need = static_cast<long long>(std::ceil(atom.cutoff / x0));
      throw TailError("boundary_route_series: truncation at k = " + std::to_string(coeffs.truncation) +
                          " leaves a tail of " + csv::fmt(tail) + "; need k up to about " + std::to_string(need),
                      tail);
    }
  }

  BoundaryFunction h;
  h.grid = reflect(f, epsilon);
  h.epsilon = epsilon;
  h.route = Route::series;
  h.source = atom.name + " series, k <= " + std::to_string(coeffs.truncation);
  h.error_estimate = 2.0 * tail;
  // atom error plus rounding in both halves of h = f - eps x^{-1} f(1/x)
  const std::size_t n = grid.size();
  const double rel = atom.rel_error + 16 * std::numeric_limits<double>::epsilon();
  h.pointwise_error.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    h.pointwise_error[j] = 2.0 * tail + rel * (abs_sum[j] + std::exp(-grid.log_x(j)) * abs_sum[n - 1 - j]);
  }
  return h;
}

double kappa_eval(double x) {
  if (!(x > 0.0)) throw DomainError("kappa_eval: x must be positive");
  double sum = 0.0;
  for (std::uint64_t n = 1;; ++n) {
    const double arg = 2 * kPi * double(n) * x;
    if (arg > kBesselUnderflowArg) break;
    sum += specfun::divisor_sigma(0.0, n) * specfun::bessel_k(0.0, arg).value;
  }
  return 4.0 * sum;
}

SeriesAtom kappa_atom() { return {kappa_eval, kBesselUnderflowArg / (2 * kPi), "kappa"}; }

double zc_kappa_direct(double y) {
  if (!(y > 0.0)) throw DomainError("zc_kappa_direct: y must be positive");
  const double arg0 = 2 * kPi * y;
  if (arg0 > kBesselUnderflowArg) return 0.0;
  const double U = std::log(kBesselUnderflowArg / arg0);
  // Scaled by e^{arg0} so that the quadrature works on O(1) values for large y.
  auto f = [arg0](double u) {
    const double z = arg0 * std::exp(u);
    return specfun::bessel_k_scaled(0.0, z) * std::exp(arg0 - z) * u * std::exp(0.5 * u);
  };
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, U, 15, 1e-12, &err);
  return 16 * kPi * kPi * v * std::exp(-arg0);
}

SeriesAtom zc_kappa_atom(double y_min) {
  if (!(y_min > 0.0)) throw DomainError("zc_kappa_atom: y_min must be positive");
  // log kappa is smooth in log y (it behaves like -2 pi y for large y), so a
  // degree-7 Lagrange interpolant on a 1/64 step is accurate to rounding.
  constexpr double h = 1.0 / 64;
  constexpr int half = 4;
  const double cutoff = 600.0 / (2 * kPi);
  const double t0 = std::log(y_min) - half * h;
  const auto n = static_cast<std::size_t>(std::ceil((std::log(cutoff) - t0) / h)) + 2 * half;
  auto table = std::make_shared<std::vector<double>>(n);
  for (std::size_t i = 0; i < n; ++i) (*table)[i] = std::log(zc_kappa_direct(std::exp(t0 + double(i) * h)));

  auto eval = [table, t0, y_min, cutoff](double y) {
    if (y > cutoff) return 0.0;
    if (y < y_min) throw DomainError("zc_kappa_atom: argument below the tabulated range");
    const double p = (std::log(y) - t0) / h;
    const auto i0 = std::clamp<long>(static_cast<long>(std::floor(p)) - (half - 1), 0,
                                     static_cast<long>(table->size()) - 2 * half);
    double acc = 0.0;
    for (int a = 0; a < 2 * half; ++a) {
      double w = 1.0;
      for (int b = 0; b < 2 * half; ++b) {
        if (b != a) w *= (p - double(i0 + b)) / double(a - b);
      }
      acc += w * (*table)[static_cast<std::size_t>(i0 + a)];
    }
    return std::exp(acc);
  };
  return {eval, cutoff, "Z_C gamma-part kappa", 1e-11};
}

SparseCoefficients zc_series_coefficients(const arith::EllipticCurveData& curve, std::size_t n_coef) {
  if (n_coef < 1) throw DomainError("zc_series_coefficients: need at least one coefficient");
  const auto c2 = arith::dirichlet_square(arith::zeta_C_coefficients(curve, n_coef));
  std::vector<double> sigma0(n_coef + 1, 0.0);
  for (std::size_t d = 1; d <= n_coef; ++d) {
    for (std::size_t m = d; m <= n_coef; m += d) sigma0[m] += 1.0;
  }
  std::vector<double> B(n_coef + 1, 0.0);
  for (std::size_t j = 1; j * j <= n_coef; ++j) {
    if (c2[j] == 0) continue;
    for (std::size_t n = 1; n * j * j <= n_coef; ++n) B[n * j * j] += sigma0[n] * double(c2[j]);
  }
  const auto scale = static_cast<arith::Int>(curve.conductor * curve.conductor);
  SparseCoefficients s;
  for (std::size_t m = 1; m <= n_coef; ++m) {
    if (B[m] == 0.0) continue;
    s.k.push_back(scale * static_cast<arith::Int>(m));
    s.b.push_back(B[m]);
  }
  s.truncation = scale * static_cast<arith::Int>(n_coef + 1) - 1;
  return s;
}

namespace {

std::vector<cplx> circle_coeffs(const mellin::Evaluator& F, cplx lambda, int max_m, double r, int nodes,
                                double& fmax) {
  std::vector<cplx> C(static_cast<std::size_t>(max_m), 0.0);
  fmax = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const cplx w = std::polar(1.0, 2 * kPi * (k + 0.5) / nodes);
    const cplx v = F(lambda + r * w);
    fmax = std::max(fmax, std::abs(v));
    cplx p = r * w;
    for (int m = 1; m <= max_m; ++m) {
      C[static_cast<std::size_t>(m - 1)] += v * p;
      p *= r * w;
    }
  }
  for (auto& c : C) c /= double(nodes);
  return C;
}

}  // namespace

lfunc::PoleDatum principal_part(const mellin::Evaluator& F, cplx lambda, int max_m, double radius, double agree_tol,
                                int nodes) {
  if (max_m < 1 || !(radius > 0.0) || nodes < 8) throw DomainError("principal_part: invalid parameters");
  double fa = 0.0, fb = 0.0;
  const auto A = circle_coeffs(F, lambda, max_m, radius, nodes, fa);
  const auto B = circle_coeffs(F, lambda, max_m, 0.5 * radius, nodes, fb);
  double cmax = 0.0;
  for (const auto& c : A) cmax = std::max(cmax, std::abs(c));
  for (int m = 0; m < max_m; ++m) {
    const double d = std::abs(A[m] - B[m]);
    if (d > agree_tol * std::max(cmax, 1e-300)) {
      throw DomainError("principal_part: radii " + csv::fmt(radius) + " and " + csv::fmt(0.5 * radius) +
                        " disagree at m = " + std::to_string(m + 1) + " (" + csv::fmt(d) +
                        "); the circle encloses another singularity");
    }
  }
  lfunc::PoleDatum p;
  p.location = lambda;
  // The larger circle is better conditioned; the smaller one only confirms it.
  p.principal_coeffs = A;
  p.multiplicity = 0;
  double rm = 1.0;
  for (int m = 1; m <= max_m; ++m) {
    rm *= radius;
    if (std::abs(A[m - 1]) > 1e-10 * fa * rm) p.multiplicity = m;
  }
  p.principal_coeffs.resize(static_cast<std::size_t>(p.multiplicity));
  return p;
}

std::vector<lfunc::PoleDatum> spectral_poles(const lfunc::ProductEvaluator& product, const ZeroList& zeros,
                                             double radius) {
  zeros.validate();
  const mellin::Evaluator F = [&product](cplx s) { return product(s); };
  std::vector<lfunc::PoleDatum> out;
  for (const auto& p : product.poles()) {
    auto d = principal_part(F, p.location, p.multiplicity, radius);
    if (d.multiplicity != p.multiplicity) {
      throw PrecisionNotAchieved("spectral_poles: declared order " + std::to_string(p.multiplicity) + " at " +
                                 csv::fmt(p.location.real()) + " but found " + std::to_string(d.multiplicity));
    }
    out.push_back(std::move(d));
  }
  for (const auto& f : product.factors()) {
    if (f.power >= 0) continue;
    for (double g : zeros.ordinates) {
      const cplx rho(f.series->fe_center, g);
      const cplx lambda = (rho - f.shift) / f.scale;
      out.push_back(principal_part(F, lambda, -f.power, radius));
    }
  }
  return out;
}

BoundaryFunction boundary_route_spectral(const std::vector<lfunc::PoleDatum>& poles, double T,
                                         const mellin::GridFunction& grid) {
  grid.validate();
  for (const auto& p : poles) {
    if (p.principal_coeffs.empty() || int(p.principal_coeffs.size()) < p.multiplicity) {
      throw DomainError("boundary_route_spectral: missing principal part at " + csv::fmt(p.location.real()) + "+" +
                        csv::fmt(p.location.imag()) + "i");
    }
  }
  BoundaryFunction h;
  h.grid = grid;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double L = grid.log_x(j);
    double sum = 0.0;
    for (const auto& p : poles) {
      const double im = p.location.imag();
      if (std::abs(im) > T || im < 0.0) continue;
      // residue of F(s) x^{-s}: x^{-lambda} sum_m C_{m+1} (-log x)^m / m!
      cplx acc = 0.0, pw = 1.0;
      double fact = 1.0;
      for (std::size_t m = 0; m < p.principal_coeffs.size(); ++m) {
        if (m > 0) {
          pw *= -L;
          fact *= double(m);
        }
        acc += p.principal_coeffs[m] * pw / fact;
      }
      const cplx term = std::exp(-p.location * L) * acc;
      sum += im > 0.0 ? 2.0 * term.real() : term.real();
    }
    h.grid.values[j] = sum;
  }
  h.route = Route::spectral;
  h.source = "residue sum over " + std::to_string(poles.size()) + " poles, |Im| <= " + csv::fmt(T);
  return h;
}

OmegaPhi omega_phi_split(const mellin::GridFunction& f, double epsilon, cplx s, double tol) {
  f.validate();
  if (!is_symmetric(f)) throw DomainError("omega_phi_split: grid is not symmetric about x = 1");
  const std::size_t n = f.size();
  const std::size_t c = (n - 1) / 2;
  if (c < 3) throw DomainError("omega_phi_split: grid too short");
  const auto h = reflect(f, epsilon);
  const double lr = f.log_step();
  // Gregory end weights at x = 1; the far ends are covered by the tail check.
  auto weight = [](std::size_t dist) {
    static constexpr double w[3] = {3.0 / 8, 7.0 / 6, 23.0 / 24};
    return dist < 3 ? w[dist] : 1.0;
  };
  OmegaPhi out;
  for (std::size_t j = c; j < n; ++j) {
    const double L = f.log_x(j);
    out.phi += weight(j - c) * f.values[j] * (std::exp(s * L) + epsilon * std::exp((1.0 - s) * L));
  }
  for (std::size_t j = 0; j <= c; ++j) {
    out.omega += weight(c - j) * h.values[j] * std::exp(s * f.log_x(j));
  }
  out.phi *= lr;
  out.omega *= lr;
  const double L1 = f.log_x(n - 1);
  const double sr = s.real();
  out.phi_tail = std::abs(f.values[n - 1]) * (std::exp(sr * L1) + std::exp((1.0 - sr) * L1));
  out.omega_tail = std::abs(h.values[0]) * std::exp(sr * f.log_x(0));
  if (out.phi_tail > tol) {
    throw TailError("omega_phi_split: right end of the grid contributes " + csv::fmt(out.phi_tail), out.phi_tail);
  }
  return out;
}

namespace {

template <class Op>
void over_range(const BoundaryFunction& a, const BoundaryFunction& b, double x_lo, double x_hi, Op op) {
  if (!mellin::compatible(a.grid, b.grid) || std::abs(a.grid.x0 - b.grid.x0) > 1e-12 * a.grid.x0 ||
      a.grid.size() != b.grid.size()) {
    throw DomainError("boundary comparison: grids differ");
  }
  const double llo = std::log(x_lo) - 1e-12, lhi = std::log(x_hi) + 1e-12;
  for (std::size_t j = 0; j < a.grid.size(); ++j) {
    const double L = a.grid.log_x(j);
    if (L < llo || L > lhi) continue;
    op(a.grid.values[j], b.grid.values[j]);
  }
}

}  // namespace

double sup_relative_deviation(const BoundaryFunction& a, const BoundaryFunction& b, double x_lo, double x_hi) {
  double num = 0.0, den = 0.0;
  over_range(a, b, x_lo, x_hi, [&](cplx u, cplx v) {
    num = std::max(num, std::abs(u - v));
    den = std::max(den, std::abs(u));
  });
  if (num == 0.0) return 0.0;
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

double l2_deviation(const BoundaryFunction& a, const BoundaryFunction& b, double x_lo, double x_hi) {
  double acc = 0.0;
  over_range(a, b, x_lo, x_hi, [&](cplx u, cplx v) { acc += std::norm(u - v); });
  return std::sqrt(acc * a.grid.log_step());
}

void write_csv(std::ostream& os, const BoundaryFunction& h) {
  os << "x,h_re,h_im,route\n";
  const char* r = route_name(h.route);
  for (std::size_t j = 0; j < h.grid.size(); ++j) {
    os << csv::fmt(h.grid.x(j)) << ',' << csv::fmt(h.grid.values[j].real()) << ','
       << csv::fmt(h.grid.values[j].imag()) << ',' << r << '\n';
  }
}

}  // namespace zmp::boundary
