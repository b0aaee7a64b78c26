#include "zmp/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "zmp/csv.hpp"
#include "zmp/specfun.hpp"

namespace zmp::hecke {

HeckeCharacterData HeckeCharacterData::trivial() { return {Field::rationals, "(1)", 0}; }

HeckeCharacterData HeckeCharacterData::curve_32a() { return {Field::gaussian, "(1+i)^k", 1}; }

arith::GaussianInteger primary_associate(arith::GaussianInteger alpha) {
  if (alpha.norm() % 2 == 0) throw DomainError("primary_associate: generator has even norm");
  const arith::GaussianInteger units[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto u : units) {
    const auto g = u * alpha;
    if (g.is_primary()) return g;
  }
  throw DomainError("primary_associate: no primary associate");
}

arith::GaussianInteger HeckeCharacterData::operator()(arith::GaussianInteger alpha) const {
  if (field != Field::gaussian) throw DomainError("HeckeCharacterData: Gaussian generator for a character over Q");
  if (alpha.norm() == 0) throw DomainError("HeckeCharacterData: zero ideal");
  if (alpha.norm() % 2 == 0) return {0, 0};
  const auto p = primary_associate(alpha);
  arith::GaussianInteger v{1, 0};
  for (int k = 0; k < infinity_type; ++k) v = v * p;
  return v;
}

double tate_zeta_integral(double x, const HeckeCharacterData& chi) {
  if (chi.field != Field::rationals || chi.infinity_type != 0) {
    throw DomainError("tate_zeta_integral: only the trivial character over Q is realized");
  }
  if (!(x > 0.0)) throw DomainError("tate_zeta_integral: x must be positive");
  // For small x the theta relation sum_n e^{-pi n^2 x^2} = x^{-1} sum_n e^{-pi n^2 / x^2}
  // converges faster.
  const double t = x * x;
  if (x < 1.0) {
    double s = 0.0;
    for (int n = 1;; ++n) {
      const double term = std::exp(-kPi * n * n / t);
      s += term;
      if (term < 1e-17 * (1.0 + 2 * s)) break;
    }
    return (1.0 + 2 * s) / x - 1.0;
  }
  double s = 0.0;
  for (int n = 1;; ++n) {
    const double term = std::exp(-kPi * n * n * t);
    s += term;
    if (term <= 1e-17 * s || term == 0.0) break;
  }
  return 2 * s;
}

cplx psi_tate(cplx s) { return specfun::gamma_r(s); }

std::vector<DecayWitness> zeta_integral_decay_check(const std::function<double(double)>& Z,
                                                    const std::vector<int>& exponents, double x_fit, double ratio) {
  if (!(x_fit > 1.0) || !(ratio > 1.0)) throw DomainError("zeta_integral_decay_check: need x_fit > 1, ratio > 1");
  const double lr = std::log(ratio);
  const auto n_fit = static_cast<int>(std::ceil(std::log(x_fit) / lr));
  std::vector<double> coarse, fine;
  for (int j = 0; j <= n_fit; ++j) coarse.push_back(std::abs(Z(std::exp(j * lr))));
  const int n_fine = 8 * n_fit;
  for (int j = 0; j <= n_fine; ++j) fine.push_back(std::abs(Z(std::exp(j * lr / 4))));

  std::vector<DecayWitness> out;
  for (int N : exponents) {
    DecayWitness w;
    w.N = N;
    for (int j = 0; j <= n_fit; ++j) w.C = std::max(w.C, coarse[j] * std::exp(N * j * lr));
    w.C *= std::pow(ratio, N);
    for (int j = 0; j <= n_fine; ++j) {
      const double lx = j * lr / 4;
      const double bound = w.C * std::exp(-N * lx);
      if (fine[j] == 0.0) continue;
      const double q = bound > 0.0 ? fine[j] / bound : std::numeric_limits<double>::infinity();
      if (q > w.worst) {
        w.worst = q;
        w.worst_x = std::exp(lx);
      }
    }
    if (w.worst > 1.0) {
      throw BoundViolated("zeta_integral_decay_check: |Z(x)| <= C x^-" + std::to_string(N) + " fails at x = " +
                              csv::fmt(w.worst_x) + " with C = " + csv::fmt(w.C),
                          w.worst_x);
    }
    out.push_back(w);
  }
  return out;
}

CmReport cm_decomposition_check(std::size_t N) {
  const auto h = arith::hecke_l_coefficients(N);
  const auto l = arith::l_coefficients(arith::EllipticCurveData::curve_32a(), N);
  CmReport r;
  r.N = N;
  for (std::size_t n = 1; n <= N; ++n) {
    if (h.values[n] == l.values[n]) continue;
    ++r.mismatches;
    if (!r.first) r.first = CmMismatch{n, h.values[n], l.values[n]};
  }
  return r;
}

void write_report(std::ostream& os, const CmReport& r) {
  os << "N: " << r.N << '\n' << "mismatches: " << r.mismatches << '\n';
  if (r.first) {
    os << "first_mismatch_n: " << r.first->n << '\n'
       << "first_mismatch_hecke: " << r.first->hecke << '\n'
       << "first_mismatch_curve: " << r.first->curve << '\n';
  }
  os << "passed: " << (r.passed() ? "true" : "false") << '\n';
}

}  // namespace zmp::hecke
