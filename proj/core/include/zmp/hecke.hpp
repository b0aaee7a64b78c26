#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zmp/arith.hpp"
#include "zmp/common.hpp"

namespace zmp::hecke {

enum class Field { rationals, gaussian };

/// Ideal character in ideal-theoretic form. On Q(i) an ideal is given by any generator;
/// psi((alpha)) = alpha' ^ infinity_type with alpha' the primary associate, and zero on
/// ideals divisible by (1 + i).
struct HeckeCharacterData {
  Field field = Field::rationals;
  std::string conductor;
  int infinity_type = 0;

  static HeckeCharacterData trivial();
  /// The character of y^2 = x^3 - x: infinity type 1, conductor supported at (1 + i).
  static HeckeCharacterData curve_32a();

  /// Value on the ideal generated by alpha (Gaussian field only).
  arith::GaussianInteger operator()(arith::GaussianInteger alpha) const;
};

/// The associate u alpha (u a unit) that is primary. Requires N(alpha) odd.
arith::GaussianInteger primary_associate(arith::GaussianInteger alpha);

/// Z(x) = sum_{n != 0} exp(-pi n^2 x^2) for the trivial character and the test function
/// exp(-pi x^2) (x) 1_{Z_p}. Its Mellin transform is psi_tate(s) zeta(s).
double tate_zeta_integral(double x, const HeckeCharacterData& chi);

/// Gamma_R(s) = pi^{-s/2} Gamma(s/2).
cplx psi_tate(cplx s);

struct DecayWitness {
  int N = 0;
  double C = 0.0;          // fitted on the coarse sample
  double worst = 0.0;      // max |Z(x)| x^N / C on the fine sample (0 if C = 0)
  double worst_x = 0.0;
};

/// For each N fits C = r^N max |Z(x)| x^N on x = r^j in [1, x_fit] and checks
/// |Z(x)| <= C x^{-N} on a sample four times finer over [1, x_fit^2]. The factor r^N
/// covers a monotone |Z| between coarse nodes. Throws BoundViolated on the first failure.
std::vector<DecayWitness> zeta_integral_decay_check(const std::function<double(double)>& Z,
                                                    const std::vector<int>& exponents, double x_fit = 16.0,
                                                    double ratio = 1.125);

struct CmMismatch {
  std::size_t n = 0;
  arith::Int hecke = 0;
  arith::Int curve = 0;
};

struct CmReport {
  std::size_t N = 0;
  std::size_t mismatches = 0;
  std::optional<CmMismatch> first;
  bool passed() const { return mismatches == 0; }
};

/// hecke_l_coefficients(N) against l_coefficients(32a, N), entrywise.
CmReport cm_decomposition_check(std::size_t N);

void write_report(std::ostream& os, const CmReport& r);

}  // namespace zmp::hecke
