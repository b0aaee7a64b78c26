#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zmp/common.hpp"

namespace zmp::arith {

using Int = std::int64_t;

class BadPrimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class BoundExceededError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
///
/// bad_factors maps each prime p | N to the coefficients {1, c1} of the local
/// polynomial P(X) with L_p(s) = 1/P(p^{-s}); {1} means the factor is trivial.
struct EllipticCurveData {
  Int a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  std::uint64_t conductor = 1;
  std::map<std::uint64_t, std::vector<Int>> bad_factors;
  std::string label;

  /// Throws DomainError on zero discriminant or inconsistent bad_factors.
  void validate() const;
  __int128 discriminant() const;

  static EllipticCurveData curve_32a();  // y^2 = x^3 - x
  static EllipticCurveData curve_11a();  // y^2 + y = x^3 - x^2 - 10x - 20
  /// Looks up "32a" / "11a". Throws ConfigError otherwise.
  static EllipticCurveData preset(const std::string& label);
};

/// values[n] for n = 1..N; values[0] is unused and kept at 0.
struct DirichletCoefficients {
  std::vector<Int> values;
  std::string description;

  std::size_t size() const { return values.empty() ? 0 : values.size() - 1; }
  Int operator[](std::size_t n) const { return values[n]; }
};

struct GaussianInteger {
  Int re = 0;
  Int im = 0;

  Int norm() const { return re * re + im * im; }
  /// a odd, b even, a + b = 1 mod 4.
  bool is_primary() const;
  friend GaussianInteger operator*(GaussianInteger x, GaussianInteger y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend bool operator==(GaussianInteger, GaussianInteger) = default;
};

inline constexpr std::uint64_t kDefaultPointCountBound = 1'000'000;

bool is_prime(std::uint64_t n);
/// Primes <= n, by a sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// a_p = p + 1 - #E(F_p) for a prime p of good reduction.
Int count_points_ap(const EllipticCurveData& curve, std::uint64_t p,
                    std::uint64_t bound = kDefaultPointCountBound);

/// Dirichlet coefficients of L(E, s), n <= N.
DirichletCoefficients l_coefficients(const EllipticCurveData& curve, std::size_t N);

/// Coefficients of zeta(C,s) = zeta(s) zeta(s-1) / L(C,s), n <= N.
DirichletCoefficients zeta_C_coefficients(const EllipticCurveData& curve, std::size_t N);

DirichletCoefficients dirichlet_convolve(const DirichletCoefficients& f,
                                         const DirichletCoefficients& g);
DirichletCoefficients dirichlet_square(const DirichletCoefficients& coeffs);

/// 2a where p = a^2 + b^2 with a + bi primary. Requires p prime, p = 1 mod 4.
Int hecke_ap(std::uint64_t p);

/// b_n = sum of psi over ideals of Z[i] of norm n, psi((alpha)) = alpha for
/// primary alpha and zero on ideals divisible by (1 + i).
DirichletCoefficients hecke_l_coefficients(std::size_t N);

}  // namespace zmp::arith
