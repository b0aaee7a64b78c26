#include "zmp/arith.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace zmp::arith {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mod(Int a, u64 p) {
  const Int r = a % static_cast<Int>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<Int>(p) : r);
}

std::set<u64> prime_divisors(u64 n) {
  std::set<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      out.insert(d);
      n /= d;
    }
  }
  if (n > 1) out.insert(n);
  return out;
}

// Smallest prime factor table for 0..N.
std::vector<u64> spf_table(std::size_t N) {
  std::vector<u64> spf(N + 1, 0);
  for (u64 i = 2; i <= N; ++i) {
    if (spf[i] != 0) continue;
    for (u64 j = i; j <= N; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

// Builds a multiplicative sequence from its prime-power values.
// local(p, kmax) returns {1, f(p), f(p^2), ..., f(p^kmax)}.
template <class Local>
DirichletCoefficients multiplicative(std::size_t N, Local local, std::string description) {
  if (N < 1) throw DomainError("coefficient length must be >= 1");
  DirichletCoefficients out;
  out.description = std::move(description);
  out.values.assign(N + 1, 0);
  out.values[1] = 1;
  const auto spf = spf_table(N);
  std::vector<std::vector<Int>> powers(N + 1);
  for (u64 n = 2; n <= N; ++n) {
    const u64 p = spf[n];
    if (powers[p].empty()) {
      int kmax = 0;
      for (u128 q = p; q <= N; q *= p) ++kmax;
      powers[p] = local(p, kmax);
    }
    u64 m = n;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    out.values[n] = powers[p][k] * out.values[m];
  }
  return out;
}

const std::vector<Int>& bad_factor(const EllipticCurveData& curve, u64 p) {
  return curve.bad_factors.at(p);
}

}  // namespace

bool GaussianInteger::is_primary() const {
  const auto m4 = [](Int v) { return ((v % 4) + 4) % 4; };
  return (re & 1) != 0 && (im & 1) == 0 && m4(re + im) == 1;
}

__int128 EllipticCurveData::discriminant() const {
  using I = __int128;
  const I b2 = I(a1) * a1 + 4 * I(a2);
  const I b4 = 2 * I(a4) + I(a1) * a3;
  const I b6 = I(a3) * a3 + 4 * I(a6);
  const I b8 = I(a1) * a1 * a6 + 4 * I(a2) * a6 - I(a1) * a3 * a4 + I(a2) * a3 * a3 - I(a4) * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

void EllipticCurveData::validate() const {
  if (discriminant() == 0) throw DomainError("curve " + label + ": singular Weierstrass equation");
  if (conductor < 1) throw DomainError("curve " + label + ": conductor must be positive");
  const auto primes = prime_divisors(conductor);
  if (primes.size() != bad_factors.size()) {
    throw DomainError("curve " + label + ": bad_factors must list exactly the primes dividing the conductor");
  }
  for (const auto& [p, poly] : bad_factors) {
    if (!primes.count(p)) {
      throw DomainError("curve " + label + ": bad factor at " + std::to_string(p) + " does not divide conductor");
    }
    if (poly.empty() || poly.size() > 2 || poly[0] != 1) {
      throw DomainError("curve " + label + ": bad factor must be 1 or 1 + c X");
    }
  }
}

EllipticCurveData EllipticCurveData::curve_32a() {
  EllipticCurveData c;
  c.a4 = -1;
  c.conductor = 32;
  c.bad_factors = {{2, {1}}};
  c.label = "32a";
  return c;
}

EllipticCurveData EllipticCurveData::curve_11a() {
  EllipticCurveData c;
  c.a2 = -1;
  c.a3 = 1;
  c.a4 = -10;
  c.a6 = -20;
  c.conductor = 11;
  c.bad_factors = {{11, {1, -1}}};
  c.label = "11a";
  return c;
}

EllipticCurveData EllipticCurveData::preset(const std::string& label) {
  if (label == "32a") return curve_32a();
  if (label == "11a") return curve_11a();
  throw ConfigError("unknown curve preset '" + label + "'");
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

Int count_points_ap(const EllipticCurveData& curve, u64 p, u64 bound) {
  if (p > bound) {
    throw BoundExceededError("count_points_ap: p = " + std::to_string(p) + " exceeds bound " +
                             std::to_string(bound));
  }
  if (!is_prime(p)) throw DomainError("count_points_ap: " + std::to_string(p) + " is not prime");
  if (curve.conductor % p == 0) {
    throw BadPrimeError("count_points_ap: p = " + std::to_string(p) + " is a bad prime of " +
                        curve.label);
  }

  if (p == 2) {
    Int count = 1;
    for (Int x = 0; x < 2; ++x) {
      for (Int y = 0; y < 2; ++y) {
        const Int lhs = y * y + curve.a1 * x * y + curve.a3 * y;
        const Int rhs = x * x * x + curve.a2 * x * x + curve.a4 * x + curve.a6;
        if (mod(lhs - rhs, 2) == 0) ++count;
      }
    }
    return static_cast<Int>(p) + 1 - count;
  }

  // Complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
  const u64 b2 = mod(curve.a1 * curve.a1 + 4 * curve.a2, p);
  const u64 b4 = mod(2 * curve.a4 + curve.a1 * curve.a3, p);
  const u64 b6 = mod(curve.a3 * curve.a3 + 4 * curve.a6, p);
  const u64 c2b4 = (2 * b4) % p;

  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (u64 y = 1; y <= p / 2; ++y) chi[static_cast<u64>((u128(y) * y) % p)] = 1;

  Int sum = 0;
  for (u64 x = 0; x < p; ++x) {
    u128 r = 4;
    r = (r * x + b2) % p;
    r = (r * x + c2b4) % p;
    r = (r * x + b6) % p;
    sum += chi[static_cast<u64>(r)];
  }
  return -sum;
}

DirichletCoefficients l_coefficients(const EllipticCurveData& curve, std::size_t N) {
  curve.validate();
  auto local = [&](u64 p, int kmax) {
    std::vector<Int> v(kmax + 1);
    v[0] = 1;
    if (curve.conductor % p == 0) {
      const auto& poly = bad_factor(curve, p);
      const Int ap = poly.size() > 1 ? -poly[1] : 0;
      for (int k = 1; k <= kmax; ++k) v[k] = v[k - 1] * ap;
    } else {
      const Int ap = count_points_ap(curve, p, std::max<u64>(kDefaultPointCountBound, p));
      const Int pp = static_cast<Int>(p);
      if (kmax >= 1) v[1] = ap;
      for (int k = 2; k <= kmax; ++k) v[k] = ap * v[k - 1] - pp * v[k - 2];
    }
    return v;
  };
  return multiplicative(N, local, "L(" + curve.label + ",s)");
}

DirichletCoefficients zeta_C_coefficients(const EllipticCurveData& curve, std::size_t N) {
  curve.validate();
  auto local = [&](u64 p, int kmax) {
    const Int pp = static_cast<Int>(p);
    // numerator coefficients of 1/L_p
    std::vector<Int> num = {1, 0, 0};
    if (curve.conductor % p == 0) {
      const auto& poly = bad_factor(curve, p);
      if (poly.size() > 1) num[1] = poly[1];
    } else {
      num[1] = -count_points_ap(curve, p, std::max<u64>(kDefaultPointCountBound, p));
      num[2] = pp;
    }
    // 1/((1-X)(1-pX)) = sum_j (1 + p + ... + p^j) X^j
    std::vector<Int> d(kmax + 1);
    Int pj = 1;
    for (int j = 0; j <= kmax; ++j) {
      d[j] = (j ? d[j - 1] : 0) + pj;
      pj *= pp;
    }
    std::vector<Int> v(kmax + 1, 0);
    for (int k = 0; k <= kmax; ++k) {
      for (int i = 0; i <= 2 && i <= k; ++i) v[k] += num[i] * d[k - i];
    }
    return v;
  };
  return multiplicative(N, local, "zeta(" + curve.label + ",s)");
}

DirichletCoefficients dirichlet_convolve(const DirichletCoefficients& f, const DirichletCoefficients& g) {
  const std::size_t N = std::min(f.size(), g.size());
  DirichletCoefficients out;
  out.description = "(" + f.description + ")*(" + g.description + ")";
  out.values.assign(N + 1, 0);
  for (std::size_t d = 1; d <= N; ++d) {
    if (f.values[d] == 0) continue;
    for (std::size_t m = 1; d * m <= N; ++m) out.values[d * m] += f.values[d] * g.values[m];
  }
  return out;
}

DirichletCoefficients dirichlet_square(const DirichletCoefficients& coeffs) {
  auto out = dirichlet_convolve(coeffs, coeffs);
  out.description = "(" + coeffs.description + ")^2";
  return out;
}

Int hecke_ap(u64 p) {
  if (p % 4 != 1 || !is_prime(p)) {
    throw DomainError("hecke_ap: p = " + std::to_string(p) + " must be a prime = 1 mod 4");
  }
  for (Int a = 1; a * a < static_cast<Int>(p); a += 2) {
    const Int b2 = static_cast<Int>(p) - a * a;
    const Int b = static_cast<Int>(std::llround(std::sqrt(static_cast<double>(b2))));
    if (b * b != b2) continue;
    for (GaussianInteger g : {GaussianInteger{a, b}, {a, -b}, {-a, b}, {-a, -b}}) {
      if (g.is_primary()) return 2 * g.re;
    }
  }
  throw DomainError("hecke_ap: no primary generator found for p = " + std::to_string(p));
}

DirichletCoefficients hecke_l_coefficients(std::size_t N) {
  if (N < 1) throw DomainError("coefficient length must be >= 1");
  DirichletCoefficients out;
  out.description = "L(psi_32a,s)";
  out.values.assign(N + 1, 0);
  const Int R = static_cast<Int>(std::sqrt(static_cast<double>(N))) + 1;
  // Each ideal coprime to (1+i) has exactly one primary generator; psi sums to
  // a real number because conjugate ideals pair up.
  for (Int a = -R; a <= R; ++a) {
    for (Int b = -R; b <= R; ++b) {
      const GaussianInteger g{a, b};
      const Int n = g.norm();
      if (n < 1 || n > static_cast<Int>(N) || !g.is_primary()) continue;
      out.values[n] += g.re;
    }
  }
  return out;
}

}  // namespace zmp::arith
