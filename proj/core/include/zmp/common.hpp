#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace zmp {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kLogPi = 1.14472988584940017414342735135305871;
inline constexpr double kLogTwoPi = 1.83787706640934548356065947281123527;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Error hierarchy. Every failure raised by the library derives from Error so
// callers (the CLI in particular) can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  PoleError(const std::string& what, int factor_index = -1)
      : Error(what), factor_index_(factor_index) {}
  int factor_index() const { return factor_index_; }

 private:
  int factor_index_;
};

class PrecisionNotAchieved : public Error {
 public:
  using Error::Error;
};

// Tail or truncation contribution exceeds the requested tolerance.
class TailError : public Error {
 public:
  TailError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

// A sampled bound |f(x)| <= C x^{-N} fails at witness().
class BoundViolated : public Error {
 public:
  BoundViolated(const std::string& what, double witness)
      : Error(what), witness_(witness) {}
  double witness() const { return witness_; }

 private:
  double witness_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct PrecisionPolicy {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  long max_terms = 1'000'000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_terms < 1) {
      throw DomainError("PrecisionPolicy: tolerances must be positive and max_terms >= 1");
    }
  }
};

}  // namespace zmp
