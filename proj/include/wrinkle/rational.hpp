#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>

namespace wrinkle {

/// Arbitrary-precision rational; every exact certificate is computed in this type.
using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal like "-0.25" into a canonical rational.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" (or "p" when q = 1) form used across JSON and the CLI.
std::string format_rational(const Rational& value);

/// Exact conversion of a finite double (binary fraction) into a rational.
Rational rational_from_double(double value);

/// n/d in canonical form (mpq_class(n, d) alone does not reduce).
inline Rational ratio(long numerator, long denominator) {
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace wrinkle

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
