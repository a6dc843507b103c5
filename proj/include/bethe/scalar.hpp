#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bethe {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Raised for malformed user input (bad JSON, inconsistent sizes).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a mathematical precondition of an operation does not hold,
/// e.g. a point lying on the arrangement or an arrangement without a vertex.
class PreconditionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for inputs outside the supported scope (e.g. higher-dimensional
/// characters, non-sl2 module computations).
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", "p" or "-p/q". Whitespace is not accepted.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are written as "p/1".
std::string format_rational(const Rational& value);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static Rational from_rational(const Rational& x) { return x; }
  static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
  static const char* name() { return "exact"; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex from_rational(const Rational& x) { return {x.get_d(), 0.0}; }
  static Complex to_complex(const Complex& x) { return x; }
  static const char* name() { return "float"; }
};

template <class T>
T from_rational(const Rational& x) {
  return ScalarTraits<T>::from_rational(x);
}

template <class T>
Complex to_complex(const T& x) {
  return ScalarTraits<T>::to_complex(x);
}

template <class T>
double magnitude(const T& x) {
  return ScalarTraits<T>::magnitude(x);
}

}  // namespace bethe
