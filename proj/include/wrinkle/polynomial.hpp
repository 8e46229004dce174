#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "wrinkle/rational.hpp"

namespace wrinkle {

/// The nine fixed polynomial variables. Coordinates of R^4 come first, then
/// the model parameters, which are ordinary variables that evaluation binds.
enum class Var : std::uint8_t { t = 0, x, y, z, s, eps, k, a, b };

inline constexpr std::size_t kNumVars = 9;
inline constexpr std::size_t kNumCoords = 4;
inline constexpr std::array<Var, kNumCoords> kCoords{Var::t, Var::x, Var::y, Var::z};

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);

using Exponents = std::array<std::uint8_t, kNumVars>;
using Assignment = std::map<Var, Rational>;
using NumericPoint = std::array<double, kNumVars>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT: implicit lift of scalars
  Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT
  Polynomial(int constant) : Polynomial(Rational(constant)) {}   // NOLINT

  static Polynomial variable(Var v);
  static Polynomial monomial(const Rational& coefficient, const Exponents& exponents);

  /// Parses expressions such as "x^3 - 3*x*t + y^2 - z^2" or "3*eps*(x^2+t^2-s)".
  static Polynomial parse(std::string_view text);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& exponents) const;
  std::set<Var> variables() const;
  int degree() const;
  int degree_in(Var v) const;

  Polynomial derivative(Var v) const;
  Polynomial pow(unsigned exponent) const;

  /// Exact evaluation; every occurring variable must be bound.
  Rational evaluate(const Assignment& assignment) const;
  /// Partial substitution of the bound variables; unbound ones survive.
  Polynomial substitute(const Assignment& assignment) const;
  /// Substitutes a polynomial for one variable.
  Polynomial compose(Var v, const Polynomial& replacement) const;
  double evaluate_numeric(const NumericPoint& point) const;

  std::string to_string() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator-(const Polynomial& p);
  friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) { return lhs.terms_ == rhs.terms_; }
  friend bool operator!=(const Polynomial& lhs, const Polynomial& rhs) { return !(lhs == rhs); }

 private:
  void add_term(const Exponents& exponents, const Rational& coefficient);

  TermMap terms_;
};

/// Shorthand generators used throughout the catalog.
namespace vars {
inline const Polynomial& t() { static const Polynomial p = Polynomial::variable(Var::t); return p; }
inline const Polynomial& x() { static const Polynomial p = Polynomial::variable(Var::x); return p; }
inline const Polynomial& y() { static const Polynomial p = Polynomial::variable(Var::y); return p; }
inline const Polynomial& z() { static const Polynomial p = Polynomial::variable(Var::z); return p; }
inline const Polynomial& s() { static const Polynomial p = Polynomial::variable(Var::s); return p; }
inline const Polynomial& eps() { static const Polynomial p = Polynomial::variable(Var::eps); return p; }
inline const Polynomial& k() { static const Polynomial p = Polynomial::variable(Var::k); return p; }
}  // namespace vars

}  // namespace wrinkle
