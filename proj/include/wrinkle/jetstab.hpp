#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wrinkle/linalg.hpp"
#include "wrinkle/polynomial.hpp"

namespace wrinkle {

inline constexpr int kJetDim = 7;

/// (t-degree, x-degree) of the quotient basis 1, t, x, tx, x^2, tx^2, x^3.
inline constexpr std::array<std::array<int, 2>, kJetDim> kJetBasis{{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {0, 3}}};

std::string_view jet_basis_name(int index);

using JetVector = Eigen::Matrix<Rational, kJetDim, 1>;

/// Coordinates in the quotient by m(t)^2 + m(t,x)^4. The input may only involve t and x.
JetVector reduce_jet(const Polynomial& p);

enum class Family { Cubic, Quartic1, Quartic2 };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);

/// The family with a and b bound; s, t, x remain free.
Polynomial family_polynomial(Family f, const Rational& a, const Rational& b);

struct TangentSpace {
  RationalMatrix span;  // kJetDim rows, one column per generator
  Eigen::Index rank = 0;
  std::vector<std::string> missing;  // basis directions completing the span, greedy in basis order
};

TangentSpace tangent_space(Family f, const Rational& a, const Rational& b);
bool is_11_stable(Family f, const Rational& a, const Rational& b);

enum class NormalForm { h0, h1, h2, h3 };

std::string_view normal_form_name(NormalForm h);
Polynomial normal_form_polynomial(NormalForm h);

/// The quadratic block, fixed to the indefinite pair for wrinkled fibrations.
inline constexpr std::string_view kQuadraticBlock = "+y^2-z^2";

/// nullopt means NotStable.
std::optional<NormalForm> classify_family(Family f, const Rational& a, const Rational& b);

}  // namespace wrinkle
