#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "wrinkle/errors.hpp"
#include "wrinkle/polynomial.hpp"

namespace wrinkle {

constexpr std::size_t binomial4(std::size_t k) {
  constexpr std::array<std::size_t, 5> table{1, 4, 6, 4, 1};
  return k <= 4 ? table[k] : 0;
}

/// Ordered basis of degree-p forms on R^4 in (t,x,y,z): strictly increasing
/// index tuples in lexicographic order. For p = 2 this is
/// (dt^dx, dt^dy, dt^dz, dx^dy, dx^dz, dy^dz); for p = 3 it is
/// (dt^dx^dy, dt^dx^dz, dt^dy^dz, dx^dy^dz). Every sign in the library is
/// taken relative to this single table.
template <std::size_t P>
struct FormBasis {
  static constexpr std::size_t size = binomial4(P);
  using Index = std::array<std::size_t, P>;

  static constexpr std::array<Index, size> elements() {
    std::array<Index, size> out{};
    std::size_t n = 0;
    Index cur{};
    if constexpr (P == 0) {
      return out;
    } else {
      for (std::size_t i = 0; i < P; ++i) cur[i] = i;
      for (;;) {
        out[n++] = cur;
        std::size_t pos = P;
        while (pos > 0 && cur[pos - 1] == 4 - P + pos - 1) --pos;
        if (pos == 0) break;
        ++cur[pos - 1];
        for (std::size_t j = pos; j < P; ++j) cur[j] = cur[j - 1] + 1;
      }
      return out;
    }
  }

  /// Position of a sorted index tuple in the basis, or size if absent.
  static constexpr std::size_t position(const Index& idx) {
    constexpr auto basis = elements();
    for (std::size_t i = 0; i < size; ++i) {
      if (basis[i] == idx) return i;
    }
    return size;
  }
};

/// A differential p-form on R^4 with polynomial coefficients.
template <std::size_t P>
struct Form {
  static_assert(P <= 4, "forms on R^4 have degree at most 4");
  static constexpr std::size_t degree = P;
  static constexpr std::size_t size = binomial4(P);

  std::array<Polynomial, size> coeffs{};

  Polynomial& operator[](std::size_t i) { return coeffs[i]; }
  const Polynomial& operator[](std::size_t i) const { return coeffs[i]; }

  bool is_zero() const {
    for (const auto& c : coeffs) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  Form substitute(const Assignment& assignment) const {
    Form out;
    for (std::size_t i = 0; i < size; ++i) out[i] = coeffs[i].substitute(assignment);
    return out;
  }

  Form& operator+=(const Form& other) {
    for (std::size_t i = 0; i < size; ++i) coeffs[i] += other[i];
    return *this;
  }
  Form& operator-=(const Form& other) {
    for (std::size_t i = 0; i < size; ++i) coeffs[i] -= other[i];
    return *this;
  }
  friend Form operator+(Form lhs, const Form& rhs) { return lhs += rhs; }
  friend Form operator-(Form lhs, const Form& rhs) { return lhs -= rhs; }
  friend Form operator-(const Form& f) {
    Form out;
    for (std::size_t i = 0; i < size; ++i) out[i] = -f[i];
    return out;
  }
  friend Form operator*(const Polynomial& scalar, const Form& f) {
    Form out;
    for (std::size_t i = 0; i < size; ++i) out[i] = scalar * f[i];
    return out;
  }
  friend bool operator==(const Form& lhs, const Form& rhs) { return lhs.coeffs == rhs.coeffs; }
  friend bool operator!=(const Form& lhs, const Form& rhs) { return !(lhs == rhs); }
};

using ZeroForm = Form<0>;
using OneForm = Form<1>;
using TwoForm = Form<2>;
using ThreeForm = Form<3>;
using FourForm = Form<4>;

namespace basis {
// 2-form slots, fixed once.
inline constexpr std::size_t tx = 0, ty = 1, tz = 2, xy = 3, xz = 4, yz = 5;
// 3-form slots.
inline constexpr std::size_t txy = 0, txz = 1, tyz = 2, xyz = 3;
}  // namespace basis

/// Basis element dx_i ^ dx_j (any order; sign normalised), scaled by coefficient.
TwoForm two_form(std::size_t i, std::size_t j, const Polynomial& coefficient = 1);
OneForm one_form(std::size_t i, const Polynomial& coefficient = 1);

/// df for a scalar polynomial (derivatives in t,x,y,z only).
OneForm differential(const Polynomial& f);

/// d on every degree; d of a 4-form is identically zero on R^4.
template <std::size_t P>
Form<P + 1> exterior_derivative(const Form<P>& f) {
  static_assert(P < 4, "d of a top form vanishes");
  constexpr auto src = FormBasis<P>::elements();
  Form<P + 1> out;
  for (std::size_t n = 0; n < Form<P>::size; ++n) {
    if (f[n].is_zero()) continue;
    for (std::size_t j = 0; j < 4; ++j) {
      // dx_j ^ dx_I : insert j at the front and sort, tracking the sign.
      std::array<std::size_t, P + 1> idx{};
      idx[0] = j;
      bool repeated = false;
      for (std::size_t m = 0; m < P; ++m) {
        idx[m + 1] = src[n][m];
        if (src[n][m] == j) repeated = true;
      }
      if (repeated) continue;
      int sign = 1;
      for (std::size_t m = 0; m < P; ++m) {
        if (idx[m] > idx[m + 1]) {
          std::swap(idx[m], idx[m + 1]);
          sign = -sign;
        }
      }
      const std::size_t pos = FormBasis<P + 1>::position(idx);
      Polynomial partial = f[n].derivative(kCoords[j]);
      if (sign < 0) partial = -partial;
      out[pos] += partial;
    }
  }
  return out;
}

/// Wedge product; the degree overflow case is rejected at compile time for
/// the typed API and at run time for the dynamic one below.
template <std::size_t P, std::size_t Q>
Form<P + Q> wedge(const Form<P>& f, const Form<Q>& g) {
  static_assert(P + Q <= 4, "wedge degree exceeds 4");
  constexpr auto bp = FormBasis<P>::elements();
  constexpr auto bq = FormBasis<Q>::elements();
  Form<P + Q> out;
  for (std::size_t i = 0; i < Form<P>::size; ++i) {
    if (f[i].is_zero()) continue;
    for (std::size_t j = 0; j < Form<Q>::size; ++j) {
      if (g[j].is_zero()) continue;
      std::array<std::size_t, P + Q> idx{};
      for (std::size_t m = 0; m < P; ++m) idx[m] = bp[i][m];
      for (std::size_t m = 0; m < Q; ++m) idx[P + m] = bq[j][m];
      int sign = 1;
      for (std::size_t a = 0; a < P + Q; ++a) {
        for (std::size_t b = 0; b + 1 < P + Q - a; ++b) {
          if (idx[b] > idx[b + 1]) {
            std::swap(idx[b], idx[b + 1]);
            sign = -sign;
          }
        }
      }
      bool repeated = false;
      for (std::size_t b = 0; b + 1 < P + Q; ++b) {
        if (idx[b] == idx[b + 1]) repeated = true;
      }
      if (repeated) continue;
      Polynomial product = f[i] * g[j];
      if (sign < 0) product = -product;
      out[FormBasis<P + Q>::position(idx)] += product;
    }
  }
  return out;
}

/// Run-time degree check for callers that only know degrees dynamically.
inline void check_wedge_degree(std::size_t p, std::size_t q) {
  if (p + q > 4) throw DegreeError("wedge of degrees " + std::to_string(p) + " and " + std::to_string(q));
}

/// Euclidean Hodge star on 2-forms for the orientation dt^dx^dy^dz.
TwoForm hodge_star(const TwoForm& f);

/// Scales the (dt^dx + dy^dz) self-dual component by e, fixing the other two
/// self-dual components and the whole anti-self-dual part.
TwoForm rescale_eps(const TwoForm& f, const Polynomial& e);

/// Coefficient of dt^dx^dy^dz in w ^ w.
Polynomial volume_coefficient(const TwoForm& w);

/// Evaluates all coefficients at a point (coordinates and parameters).
template <std::size_t P>
std::array<Rational, Form<P>::size> evaluate(const Form<P>& f, const Assignment& a) {
  std::array<Rational, Form<P>::size> out;
  for (std::size_t i = 0; i < Form<P>::size; ++i) out[i] = f[i].evaluate(a);
  return out;
}

std::string to_string(const TwoForm& f);
std::string to_string(const ThreeForm& f);

}  // namespace wrinkle
