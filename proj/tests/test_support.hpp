#pragma once

#include "wrinkle/forms.hpp"
#include "wrinkle/sampling.hpp"

namespace wrinkle::testing {

// Random polynomial in t,x,y,z with small integer coefficients, degree <= 3.
inline Polynomial random_polynomial(const CounterRng& rng, std::uint64_t& cursor) {
  Polynomial p;
  const auto nterms = rng.integer(cursor++, 1, 4);
  for (int n = 0; n < nterms; ++n) {
    Exponents e{};
    for (std::size_t v = 0; v < 4; ++v) e[v] = static_cast<std::uint8_t>(rng.integer(cursor++, 0, 1) * rng.integer(cursor++, 0, 3));
    p += Polynomial::monomial(ratio(rng.integer(cursor++, -5, 5), rng.integer(cursor++, 1, 3)), e);
  }
  return p;
}

template <std::size_t P>
Form<P> random_form(const CounterRng& rng, std::uint64_t& cursor) {
  Form<P> f;
  for (std::size_t i = 0; i < Form<P>::size; ++i) f[i] = random_polynomial(rng, cursor);
  return f;
}

inline Assignment random_assignment(const CounterRng& rng, std::uint64_t& cursor) {
  Assignment a;
  for (std::size_t v = 0; v < kNumVars; ++v) a[static_cast<Var>(v)] = ratio(rng.integer(cursor++, -7, 7), rng.integer(cursor++, 1, 5));
  return a;
}

}  // namespace wrinkle::testing
