#include "wrinkle/forms.hpp"

#include <sstream>

namespace wrinkle {

TwoForm two_form(std::size_t i, std::size_t j, const Polynomial& coefficient) {
  TwoForm out;
  if (i == j) return out;
  if (i < j) {
    out[FormBasis<2>::position({i, j})] = coefficient;
  } else {
    out[FormBasis<2>::position({j, i})] = -coefficient;
  }
  return out;
}

OneForm one_form(std::size_t i, const Polynomial& coefficient) {
  OneForm out;
  out[i] = coefficient;
  return out;
}

OneForm differential(const Polynomial& f) {
  OneForm out;
  for (std::size_t j = 0; j < 4; ++j) out[j] = f.derivative(kCoords[j]);
  return out;
}

TwoForm hodge_star(const TwoForm& f) {
  using namespace basis;
  // *(dt^dx) = dy^dz, *(dt^dy) = dz^dx, *(dt^dz) = dx^dy and conversely.
  TwoForm out;
  out[yz] = f[tx];
  out[xz] = -f[ty];
  out[xy] = f[tz];
  out[tz] = f[xy];
  out[ty] = -f[xz];
  out[tx] = f[yz];
  return out;
}

TwoForm rescale_eps(const TwoForm& f, const Polynomial& e) {
  using namespace basis;
  // Split the (tx, yz) pair into self-dual and anti-self-dual halves.
  const Polynomial half = Polynomial(Rational(1, 2));
  const Polynomial self_dual = half * (f[tx] + f[yz]);
  const Polynomial anti = half * (f[tx] - f[yz]);
  TwoForm out = f;
  out[tx] = e * self_dual + anti;
  out[yz] = e * self_dual - anti;
  return out;
}

Polynomial volume_coefficient(const TwoForm& w) {
  using namespace basis;
  return Polynomial(2) * (w[tx] * w[yz] - w[ty] * w[xz] + w[tz] * w[xy]);
}

namespace {

template <std::size_t P>
std::string render(const Form<P>& f) {
  static constexpr const char* names[] = {"dt", "dx", "dy", "dz"};
  constexpr auto b = FormBasis<P>::elements();
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < Form<P>::size; ++i) {
    if (f[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << f[i].to_string() << ") ";
    for (std::size_t m = 0; m < P; ++m) out << (m ? "^" : "") << names[b[i][m]];
  }
  return first ? "0" : out.str();
}

}  // namespace

std::string to_string(const TwoForm& f) { return render(f); }
std::string to_string(const ThreeForm& f) { return render(f); }

}  // namespace wrinkle
