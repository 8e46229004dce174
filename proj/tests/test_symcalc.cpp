#include "doctest.h"
#include "test_support.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/forms.hpp"

using namespace wrinkle;
using namespace wrinkle::basis;

namespace {

Assignment at(std::initializer_list<std::pair<Var, Rational>> values) {
  Assignment a;
  for (const auto& [v, r] : values) a[v] = r;
  return a;
}

Polynomial P(const char* text) { return Polynomial::parse(text); }

}  // namespace

TEST_CASE("poly_eval examples") {
  CHECK(P("x^2+t^2-s").evaluate(at({{Var::t, 1}, {Var::x, 0}, {Var::s, 1}})) == 0);
  CHECK(P("3*eps*(x^2-t)").evaluate(at({{Var::t, 0}, {Var::x, 0}, {Var::eps, Rational(1, 6)}})) == 0);
  // 4 - 2/3 + 0 = 10/3
  CHECK(P("4x^3-2x*s+t").evaluate(at({{Var::t, 0}, {Var::x, 1}, {Var::s, Rational(1, 3)}})) == Rational(10, 3));
}

TEST_CASE("poly_eval rejects unbound variables") {
  CHECK_THROWS_AS(P("x*s").evaluate(at({{Var::x, 1}})), UnboundVariable);
}

TEST_CASE("parser and printer") {
  CHECK(P("(x+1)^2") == P("x^2 + 2x + 1"));
  CHECK(P("x/2 - 1/3") == Polynomial::monomial(Rational(1, 2), {0, 1}) - Polynomial(Rational(1, 3)));
  CHECK(P(P("3*eps*(x^2+t^2-s) - y*z^3").to_string().c_str()) == P("3*eps*(x^2+t^2-s) - y*z^3"));
  CHECK_THROWS_AS(P("x + q"), ParseError);
  CHECK_THROWS_AS(P("(x + 1"), ParseError);
}

TEST_CASE("exterior_derivative examples") {
  const ThreeForm d1 = exterior_derivative(two_form(2, 3, vars::x()));
  ThreeForm expected;
  expected[xyz] = 1;
  CHECK(d1 == expected);
  CHECK(exterior_derivative(two_form(0, 1) + two_form(2, 3)).is_zero());
  // d(x^2 dt) = 2x dx^dt = -2x dt^dx
  const TwoForm d2 = exterior_derivative(one_form(0, P("x^2")));
  CHECK(d2 == two_form(0, 1, P("-2x")));
}

TEST_CASE("wedge examples") {
  const FourForm vol = wedge(two_form(0, 1), two_form(2, 3));
  CHECK(vol[0] == 1);
  CHECK(wedge(two_form(0, 1), two_form(0, 1)).is_zero());
  const TwoForm omega = two_form(0, 1) + two_form(2, 3);
  CHECK(wedge(omega, omega)[0] == 2);
  CHECK(volume_coefficient(omega) == 2);
  CHECK_THROWS_AS(check_wedge_degree(3, 2), DegreeError);
  CHECK_NOTHROW(check_wedge_degree(2, 2));
}

TEST_CASE("hodge_star examples") {
  CHECK(hodge_star(two_form(0, 1)) == two_form(2, 3));
  CHECK(hodge_star(two_form(0, 2)) == two_form(3, 1));
  CHECK(hodge_star(two_form(0, 3)) == two_form(1, 2));
  CHECK(hodge_star(two_form(2, 3)) == two_form(0, 1));
  // f = x^3 - 3xt + y^2 - z^2: df = -3x dt + (3x^2-3t) dx + 2y dy - 2z dz, so
  // dt^df = (3x^2-3t) dt^dx + 2y dt^dy - 2z dt^dz and the star maps the three
  // pieces to dy^dz, dz^dx and dx^dy respectively.
  const Polynomial f = P("x^3-3x*t+y^2-z^2");
  const TwoForm star = hodge_star(wedge(one_form(0), differential(f)));
  CHECK(star == two_form(2, 3, P("3x^2-3t")) + two_form(3, 1, P("2y")) + two_form(1, 2, P("-2z")));
}

TEST_CASE("rescale_eps examples") {
  const TwoForm sd1 = two_form(0, 1) + two_form(2, 3);
  const TwoForm sd2 = two_form(0, 2) + two_form(3, 1);
  CHECK(rescale_eps(sd1, Rational(1, 6)) == Polynomial(Rational(1, 6)) * sd1);
  CHECK(rescale_eps(sd2, vars::eps()) == sd2);
  // Anti-self-dual part untouched.
  const TwoForm asd = two_form(0, 1) - two_form(2, 3);
  CHECK(rescale_eps(asd, vars::eps()) == asd);
  std::uint64_t cursor = 0;
  const TwoForm w = testing::random_form<2>(CounterRng(5), cursor);
  CHECK(rescale_eps(w, 1) == w);
}

TEST_CASE("property: d o d = 0 on random 1- and 2-forms") {
  const CounterRng rng(11);
  std::uint64_t cursor = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto w1 = testing::random_form<1>(rng, cursor);
    CHECK(exterior_derivative(exterior_derivative(w1)).is_zero());
    const auto w2 = testing::random_form<2>(rng, cursor);
    CHECK(exterior_derivative(exterior_derivative(w2)).is_zero());
  }
}

TEST_CASE("property: Leibniz rule for scalar times form") {
  const CounterRng rng(12);
  std::uint64_t cursor = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Polynomial g = testing::random_polynomial(rng, cursor);
    const auto w = testing::random_form<1>(rng, cursor);
    CHECK(exterior_derivative(g * w) == wedge(differential(g), w) + g * exterior_derivative(w));
  }
}

TEST_CASE("property: evaluation commutes with ring and exterior operations") {
  const CounterRng rng(13);
  std::uint64_t cursor = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = testing::random_polynomial(rng, cursor);
    const Polynomial q = testing::random_polynomial(rng, cursor);
    const Assignment a = testing::random_assignment(rng, cursor);
    CHECK((p * q).evaluate(a) == p.evaluate(a) * q.evaluate(a));
    CHECK((p + q).evaluate(a) == p.evaluate(a) + q.evaluate(a));
    CHECK((p * q) == (q * p));
    const Polynomial r = testing::random_polynomial(rng, cursor);
    CHECK(((p * q) * r) == (p * (q * r)));
    const auto w = testing::random_form<2>(rng, cursor);
    const auto v = testing::random_form<2>(rng, cursor);
    const auto lhs = evaluate(wedge(w, v), a);
    const auto ws = w.substitute(a);
    const auto vs = v.substitute(a);
    CHECK(lhs[0] == wedge(ws, vs)[0].constant_term());
    const auto star = evaluate(hodge_star(w), a);
    const auto star_of_values = hodge_star(ws);
    for (std::size_t i = 0; i < 6; ++i) CHECK(star[i] == star_of_values[i].constant_term());
  }
}

TEST_CASE("property: hodge star is an involution and volume coefficient formula") {
  const CounterRng rng(14);
  std::uint64_t cursor = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = testing::random_form<2>(rng, cursor);
    CHECK(hodge_star(hodge_star(w)) == w);
    CHECK(wedge(w, w)[0] == volume_coefficient(w));
    const auto v = testing::random_form<1>(rng, cursor);
    const auto u = testing::random_form<1>(rng, cursor);
    CHECK(wedge(v, u) == -wedge(u, v));
    CHECK(wedge(w, v) == wedge(v, w));
  }
}
