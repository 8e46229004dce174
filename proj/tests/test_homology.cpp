#include <random>

#include "doctest.h"
#include "wrinkle/errors.hpp"
#include "wrinkle/homology.hpp"

using namespace wrinkle;

namespace {

CycleClass V(std::initializer_list<long> v) {
  CycleClass out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (long x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("intersection pairing") {
  const auto t1 = torus_one_puncture();
  CHECK(pairing(t1, V({1, 0}), V({0, 1})) == -1);
  CHECK(pairing(t1, V({0, 1}), V({1, 0})) == 1);
  const auto t2 = torus_two_punctures();
  CHECK(pairing(t2, t2.generator("a"), t2.generator("c")) == 0);
  CHECK(pairing(t2, t2.generator("b"), t2.generator("c")) == -1);
  // d = b + c, so <a,d> = -1 and <b,d> = -1.
  CHECK(pairing(t2, t2.generator("a"), t2.generator("d")) == -1);
  CHECK(pairing(t2, t2.generator("b"), t2.generator("d")) == -1);
  CHECK_THROWS_AS(pairing(t2, V({1, 0}), V({1, 0, 0})), DimensionMismatch);
}

TEST_CASE("class parsing") {
  const auto t2 = torus_two_punctures();
  CHECK(parse_class(t2, "a+d") == V({1, 1, 1}));
  CHECK(parse_class(t2, "b - d") == V({0, 0, -1}));
  CHECK(parse_class(t2, "-2a+3*b") == V({-2, 3, 0}));
  CHECK(format_class(t2, V({-2, 3, 0})) == "-2a+3b");
  CHECK(format_class(t2, V({0, 0, 0})) == "0");
  CHECK_THROWS_AS(parse_class(t2, "a+e"), UnknownId);
  CHECK_THROWS_AS(parse_class(t2, "a*"), ParseError);
  CHECK_THROWS_AS(parse_class(t2, ""), ParseError);
}

TEST_CASE("single twists on the punctured torus") {
  const auto t1 = torus_one_puncture();
  const CycleClass a = V({1, 0});
  const CycleClass b = V({0, 1});
  // <a, a-b> = 1, so a - (a - b) = b.
  CHECK(dehn_twist(t1, a - b, a) == b);
  // <a, a+b> = -1, so a + (-1)(a + b) = -b.
  CHECK(dehn_twist(t1, a + b, a, -1) == -b);
  CHECK(dehn_twist(t1, a, a) == a);
  CHECK_THROWS_AS(dehn_twist(t1, a, b, 2), Unsupported);
}

TEST_CASE("word parsing and application order") {
  const auto t2 = torus_two_punctures();
  const auto word = parse_word(t2, "T(a+d), Tinv(b-d),T(a-b)");
  REQUIRE(word.letters.size() == 3);
  CHECK(word.letters[1].second == -1);
  CHECK(format_word(t2, word) == "T(a+b+c),Tinv(-c),T(a-b)");
  CHECK_THROWS_AS(parse_word(t2, "S(a)"), ParseError);
  CHECK_THROWS_AS(parse_word(t2, "T(a"), ParseError);
  CHECK_THROWS_AS(parse_word(t2, ""), ParseError);
  // Rightmost acts first: T(a) T(a-b) on a gives T(a)(b) = b - <b,a> a = b - a.
  const auto two = parse_word(t2, "T(a),T(a-b)");
  CHECK(apply_word(t2, two, t2.generator("a")) == V({-1, 1, 0}));
}

TEST_CASE("fold-circle monodromies") {
  const auto t2 = torus_two_punctures();
  const CycleClass a = t2.generator("a");
  // By hand: T(a-b) a = b; T(b-d) b = b - <b,-c>(-c) = b + c = d; T(a+d) d = d - <d,a>(a+d) = -a.
  const CycleClass s1 = dehn_twist(t2, parse_class(t2, "a-b"), a);
  CHECK(s1 == t2.generator("b"));
  const CycleClass s2 = dehn_twist(t2, parse_class(t2, "b-d"), s1);
  CHECK(s2 == t2.generator("d"));
  const CycleClass mu1 = apply_word(t2, parse_word(t2, kMu1), a);
  CHECK(mu1 == -a);
  CHECK(circle_parity_monodromy(t2, parse_word(t2, kMu1), a) == MonodromyParity::Odd);
  CHECK(apply_word(t2, parse_word(t2, kMu2), a) == a);
  CHECK(circle_parity_monodromy(t2, parse_word(t2, kMu2), a) == MonodromyParity::Even);
  CHECK(circle_parity_monodromy(t2, parse_word(t2, "T(b)"), a) == MonodromyParity::Undetermined);
  CHECK_THROWS_AS(circle_parity_monodromy(t2, parse_word(t2, "T(b)"), V({0, 0, 0})), Unsupported);
}

TEST_CASE("twists preserve the pairing and invert") {
  const auto t2 = torus_two_punctures();
  std::mt19937_64 gen(42);
  std::uniform_int_distribution<long> coef(-5, 5);
  auto draw = [&] { return V({coef(gen), coef(gen), coef(gen)}); };
  for (int n = 0; n < 1000; ++n) {
    const CycleClass c = draw();
    const CycleClass x = draw();
    const CycleClass y = draw();
    CHECK(pairing(t2, dehn_twist(t2, c, x), dehn_twist(t2, c, y)) == pairing(t2, x, y));
    CHECK(dehn_twist(t2, c, dehn_twist(t2, c, x), -1) == x);
    CHECK(dehn_twist(t2, c, dehn_twist(t2, c, x, -1)) == x);
  }
}

TEST_CASE("pairing sign of b and c is forced") {
  const auto signs = admissible_bc_signs();
  REQUIRE(signs.size() == 1);
  CHECK(signs[0] == -1);
}
