#include <Eigen/SVD>

#include "doctest.h"
#include "wrinkle/errors.hpp"
#include "wrinkle/linalg.hpp"
#include "wrinkle/models.hpp"

using namespace wrinkle;
using namespace wrinkle::basis;

namespace {

Polynomial P(const char* text) { return Polynomial::parse(text); }

Assignment with_s(const Rational& s) { return {{Var::s, s}}; }

}  // namespace

TEST_CASE("catalog components") {
  CHECK(get_model("birth", with_s(1)).components[1] == P("x^3 + 3*(t^2 - 1)*x + y^2 - z^2"));
  CHECK(get_model("birth", with_s(1)).components[0] == P("t"));
  CHECK(get_model("wrinkling", with_s(0)).components == get_model("lefschetz").components);
  CHECK(get_model("achiral_wrinkling", with_s(0)).components == get_model("achiral").components);
  CHECK(get_model("achiral").chirality == Chirality::Achiral);
  CHECK(get_model("merging", with_s(2)).components[1] == P("x^3 + 6x - 3t^2 x + y^2 - z^2"));
  CHECK(get_model("flipping").components[1] == P("x^4 - x^2*s + x*t + y^2 - z^2"));
}

TEST_CASE("catalog errors") {
  CHECK_THROWS_AS(get_model("swallowtail"), UnknownId);
  CHECK_THROWS_AS(get_model("wrinkling", with_s(-1)), ParameterOutOfRange);
  CHECK_THROWS_AS(get_form("eq3_flipping", with_s(Rational(1, 2))), ParameterOutOfRange);
  CHECK_THROWS_AS(get_form("LS", {{Var::eps, Rational(1, 5)}}), ParameterOutOfRange);
  CHECK_THROWS_AS(get_form("LS", {{Var::eps, 0}}), ParameterOutOfRange);
  CHECK_THROWS_AS(get_form("nope"), UnknownId);
  CHECK_NOTHROW(get_form("LS", {{Var::eps, Rational(1, 6)}}));
}

TEST_CASE("known critical sets") {
  const auto cusp = get_model("cusp").known_critical_set();
  CHECK(cusp.kind == CriticalLocus::Kind::Curve);
  CHECK(cusp.equations[0] == P("x^2 - t"));

  CHECK(get_model("birth", with_s(-1)).known_critical_set().kind == CriticalLocus::Kind::Empty);
  const auto birth = get_model("birth", with_s(1)).known_critical_set();
  CHECK(birth.equations[0] == P("x^2 + t^2 - 1"));
  CHECK(birth.has_rational_points());
  CHECK_FALSE(get_model("birth", with_s(2)).known_critical_set().has_rational_points());
  CHECK(get_model("wrinkling", with_s(0)).known_critical_set().kind == CriticalLocus::Kind::Point);
  CHECK_THROWS_AS(get_model("birth").known_critical_set(), UnboundVariable);
}

TEST_CASE("distance to critical locus") {
  const auto birth = get_model("birth", with_s(1)).known_critical_set();
  CHECK(birth.distance({0.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(birth.distance({0.0, 0.0, 0.5, 0.0}) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(birth.distance({0.6, 0.8, 0.0, 0.0}) < 1e-9);
  const auto point = get_model("lefschetz").known_critical_set();
  CHECK(point.distance({0.0, 0.3, 0.4, 0.0}) == doctest::Approx(0.5));
}

TEST_CASE("jacobian examples") {
  const auto cusp = jacobian(get_model("cusp"), {0, 0, 0, 0});
  CHECK(exact_rank(cusp) == 1);
  CHECK(cusp(0, 0) == 1);
  CHECK(cusp.row(1).isZero());

  // dF1 = (2t + s, -2x, 2y, -2z): the s entry survives at the origin.
  const auto wr = jacobian(get_model("wrinkling", with_s(1)), {0, 0, 0, 0});
  CHECK(exact_rank(wr) == 1);
  CHECK(wr(0, 0) == 1);
  CHECK(exact_rank(jacobian(get_model("wrinkling", with_s(0)), {0, 0, 0, 0})) == 0);

  // df/dx = 3x^2 + 3(t^2 - 1) = 9 at (0, 2, 0, 0).
  const auto birth = jacobian(get_model("birth", with_s(1)), {0, 2, 0, 0});
  CHECK(exact_rank(birth) == 2);
  CHECK(birth(1, 1) == 9);

  CHECK_THROWS_AS(jacobian(get_model("birth"), {0, 0, 0, 0}), UnboundVariable);
}

TEST_CASE("jacobian matches hand-written gradient") {
  const auto model = get_model("wrinkling", with_s(Rational(3, 2)));
  const Point4 p{Rational(1, 3), Rational(-2, 5), Rational(3, 7), Rational(5, 4)};
  const Rational s(3, 2);
  const auto j = jacobian(model, p);
  CHECK(j(0, 0) == 2 * p[0] + s);
  CHECK(j(0, 1) == -2 * p[1]);
  CHECK(j(0, 2) == 2 * p[2]);
  CHECK(j(0, 3) == -2 * p[3]);
  CHECK(j(1, 0) == 2 * p[1]);
  CHECK(j(1, 1) == 2 * p[0]);
  CHECK(j(1, 2) == 2 * p[3]);
  CHECK(j(1, 3) == 2 * p[2]);
  const auto jn = jacobian_numeric(model, {1.0 / 3, -0.4, 3.0 / 7, 1.25});
  CHECK((jn - to_double_matrix(j)).norm() < 1e-14);
}

TEST_CASE("rational critical samples have rank below two") {
  const std::vector<std::pair<std::string, Rational>> cases = {
      {"cusp", 0},          {"birth", 1},        {"birth", Rational(1, 4)},       {"merging", 1},
      {"merging", -2},      {"flipping", Rational(1, 4)}, {"wrinkling", 1},       {"wrinkling", Rational(2, 3)},
      {"achiral_wrinkling", 1}, {"lefschetz", 0}, {"achiral", 0}};
  for (const auto& [id, s] : cases) {
    const auto model = get_model(id, with_s(s));
    const auto locus = model.known_critical_set();
    REQUIRE(locus.has_rational_points());
    for (int n = -16; n <= 16; ++n) {
      const Point4 p = locus.rational_point(ratio(n, 5));
      CAPTURE(id);
      CAPTURE(n);
      CHECK(exact_rank(jacobian(model, p)) < 2);
      for (const auto& eq : locus.equations) CHECK(eq.evaluate(point_assignment(p, model.bound)) == 0);
    }
  }
}

TEST_CASE("numeric curve pieces stay on the locus") {
  for (const auto& [id, s] : std::vector<std::pair<std::string, Rational>>{
           {"birth", 2}, {"merging", 1}, {"merging", -1}, {"flipping", 1}, {"wrinkling", 1}}) {
    const auto model = get_model(id, with_s(s));
    for (const auto& piece : model.known_critical_set().pieces) {
      for (int i = 0; i <= 50; ++i) {
        const double u = piece.lo + (piece.hi - piece.lo) * i / 50.0;
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian_numeric(model, piece.point(u)));
        CAPTURE(id);
        CHECK(svd.singularValues()(1) < 1e-9);
        // Tangent agrees with a central difference.
        const Eigen::Vector4d fd = (piece.point(u + 1e-6) - piece.point(u - 1e-6)) / 2e-6;
        CHECK((fd - piece.tangent(u)).norm() < 1e-6);
      }
    }
  }
}

TEST_CASE("printed LS coefficients") {
  const auto ls = get_form("LS");
  CHECK(ls.form[tx] == P("3*eps*(x^2 + t^2 - s)"));
  CHECK(ls.form[yz] == P("3*eps*(x^2 + t^2 - s)"));
  CHECK(ls.form[tz] == P("6*eps*y*t - 2z"));
  CHECK(ls.form[xz] == P("6*eps*y*x - 2y"));
  CHECK(ls.form[ty] == P("2y"));
  CHECK(ls.form[xy] == P("-2z"));
}

TEST_CASE("cusp_eps matches its expanded form") {
  TwoForm expected;
  expected[tx] = P("3*eps*(x^2 - t)");
  expected[yz] = P("3*eps*(x^2 - t)");
  expected[ty] = P("2y");
  expected[xz] = -P("2y - 6*eps*x*y");  // dz^dx = -dx^dz
  expected[tz] = -P("2z + 3*eps*y");
  expected[xy] = P("-2z");
  CHECK(get_form("cusp_eps").form == expected);
}

TEST_CASE("eq1 equals LS") {
  CHECK(get_form("eq1_birth").form == get_form("LS").form);
  const Assignment p{{Var::eps, Rational(1, 7)}, {Var::s, Rational(1, 4)}};
  CHECK(get_form("eq1_birth", p).form == get_form("LS", p).form);
  CHECK(get_form("eq1_birth").claims(ClaimKind::Equals));
}

TEST_CASE("eq3 coefficients") {
  const auto f = get_form("eq3_flipping").form;
  CHECK(-f[xz] == P("(12x^2 - 2s + 2)*y"));
  CHECK(f[xy] == P("-(12x^2 - 2s + 1)*2z"));
  CHECK(f[tx] == f[yz]);
}

TEST_CASE("sigma and omega") {
  const auto sigma = get_form("sigma_wrinkling").form;
  CHECK(sigma[yz] == P("(2t + s)*2t + 4x^2"));
  CHECK(sigma[tx] == P("4y^2 + 4z^2"));
  CHECK(sigma[tz].is_zero());
  CHECK(sigma[xy].is_zero());
  const auto omega = get_form("omega_wrinkling", {{Var::k, 0}, {Var::s, 1}}).form;
  CHECK(omega == get_form("sigma_wrinkling", {{Var::s, 1}}).form);
}

TEST_CASE("every printed form is closed") {
  for (const auto& id : form_ids()) {
    CAPTURE(id);
    CHECK(exterior_derivative(get_form(id).form).is_zero());
  }
}

TEST_CASE("self-dual completion is self-dual") {
  const auto w = self_dual_completion(P("x^3 + 3*(t^2 - s)*x + y^2 - z^2"));
  CHECK(hodge_star(w) == w);
}
