#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wrinkle/errors.hpp"
#include "wrinkle/nearsymp.hpp"

using namespace wrinkle;
using namespace wrinkle::basis;

namespace {

Polynomial P(const char* text) { return Polynomial::parse(text); }

const Assignment kLs{{Var::s, Rational(1, 4)}, {Var::eps, Rational(1, 6)}};

// w(v1, v2) on the oriented fiber equals <w, *(dF1 ^ dF2)> / |dF1 ^ dF2|.
double fiber_oracle(const TwoForm& form, const Assignment& params, const LocalModel& model, const Point4& p) {
  const Assignment at = point_assignment(p, params);
  const TwoForm base = wedge(differential(model.components[0]), differential(model.components[1]));
  const auto star = evaluate(hodge_star(base), at);
  const auto plain = evaluate(base, at);
  const auto w = evaluate(form, at);
  double inner = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    inner += Rational(w[i] * star[i]).get_d();
    norm2 += Rational(plain[i] * plain[i]).get_d();
  }
  return inner / std::sqrt(norm2);
}

}  // namespace

TEST_CASE("verify_closed") {
  CHECK(verify_closed(get_form("LS").form).pass);
  CHECK(verify_closed(get_form("sigma_wrinkling").form).pass);
  const Polynomial f = P("x^3 - 3x*t");
  const TwoForm naive = wedge(one_form(0), differential(f));
  // dt^df = d(t df) is exact; its self-dual completion is not closed.
  CHECK(verify_closed(naive).pass);
  const auto completed = verify_closed(naive + hodge_star(naive));
  CHECK_FALSE(completed.pass);
  CHECK(completed.residual[xyz] == P("6x"));
  CHECK(completed.residual[tyz] == P("-3"));
  for (int k : {0, 1, 7, 100}) {
    CHECK(verify_closed(get_form("omega_wrinkling", {{Var::s, 1}, {Var::k, k}}).form).pass);
  }
}

TEST_CASE("nonneg square") {
  const auto ls = get_form("LS", kLs);
  const auto check = verify_nonneg_square(ls, 2000, 42);
  CHECK(check.pass);
  CHECK(check.margin >= 0);
  CHECK(volume_coefficient(ls.form).evaluate(point_assignment({Rational(1, 2), 0, 0, 0}, ls.bound)) == 0);
  CHECK(verify_nonneg_square(get_form("cusp_eps", {{Var::eps, Rational(1, 6)}}), 2000, 42).pass);
}

TEST_CASE("nonneg square is deterministic per seed") {
  const auto ls = get_form("LS", kLs);
  const auto a = verify_nonneg_square(ls, 500, 7);
  const auto b = verify_nonneg_square(ls, 500, 7);
  CHECK(a.margin == b.margin);
  CHECK(*a.witness == *b.witness);
}

TEST_CASE("zero set of LS is the birth circle") {
  const auto ls = get_form("LS", kLs);
  const auto check = verify_zero_set(ls, get_model("birth", kLs), 100, 2000, 0.05, 42);
  CHECK(check.pass);
  CHECK(check.margin > 0);
}

TEST_CASE("transversality") {
  const auto ls = get_form("LS", kLs);
  // Rows of the gradient at (1/2,0,0,0): tx, yz -> (1/2,0,0,0); ty -> (0,0,2,0);
  // tz -> (0,0,1/2,-2); xy -> (0,0,0,-2); xz -> (0,0,-2,0). The x column vanishes.
  const auto r = verify_transversality(ls.form, ls.bound, Point4{Rational(1, 2), 0, 0, 0});
  CHECK(r.rank == 3);
  CHECK(r.pass);
  CHECK(r.singular_values(3) < 1e-15);

  const auto locus = get_model("birth", kLs).known_critical_set();
  for (int n = 0; n < 100; ++n) {
    CHECK(verify_transversality(ls.form, ls.bound, locus.rational_point(ratio(n - 50, 9))).rank == 3);
  }
  const auto zero = verify_transversality(TwoForm{}, {}, Point4{0, 0, 0, 0});
  CHECK(zero.rank == 0);
  CHECK_FALSE(zero.pass);
  CHECK_THROWS_AS(verify_transversality(ls.form, ls.bound, Point4{0, 0, 0, 0}), NotOnZeroSet);
  CHECK_THROWS_AS(verify_transversality(ls.form, ls.bound, Eigen::Vector4d(0.1, 0, 0, 0)), NotOnZeroSet);
}

TEST_CASE("fiber value agrees with the Hodge-star oracle") {
  const CounterRng rng(5, 0);
  const std::vector<std::pair<std::string, Assignment>> cases = {
      {"LS", kLs}, {"eq3_flipping", {{Var::s, Rational(1, 4)}}}, {"omega_wrinkling", {{Var::s, 1}, {Var::k, 3}}}};
  std::uint64_t cursor = 0;
  for (const auto& [id, params] : cases) {
    const auto entry = get_form(id, params);
    const auto model = get_model(entry.model_id, params);
    for (int n = 0; n < 30; ++n) {
      const Point4 p{rng.dyadic(cursor++), rng.dyadic(cursor++), rng.dyadic(cursor++), rng.dyadic(cursor++)};
      const Eigen::Vector4d pv(p[0].get_d(), p[1].get_d(), p[2].get_d(), p[3].get_d());
      CAPTURE(id);
      CHECK(fiber_value(entry.form, entry.bound, model, pv) ==
            doctest::Approx(fiber_oracle(entry.form, entry.bound, model, p)).epsilon(1e-9));
    }
  }
}

TEST_CASE("fiber positivity") {
  const auto eq3 = get_form("eq3_flipping", {{Var::s, Rational(1, 4)}});
  CHECK(verify_fiber_positivity(eq3, get_model("flipping", eq3.bound), 2000, 0.05, 42).pass);
  const auto ls = get_form("LS", kLs);
  const auto check = verify_fiber_positivity(ls, get_model("birth", kLs), 2000, 0.05, 42);
  CHECK(check.pass);
  CHECK(check.margin > 0);
  // Reversing the form must fail everywhere.
  FormEntry flipped = ls;
  flipped.form = -ls.form;
  CHECK_FALSE(verify_fiber_positivity(flipped, get_model("birth", kLs), 200, 0.05, 42).pass);
}

TEST_CASE("find_k") {
  FindKOptions options;
  options.samples = 2000;
  const auto result = find_k({{Var::s, 1}}, options);
  CHECK(result.k >= 1);
  CHECK(result.k <= 100);
  CHECK(result.passing.all_pass());
  REQUIRE(result.previous);
  CHECK_FALSE(result.previous->all_pass());
  options.k_max = result.k - 1;
  if (options.k_max >= 1) CHECK_THROWS_AS(find_k({{Var::s, 1}}, options), KNotFound);
}

TEST_CASE("eigenbundle at the LS circle") {
  const auto ls = get_form("LS", kLs);
  const auto data = eigenbundle(ls.form, ls.bound, {0.5, 0, 0, 0}, {0, 1, 0, 0});
  // Hand computation: B = diag(3 eps) + [[0,2],[2,0]] on (t, y, z) for z = -e_x.
  CHECK(data.eigenvalues(0) == doctest::Approx(2.0));
  CHECK(data.eigenvalues(1) == doctest::Approx(0.5));
  CHECK(data.eigenvalues(2) == doctest::Approx(-2.0));
  CHECK(data.asymmetry < 1e-12);
  CHECK(data.trace == doctest::Approx(0.5));
  CHECK(data.tangent(1) == doctest::Approx(-1.0));
  // The caller's tangent sign does not matter.
  const auto other = eigenbundle(ls.form, ls.bound, {0.5, 0, 0, 0}, {0, -1, 0, 0});
  CHECK((other.eigenvalues - data.eigenvalues).norm() < 1e-12);
  CHECK((other.tangent - data.tangent).norm() < 1e-12);
}

TEST_CASE("eigenbundle rejects rank-2 gradients") {
  TwoForm w = two_form(0, 1, P("x")) + two_form(0, 2, P("y"));
  CHECK_THROWS_AS(eigenbundle(w, {}, {0, 0, 0, 0}, {1, 0, 0, 0}), SignatureError);
}

TEST_CASE("circle parity") {
  const auto ls = get_form("LS", kLs);
  const auto circle = get_model("birth", kLs).known_critical_set().pieces[0];
  const Parity coarse = circle_parity_geometric(ls.form, ls.bound, circle, 720);
  const Parity fine = circle_parity_geometric(ls.form, ls.bound, circle, 1440);
  CHECK(coarse == fine);
  CHECK(coarse == Parity::Odd);
  CHECK_THROWS_AS(circle_parity_geometric(ls.form, ls.bound, circle, 3), StepTooCoarse);
}

TEST_CASE("constant eigen-line gives an even circle") {
  // Closed, self-dual, vanishing on the t axis with constant normal form diag(1, 1, -2).
  const TwoForm w = two_form(0, 1, P("x")) + two_form(2, 3, P("x")) + two_form(0, 2, P("y")) +
                    two_form(3, 1, P("y")) + two_form(0, 3, P("-2z")) + two_form(1, 2, P("-2z"));
  REQUIRE(verify_closed(w).pass);
  CurvePiece loop;
  loop.point = [](double u) { return Eigen::Vector4d(std::sin(u), 0, 0, 0); };
  loop.tangent = [](double) { return Eigen::Vector4d(1, 0, 0, 0); };
  loop.lo = 0.0;
  loop.hi = 2.0 * std::numbers::pi;
  loop.closed = true;
  const auto data = eigenbundle(w, {}, {0, 0, 0, 0}, {1, 0, 0, 0});
  CHECK(std::abs(data.trace) < 1e-12);
  CHECK(circle_parity_geometric(w, {}, loop, 64) == Parity::Even);
}
