#include "wrinkle/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

constexpr std::size_t T = 0, X = 1, Y = 2, Z = 3;

Polynomial P(std::string_view text) { return Polynomial::parse(text); }

struct Term {
  std::size_t i;
  std::size_t j;
  const char* coefficient;
};

TwoForm build(std::initializer_list<Term> terms) {
  TwoForm out;
  for (const auto& term : terms) out += two_form(term.i, term.j, P(term.coefficient));
  return out;
}

ParamRange any(Var v) { return {v, std::nullopt, std::nullopt}; }
ParamRange nonneg(Var v) { return {v, Rational(0), std::nullopt}; }

Rational require(const Assignment& bound, Var v) {
  auto it = bound.find(v);
  if (it == bound.end()) throw UnboundVariable(std::string(var_name(v)));
  return it->second;
}

/// Binds every declared parameter present in params, checking ranges.
Assignment bind_params(const std::vector<ParamRange>& ranges, const Assignment& params) {
  Assignment bound;
  for (const auto& range : ranges) {
    auto it = params.find(range.var);
    if (it == params.end()) continue;
    if (!range.contains(it->second)) {
      throw ParameterOutOfRange(std::string(var_name(range.var)) + " = " + format_rational(it->second) +
                                " outside " + range.describe());
    }
    bound.emplace(range.var, it->second);
  }
  return bound;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational out(rn, rd);
  out.canonicalize();
  return out;
}

Eigen::Vector4d v4(double t, double x) { return {t, x, 0.0, 0.0}; }

CurvePiece point_piece(const Eigen::Vector4d& p) {
  CurvePiece piece;
  piece.point = [p](double) { return p; };
  piece.tangent = [](double) { return Eigen::Vector4d::Zero().eval(); };
  piece.lo = piece.hi = 0.0;
  return piece;
}

CriticalLocus origin_locus(const std::string& description) {
  CriticalLocus locus;
  locus.kind = CriticalLocus::Kind::Point;
  locus.description = description;
  locus.equations = {vars::t(), vars::x(), vars::y(), vars::z()};
  locus.pieces.push_back(point_piece(Eigen::Vector4d::Zero()));
  locus.rational_point = [](const Rational&) { return Point4{0, 0, 0, 0}; };
  return locus;
}

CriticalLocus birth_locus(const Rational& s) {
  if (s < 0) {
    CriticalLocus empty;
    empty.description = "empty";
    return empty;
  }
  if (s == 0) return origin_locus("point t = x = y = z = 0");
  CriticalLocus locus;
  locus.kind = CriticalLocus::Kind::Curve;
  locus.description = "circle x^2 + t^2 = s, y = z = 0";
  locus.equations = {P("x^2 + t^2") - Polynomial(s), vars::y(), vars::z()};
  const double r = std::sqrt(s.get_d());
  CurvePiece piece;
  piece.point = [r](double th) { return v4(r * std::cos(th), r * std::sin(th)); };
  piece.tangent = [r](double th) { return v4(-r * std::sin(th), r * std::cos(th)); };
  piece.lo = 0.0;
  piece.hi = 2.0 * std::numbers::pi;
  piece.closed = true;
  locus.pieces.push_back(piece);
  if (auto root = rational_sqrt(s)) {
    const Rational rr = *root;
    locus.rational_point = [rr](const Rational& u) {
      const Rational d = 1 + u * u;
      return Point4{Rational(rr * (1 - u * u) / d), Rational(2 * rr * u / d), 0, 0};
    };
  }
  return locus;
}

CriticalLocus merging_locus(const Rational& s) {
  CriticalLocus locus;
  locus.kind = CriticalLocus::Kind::Curve;
  locus.description = "hyperbola t^2 - x^2 = s, y = z = 0";
  locus.equations = {P("t^2 - x^2") - Polynomial(s), vars::y(), vars::z()};
  const double sd = s.get_d();
  const double r = std::sqrt(std::abs(sd));
  for (double sign : {1.0, -1.0}) {
    CurvePiece piece;
    if (sd > 0) {
      piece.point = [r, sign](double u) { return v4(sign * r * std::cosh(u), r * std::sinh(u)); };
      piece.tangent = [r, sign](double u) { return v4(sign * r * std::sinh(u), r * std::cosh(u)); };
    } else if (sd < 0) {
      piece.point = [r, sign](double u) { return v4(r * std::sinh(u), sign * r * std::cosh(u)); };
      piece.tangent = [r, sign](double u) { return v4(r * std::cosh(u), sign * r * std::sinh(u)); };
    } else {
      piece.point = [sign](double u) { return v4(u, sign * u); };
      piece.tangent = [sign](double) { return v4(1.0, sign); };
    }
    piece.lo = -2.0;
    piece.hi = 2.0;
    locus.pieces.push_back(piece);
  }
  if (s != 0) {
    // t + x = m, t - x = s/m.
    locus.rational_point = [s](const Rational& m) {
      const Rational mm = m == 0 ? Rational(1) : m;
      return Point4{Rational((mm + s / mm) / 2), Rational((mm - s / mm) / 2), 0, 0};
    };
  } else {
    locus.rational_point = [](const Rational& u) { return Point4{u, u, 0, 0}; };
  }
  return locus;
}

CriticalLocus wrinkling_locus(const Rational& s) {
  if (s == 0) return origin_locus("point t = x = y = z = 0");
  CriticalLocus locus;
  locus.kind = CriticalLocus::Kind::Curve;
  locus.description = "circle x^2 + t^2 + s t / 2 = 0, y = z = 0";
  locus.equations = {P("x^2 + t^2") + Polynomial(s / 2) * vars::t(), vars::y(), vars::z()};
  const double q = s.get_d() / 4.0;
  CurvePiece piece;
  piece.point = [q](double th) { return v4(-q * (1.0 + std::cos(th)), q * std::sin(th)); };
  piece.tangent = [q](double th) { return v4(q * std::sin(th), q * std::cos(th)); };
  piece.lo = 0.0;
  piece.hi = 2.0 * std::numbers::pi;
  piece.closed = true;
  locus.pieces.push_back(piece);
  const Rational qr = s / 4;
  locus.rational_point = [qr](const Rational& u) {
    const Rational d = 1 + u * u;
    const Rational c = (1 - u * u) / d;
    return Point4{Rational(-qr * (1 + c)), Rational(qr * 2 * u / d), 0, 0};
  };
  return locus;
}

LocalModel make_model(const std::string& id) {
  LocalModel m;
  m.id = id;
  if (id == "cusp") {
    m.components = {vars::t(), P("x^3 - 3*x*t + y^2 - z^2")};
    m.product_form = true;
    m.singularity_inventory = {"cusp at origin", "fold arcs x^2 = t"};
  } else if (id == "birth") {
    m.components = {vars::t(), P("x^3 + 3*(t^2 - s)*x + y^2 - z^2")};
    m.params = {any(Var::s)};
    m.product_form = true;
    m.singularity_inventory = {"s > 0: 2 cusps + fold circle", "s = 0: degenerate point", "s < 0: none"};
  } else if (id == "merging") {
    m.components = {vars::t(), P("x^3 + 3*(s - t^2)*x + y^2 - z^2")};
    m.params = {any(Var::s)};
    m.product_form = true;
    m.singularity_inventory = {"2 cusps + 2 fold arcs"};
  } else if (id == "flipping") {
    m.components = {vars::t(), P("x^4 - x^2*s + x*t + y^2 - z^2")};
    m.params = {any(Var::s)};
    m.product_form = true;
    m.singularity_inventory = {"s > 0: 2 cusps + fold arc", "s <= 0: fold arc"};
  } else if (id == "wrinkling") {
    m.components = {P("t^2 - x^2 + y^2 - z^2 + s*t"), P("2*t*x + 2*y*z")};
    m.params = {nonneg(Var::s)};
    m.singularity_inventory = {"s > 0: 3 cusps + fold circle", "s = 0: Lefschetz point"};
  } else if (id == "lefschetz") {
    m.components = {P("t^2 - x^2 + y^2 - z^2"), P("2*t*x + 2*y*z")};
    m.singularity_inventory = {"Lefschetz point at origin"};
  } else if (id == "achiral") {
    m.components = {P("t^2 - x^2 + y^2 - z^2"), P("-2*t*x + 2*y*z")};
    m.chirality = Chirality::Achiral;
    m.singularity_inventory = {"achiral Lefschetz point at origin"};
  } else if (id == "achiral_wrinkling") {
    m.components = {P("t^2 - x^2 + y^2 - z^2 + s*t"), P("-2*t*x + 2*y*z")};
    m.params = {nonneg(Var::s)};
    m.chirality = Chirality::Achiral;
    m.singularity_inventory = {"s > 0: 3 cusps + fold circle", "s = 0: achiral Lefschetz point"};
  } else {
    throw UnknownId("model " + id);
  }
  return m;
}

}  // namespace

std::string ParamRange::describe() const {
  std::string out = lo ? (lo_open ? "(" : "[") + format_rational(*lo) : "(-inf";
  out += ", ";
  out += hi ? format_rational(*hi) + "]" : "inf)";
  return out;
}

double CriticalLocus::distance(const Eigen::Vector4d& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& piece : pieces) {
    if (piece.lo == piece.hi) {
      best = std::min(best, (piece.point(piece.lo) - p).norm());
      continue;
    }
    constexpr int n = 2048;
    const double h = (piece.hi - piece.lo) / n;
    int arg = 0;
    double local = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
      const double d = (piece.point(piece.lo + i * h) - p).norm();
      if (d < local) {
        local = d;
        arg = i;
      }
    }
    // Golden-section refinement on the bracketing cell pair.
    double a = piece.lo + std::max(arg - 1, 0) * h;
    double b = piece.lo + std::min(arg + 1, n) * h;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
      const double c = b - g * (b - a);
      const double d = a + g * (b - a);
      if ((piece.point(c) - p).norm() < (piece.point(d) - p).norm()) {
        b = d;
      } else {
        a = c;
      }
    }
    local = std::min(local, (piece.point(0.5 * (a + b)) - p).norm());
    best = std::min(best, local);
  }
  return best;
}

CriticalLocus LocalModel::known_critical_set() const {
  auto s = [this] { return require(bound, Var::s); };
  if (id == "cusp") {
    CriticalLocus locus;
    locus.kind = CriticalLocus::Kind::Curve;
    locus.description = "parabola x^2 = t, y = z = 0";
    locus.equations = {P("x^2 - t"), vars::y(), vars::z()};
    CurvePiece piece;
    piece.point = [](double u) { return v4(u * u, u); };
    piece.tangent = [](double u) { return v4(2.0 * u, 1.0); };
    piece.lo = -1.5;
    piece.hi = 1.5;
    locus.pieces.push_back(piece);
    locus.rational_point = [](const Rational& u) { return Point4{Rational(u * u), u, 0, 0}; };
    return locus;
  }
  if (id == "birth") return birth_locus(s());
  if (id == "merging") return merging_locus(s());
  if (id == "flipping") {
    const Rational sv = s();
    CriticalLocus locus;
    locus.kind = CriticalLocus::Kind::Curve;
    locus.description = "curve t = 2 s x - 4 x^3, y = z = 0";
    locus.equations = {P("4*x^3 + t") - Polynomial(2 * sv) * vars::x(), vars::y(), vars::z()};
    const double sd = sv.get_d();
    CurvePiece piece;
    piece.point = [sd](double u) { return v4(2.0 * sd * u - 4.0 * u * u * u, u); };
    piece.tangent = [sd](double u) { return v4(2.0 * sd - 12.0 * u * u, 1.0); };
    piece.lo = -1.5;
    piece.hi = 1.5;
    locus.pieces.push_back(piece);
    locus.rational_point = [sv](const Rational& u) { return Point4{Rational(2 * sv * u - 4 * u * u * u), u, 0, 0}; };
    return locus;
  }
  if (id == "wrinkling" || id == "achiral_wrinkling") return wrinkling_locus(s());
  if (id == "lefschetz" || id == "achiral") return origin_locus("point t = x = y = z = 0");
  throw Unsupported("no closed-form critical set for " + id);
}

LocalModel get_model(const std::string& id, const Assignment& params) {
  LocalModel m = make_model(id);
  m.bound = bind_params(m.params, params);
  for (auto& c : m.components) c = c.substitute(m.bound);
  return m;
}

const std::vector<std::string>& model_ids() {
  static const std::vector<std::string> ids = {"cusp",      "birth",     "merging", "flipping",
                                               "wrinkling", "lefschetz", "achiral", "achiral_wrinkling"};
  return ids;
}

Assignment point_assignment(const Point4& p, const Assignment& params) {
  Assignment a = params;
  for (std::size_t i = 0; i < 4; ++i) a[kCoords[i]] = p[i];
  return a;
}

NumericPoint numeric_point(const Eigen::Vector4d& p, const Assignment& params) {
  NumericPoint out{};
  for (const auto& [v, value] : params) out[static_cast<std::size_t>(v)] = value.get_d();
  for (std::size_t i = 0; i < 4; ++i) out[static_cast<std::size_t>(kCoords[i])] = p[static_cast<Eigen::Index>(i)];
  return out;
}

Eigen::Matrix<Rational, 2, 4> jacobian(const LocalModel& model, const Point4& point) {
  const Assignment a = point_assignment(point, model.bound);
  Eigen::Matrix<Rational, 2, 4> j;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 4; ++c) j(r, c) = model.components[r].derivative(kCoords[c]).evaluate(a);
  }
  return j;
}

Eigen::Matrix<double, 2, 4> jacobian_numeric(const LocalModel& model, const Eigen::Vector4d& point) {
  const NumericPoint np = numeric_point(point, model.bound);
  Eigen::Matrix<double, 2, 4> j;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 4; ++c) j(r, c) = model.components[r].derivative(kCoords[c]).evaluate_numeric(np);
  }
  return j;
}

Eigen::Vector2d evaluate_numeric(const LocalModel& model, const Eigen::Vector4d& point) {
  const NumericPoint np = numeric_point(point, model.bound);
  return {model.components[0].evaluate_numeric(np), model.components[1].evaluate_numeric(np)};
}

std::array<Rational, 2> evaluate(const LocalModel& model, const Point4& point) {
  const Assignment a = point_assignment(point, model.bound);
  return {model.components[0].evaluate(a), model.components[1].evaluate(a)};
}

std::string_view claim_name(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::Closed: return "closed";
    case ClaimKind::NonnegSquare: return "nonneg-square";
    case ClaimKind::Transverse: return "transverse";
    case ClaimKind::FiberPositive: return "fiber-positive";
    case ClaimKind::Equals: return "equals";
  }
  return "unknown";
}

bool FormEntry::claims(ClaimKind kind) const {
  return std::any_of(claim_list.begin(), claim_list.end(), [kind](const Claim& c) { return c.kind == kind; });
}

TwoForm self_dual_completion(const Polynomial& f) {
  const TwoForm base = wedge(one_form(T), differential(f));
  return base + hodge_star(base);
}

namespace {

const ParamRange kEps{Var::eps, Rational(0), Rational(1, 6), true};

FormEntry make_form(const std::string& id) {
  using enum ClaimKind;
  FormEntry e;
  e.id = id;
  const Polynomial eps = Polynomial::variable(Var::eps);
  if (id == "LS") {
    e.form = build({{T, X, "3*eps*(x^2 + t^2 - s)"},
                    {Y, Z, "3*eps*(x^2 + t^2 - s)"},
                    {T, Z, "6*eps*y*t"},
                    {X, Z, "6*eps*y*x"},
                    {X, Y, "-2*z"},
                    {T, Z, "-2*z"},
                    {T, Y, "2*y"},
                    {Z, X, "2*y"}});
    e.params = {kEps, any(Var::s)};
    e.model_id = "birth";
    e.claim_list = {{Closed, ""}, {NonnegSquare, ""}, {Transverse, ""}, {FiberPositive, ""}};
  } else if (id == "cusp_eps") {
    e.form = rescale_eps(self_dual_completion(P("x^3 - 3*x*t + y^2 - z^2")), eps) -
             build({{T, Z, "3*eps*y"}, {Z, X, "6*eps*x*y"}});
    e.params = {kEps};
    e.model_id = "cusp";
    e.claim_list = {{Closed, ""}, {NonnegSquare, ""}, {Transverse, ""}, {FiberPositive, ""}};
  } else if (id == "eq1_birth") {
    e.form = rescale_eps(self_dual_completion(P("x^3 + 3*(t^2 - s)*x + y^2 - z^2")), eps) +
             build({{T, Z, "6*eps*y*t"}, {X, Z, "6*eps*y*x"}});
    e.params = {kEps, any(Var::s)};
    e.model_id = "birth";
    e.claim_list = {{Closed, ""}, {NonnegSquare, ""}, {FiberPositive, ""}, {Equals, "LS"}};
  } else if (id == "eq2_merging") {
    e.form = rescale_eps(self_dual_completion(P("x^3 + 3*(s - t^2)*x + y^2 - z^2")), eps) -
             build({{T, Z, "6*eps*y*t"}, {Z, X, "6*eps*y*x"}});
    e.params = {kEps, any(Var::s)};
    e.model_id = "merging";
    e.claim_list = {{Closed, ""}, {NonnegSquare, ""}, {FiberPositive, ""}};
  } else if (id == "eq3_flipping") {
    e.form = build({{T, X, "4*x^3 - 2*x*s + t"},
                    {Y, Z, "4*x^3 - 2*x*s + t"},
                    {T, Y, "2*y - 2*z"},
                    {Z, X, "(12*x^2 - 2*s + 2)*y"},
                    {T, Z, "-(2*z + y)"},
                    {X, Y, "-(12*x^2 - 2*s + 1)*2*z"}});
    e.params = {{Var::s, Rational(-1), Rational(1, 3)}};
    e.model_id = "flipping";
    e.claim_list = {{Closed, ""}, {FiberPositive, ""}};
  } else if (id == "sigma_wrinkling") {
    e.form = build({{Y, Z, "(2*t + s)*2*t + 4*x^2"},
                    {T, X, "4*y^2 + 4*z^2"},
                    {Z, X, "2*((2*t + s)*2*z - 4*x*y)"},
                    {T, Y, "2*(4*x*y - 4*t*z - s*z)"}});
    e.params = {nonneg(Var::s)};
    e.model_id = "wrinkling";
    e.claim_list = {{Closed, ""}, {FiberPositive, ""}};
  } else if (id == "omega_wrinkling") {
    const TwoForm pullback = wedge(differential(P("t^2 + s*t - x^2 + y^2 - z^2")), differential(P("2*t*x + 2*y*z")));
    e.form = Polynomial::variable(Var::k) * pullback + make_form("sigma_wrinkling").form;
    e.params = {nonneg(Var::s), nonneg(Var::k)};
    e.model_id = "wrinkling";
    e.claim_list = {{Closed, ""}, {NonnegSquare, ""}, {Transverse, ""}, {FiberPositive, ""}};
  } else {
    throw UnknownId("form " + id);
  }
  return e;
}

}  // namespace

FormEntry get_form(const std::string& id, const Assignment& params) {
  FormEntry e = make_form(id);
  e.bound = bind_params(e.params, params);
  e.form = e.form.substitute(e.bound);
  return e;
}

const std::vector<std::string>& form_ids() {
  static const std::vector<std::string> ids = {"LS",           "cusp_eps",        "eq1_birth",      "eq2_merging",
                                               "eq3_flipping", "sigma_wrinkling", "omega_wrinkling"};
  return ids;
}

}  // namespace wrinkle
