#include "wrinkle/jetstab.hpp"

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

constexpr std::array<std::string_view, kJetDim> kBasisNames{"1", "t", "x", "tx", "x^2", "tx^2", "x^3"};

Polynomial basis_monomial(int index) {
  Exponents e{};
  e[static_cast<std::size_t>(Var::t)] = static_cast<std::uint8_t>(kJetBasis[static_cast<std::size_t>(index)][0]);
  e[static_cast<std::size_t>(Var::x)] = static_cast<std::uint8_t>(kJetBasis[static_cast<std::size_t>(index)][1]);
  return Polynomial::monomial(1, e);
}

}  // namespace

std::string_view jet_basis_name(int index) {
  if (index < 0 || index >= kJetDim) throw UnknownId("jet basis index " + std::to_string(index));
  return kBasisNames[static_cast<std::size_t>(index)];
}

JetVector reduce_jet(const Polynomial& p) {
  JetVector out = JetVector::Constant(Rational(0));
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t v = 0; v < kNumVars; ++v) {
      if (e[v] != 0 && v != static_cast<std::size_t>(Var::t) && v != static_cast<std::size_t>(Var::x)) {
        throw Unsupported("jet reduction only accepts polynomials in t and x");
      }
    }
    const int dt = e[static_cast<std::size_t>(Var::t)];
    const int dx = e[static_cast<std::size_t>(Var::x)];
    if (dt >= 2 || dt + dx >= 4) continue;
    for (int i = 0; i < kJetDim; ++i) {
      if (kJetBasis[static_cast<std::size_t>(i)][0] == dt && kJetBasis[static_cast<std::size_t>(i)][1] == dx) out(i) += c;
    }
  }
  return out;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Cubic: return "cubic";
    case Family::Quartic1: return "quartic1";
    case Family::Quartic2: return "quartic2";
  }
  return "unknown";
}

Family family_from_name(std::string_view name) {
  if (name == "cubic") return Family::Cubic;
  if (name == "quartic1") return Family::Quartic1;
  if (name == "quartic2") return Family::Quartic2;
  throw UnknownId("family " + std::string(name));
}

Polynomial family_polynomial(Family f, const Rational& a, const Rational& b) {
  std::string_view text;
  switch (f) {
    case Family::Cubic: text = "x^3 + (s + a*t^2 + b*t)*x"; break;
    case Family::Quartic1: text = "x^4 + (s + a*t^2 + b*t)*x^2 + t*x"; break;
    case Family::Quartic2: text = "x^4 + t*x^2 + (s + a*t^2 + b*t)*x"; break;
  }
  return Polynomial::parse(text).substitute({{Var::a, a}, {Var::b, b}});
}

TangentSpace tangent_space(Family f, const Rational& a, const Rational& b) {
  const Polynomial full = family_polynomial(f, a, b);
  const Polynomial f0 = full.substitute({{Var::s, 0}});
  const Polynomial fx = f0.derivative(Var::x);
  const Polynomial ft = f0.derivative(Var::t);
  // Monomials outside the basis only produce terms that vanish in the quotient.
  if (fx.constant_term() != 0) throw Unsupported("x-derivative has a constant term");

  std::vector<JetVector> generators;
  for (int i = 0; i < kJetDim; ++i) generators.push_back(reduce_jet(fx * basis_monomial(i)));
  const Polynomial t = vars::t();
  for (const Polynomial& g : {Polynomial(1), t}) {
    generators.push_back(reduce_jet(ft * g));
    generators.push_back(reduce_jet(g));
    generators.push_back(reduce_jet(f0 * g));
  }
  generators.push_back(reduce_jet(full.derivative(Var::s).substitute({{Var::s, 0}})));

  TangentSpace out;
  out.span = RationalMatrix(kJetDim, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t j = 0; j < generators.size(); ++j) out.span.col(static_cast<Eigen::Index>(j)) = generators[j];
  out.rank = exact_rank(out.span);

  RationalMatrix grown = out.span;
  Eigen::Index rank = out.rank;
  for (int i = 0; i < kJetDim && rank < kJetDim; ++i) {
    RationalMatrix trial(kJetDim, grown.cols() + 1);
    trial << grown, JetVector::Unit(i);
    const Eigen::Index r = exact_rank(trial);
    if (r > rank) {
      grown = trial;
      rank = r;
      out.missing.emplace_back(kBasisNames[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

bool is_11_stable(Family f, const Rational& a, const Rational& b) { return tangent_space(f, a, b).rank == kJetDim; }

std::string_view normal_form_name(NormalForm h) {
  switch (h) {
    case NormalForm::h0: return "h0";
    case NormalForm::h1: return "h1";
    case NormalForm::h2: return "h2";
    case NormalForm::h3: return "h3";
  }
  return "unknown";
}

Polynomial normal_form_polynomial(NormalForm h) {
  switch (h) {
    case NormalForm::h0: return Polynomial::parse("x^3 + t*x");
    case NormalForm::h1: return Polynomial::parse("x^3 + t^2*x + s*x");
    case NormalForm::h2: return Polynomial::parse("x^3 - t^2*x + s*x");
    case NormalForm::h3: return Polynomial::parse("x^4 + s*x^2 + t*x");
  }
  throw UnknownId("normal form");
}

std::optional<NormalForm> classify_family(Family f, const Rational& a, const Rational& b) {
  switch (f) {
    case Family::Cubic:
      if (b != 0) return NormalForm::h0;
      if (a > 0) return NormalForm::h1;
      if (a < 0) return NormalForm::h2;
      return std::nullopt;
    case Family::Quartic1:
      return NormalForm::h3;
    case Family::Quartic2:
      if (b != 0) return NormalForm::h3;
      return std::nullopt;
  }
  throw UnknownId("family");
}

}  // namespace wrinkle
