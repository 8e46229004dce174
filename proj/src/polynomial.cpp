#include "wrinkle/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

constexpr std::array<std::string_view, kNumVars> kVarNames{"t", "x", "y", "z", "s", "eps", "k", "a", "b"};

Exponents add_exponents(const Exponents& lhs, const Exponents& rhs) {
  Exponents out{};
  for (std::size_t i = 0; i < kNumVars; ++i) {
    const int sum = lhs[i] + rhs[i];
    if (sum > 255) throw DegreeError("exponent overflow");
    out[i] = static_cast<std::uint8_t>(sum);
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial value;
    bool first = true;
    for (;;) {
      skip_space();
      int sign = 1;
      if (accept('+')) {
      } else if (accept('-')) {
        sign = -1;
      } else if (!first) {
        return value;
      }
      Polynomial term = product();
      if (sign < 0) term = -term;
      value += term;
      first = false;
    }
  }

  Polynomial product() {
    Polynomial value = power();
    for (;;) {
      skip_space();
      if (accept('*')) {
        value *= power();
      } else if (accept('/')) {
        skip_space();
        const Rational divisor = number();
        if (divisor == 0) fail("division by zero");
        value *= Polynomial(Rational(1) / divisor);
      } else if (pos_ < text_.size() && (text_[pos_] == '(' || std::isalpha(static_cast<unsigned char>(text_[pos_])))) {
        value *= power();  // implicit multiplication, e.g. "3x" or "2(x+y)"
      } else {
        return value;
      }
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      const Rational e = number();
      if (e.get_den() != 1 || e < 0 || e > 64) fail("exponent must be a small non-negative integer");
      base = base.pow(static_cast<unsigned>(e.get_num().get_ui()));
    }
    return base;
  }

  Rational number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (start == pos_) fail("expected number");
    return parse_rational(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Polynomial(number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const auto name = text_.substr(start, pos_ - start);
      const auto v = var_from_name(name);
      if (!v) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Polynomial::variable(*v);
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

std::optional<Var> var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (kVarNames[i] == name) return static_cast<Var>(i);
  }
  if (name == "epsilon" || name == "e") return Var::eps;
  return std::nullopt;
}

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Exponents{}, constant);
}

Polynomial Polynomial::variable(Var v) {
  Exponents e{};
  e[static_cast<std::size_t>(v)] = 1;
  return monomial(1, e);
}

Polynomial Polynomial::monomial(const Rational& coefficient, const Exponents& exponents) {
  Polynomial p;
  p.add_term(exponents, coefficient);
  return p;
}

Polynomial Polynomial::parse(std::string_view text) { return Parser(text).parse(); }

void Polynomial::add_term(const Exponents& exponents, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

Rational Polynomial::constant_term() const { return coefficient(Exponents{}); }

Rational Polynomial::coefficient(const Exponents& exponents) const {
  const auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<Var> Polynomial::variables() const {
  std::set<Var> out;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] != 0) out.insert(static_cast<Var>(i));
    }
  }
  return out;
}

int Polynomial::degree() const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto v : e) d += v;
    best = std::max(best, d);
  }
  return best;
}

int Polynomial::degree_in(Var v) const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e[static_cast<std::size_t>(v)]));
  return best;
}

Polynomial Polynomial::derivative(Var v) const {
  const auto idx = static_cast<std::size_t>(v);
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents lowered = e;
    --lowered[idx];
    out.add_term(lowered, c * e[idx]);
  }
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

Rational Polynomial::evaluate(const Assignment& assignment) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      const auto it = assignment.find(static_cast<Var>(i));
      if (it == assignment.end()) throw UnboundVariable(std::string(kVarNames[i]));
      Rational factor;
      mpz_pow_ui(factor.get_num_mpz_t(), it->second.get_num_mpz_t(), e[i]);
      mpz_pow_ui(factor.get_den_mpz_t(), it->second.get_den_mpz_t(), e[i]);
      term *= factor;
    }
    total += term;
  }
  return total;
}

Polynomial Polynomial::substitute(const Assignment& assignment) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Rational coefficient = c;
    Exponents rest = e;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      const auto it = assignment.find(static_cast<Var>(i));
      if (it == assignment.end()) continue;
      Rational factor;
      mpz_pow_ui(factor.get_num_mpz_t(), it->second.get_num_mpz_t(), e[i]);
      mpz_pow_ui(factor.get_den_mpz_t(), it->second.get_den_mpz_t(), e[i]);
      coefficient *= factor;
      rest[i] = 0;
    }
    out.add_term(rest, coefficient);
  }
  return out;
}

Polynomial Polynomial::compose(Var v, const Polynomial& replacement) const {
  const auto idx = static_cast<std::size_t>(v);
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[idx] = 0;
    out += monomial(c, rest) * replacement.pow(e[idx]);
  }
  return out;
}

double Polynomial::evaluate_numeric(const NumericPoint& point) const {
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < kNumVars; ++i) {
      for (std::uint8_t j = 0; j < e[i]; ++j) term *= point[i];
    }
    total += term;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::multimap<int, std::pair<Exponents, Rational>, std::greater<>> ordered;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto v : e) d += v;
    ordered.emplace(d, std::make_pair(e, c));
  }
  for (const auto& [d, term] : ordered) {
    const auto& [e, c] = term;
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (magnitude != 1 || d == 0) {
      out << magnitude.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << "*";
      out << kVarNames[i];
      if (e[i] > 1) out << "^" << static_cast<int>(e[i]);
      wrote = true;
    }
  }
  return out.str();
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  Polynomial out;
  for (const auto& [el, cl] : lhs.terms_) {
    for (const auto& [er, cr] : rhs.terms_) out.add_term(add_exponents(el, er), cl * cr);
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial operator-(const Polynomial& p) {
  Polynomial out;
  for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, -c);
  return out;
}

}  // namespace wrinkle
