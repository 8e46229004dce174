#include "wrinkle/homology.hpp"

#include <cctype>

#include "wrinkle/errors.hpp"

namespace wrinkle {

CycleClass SurfaceModel::generator(const std::string& label) const {
  auto it = named.find(label);
  if (it == named.end()) throw UnknownId("cycle " + label + " on " + name);
  return it->second;
}

namespace {

SurfaceModel make_surface(std::string name, std::vector<std::string> basis) {
  SurfaceModel s;
  s.name = std::move(name);
  s.basis = std::move(basis);
  s.pairing = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>::Zero(s.rank(), s.rank());
  for (Eigen::Index i = 0; i < s.rank(); ++i) {
    CycleClass e = CycleClass::Zero(s.rank());
    e(i) = 1;
    s.named[s.basis[static_cast<std::size_t>(i)]] = e;
  }
  return s;
}

void set_pair(SurfaceModel& s, Eigen::Index i, Eigen::Index j, long value) {
  s.pairing(i, j) = value;
  s.pairing(j, i) = -value;
}

void check_dims(const SurfaceModel& s, const CycleClass& u) {
  if (u.size() != s.rank()) throw DimensionMismatch("class of rank " + std::to_string(u.size()) + " on " + s.name);
}

}  // namespace

SurfaceModel torus_one_puncture() {
  SurfaceModel s = make_surface("torus1p", {"a", "b"});
  set_pair(s, 0, 1, -1);
  return s;
}

SurfaceModel torus_two_punctures(long bc) {
  SurfaceModel s = make_surface("torus2p", {"a", "b", "c"});
  set_pair(s, 0, 1, -1);
  set_pair(s, 0, 2, 0);
  set_pair(s, 1, 2, bc);
  s.named["d"] = s.named["b"] + s.named["c"];
  return s;
}

SurfaceModel surface_by_name(const std::string& name) {
  if (name == "torus1p") return torus_one_puncture();
  if (name == "torus2p") return torus_two_punctures();
  throw UnknownId("surface " + name);
}

CycleClass parse_class(const SurfaceModel& surface, std::string_view text) {
  CycleClass out = CycleClass::Zero(surface.rank());
  std::size_t i = 0;
  bool any = false;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    long sign = 1;
    while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -sign;
      ++i;
      skip();
    }
    long coefficient = 1;
    bool numeral = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      numeral = true;
      coefficient = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) coefficient = coefficient * 10 + (text[i++] - '0');
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    std::string name;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) name += text[i++];
    if (name.empty() && !(numeral && coefficient == 0)) throw ParseError("expected a cycle name in '" + std::string(text) + "'");
    if (!name.empty()) out += sign * coefficient * surface.generator(name);
    any = true;
    skip();
    if (i < text.size() && text[i] != '+' && text[i] != '-') throw ParseError("unexpected '" + std::string(1, text[i]) + "'");
  }
  if (!any) throw ParseError("empty cycle expression");
  return out;
}

std::string format_class(const SurfaceModel& surface, const CycleClass& x) {
  check_dims(surface, x);
  std::string out;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const long v = x(i);
    if (v == 0) continue;
    if (v < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (v != 1 && v != -1) out += std::to_string(v < 0 ? -v : v);
    out += surface.basis[static_cast<std::size_t>(i)];
  }
  return out.empty() ? "0" : out;
}

long pairing(const SurfaceModel& surface, const CycleClass& u, const CycleClass& v) {
  check_dims(surface, u);
  check_dims(surface, v);
  return u.dot(surface.pairing * v);
}

CycleClass dehn_twist(const SurfaceModel& surface, const CycleClass& c, const CycleClass& x, int power) {
  if (power != 1 && power != -1) throw Unsupported("twist power must be +1 or -1");
  return x - power * pairing(surface, x, c) * c;
}

TwistWord parse_word(const SurfaceModel& surface, std::string_view text) {
  TwistWord word;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
    if (i >= text.size()) break;
    int power = 1;
    if (text.substr(i, 5) == "Tinv(") {
      power = -1;
      i += 5;
    } else if (text.substr(i, 2) == "T(") {
      i += 2;
    } else {
      throw ParseError("expected T(...) or Tinv(...) in '" + std::string(text) + "'");
    }
    const std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) throw ParseError("unbalanced parenthesis in '" + std::string(text) + "'");
    word.letters.emplace_back(parse_class(surface, text.substr(i, close - i)), power);
    i = close + 1;
  }
  if (word.letters.empty()) throw ParseError("empty twist word");
  return word;
}

std::string format_word(const SurfaceModel& surface, const TwistWord& word) {
  std::string out;
  for (const auto& [c, power] : word.letters) {
    if (!out.empty()) out += ",";
    out += (power == 1 ? "T(" : "Tinv(") + format_class(surface, c) + ")";
  }
  return out;
}

CycleClass apply_word(const SurfaceModel& surface, const TwistWord& word, const CycleClass& x) {
  if (word.letters.empty()) throw Unsupported("empty twist word");
  CycleClass out = x;
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) out = dehn_twist(surface, it->first, out, it->second);
  return out;
}

std::string_view monodromy_parity_name(MonodromyParity p) {
  switch (p) {
    case MonodromyParity::Even: return "Even";
    case MonodromyParity::Odd: return "Odd";
    case MonodromyParity::Undetermined: return "Undetermined";
  }
  return "unknown";
}

MonodromyParity circle_parity_monodromy(const SurfaceModel& surface, const TwistWord& word, const CycleClass& fold_cycle) {
  if (fold_cycle.isZero()) throw Unsupported("fold cycle must be nonzero");
  const CycleClass image = apply_word(surface, word, fold_cycle);
  if (image == fold_cycle) return MonodromyParity::Even;
  if (image == -fold_cycle) return MonodromyParity::Odd;
  return MonodromyParity::Undetermined;
}

std::vector<long> admissible_bc_signs() {
  std::vector<long> out;
  for (long bc : {-1L, 1L}) {
    const SurfaceModel s = torus_two_punctures(bc);
    const CycleClass a = s.generator("a");
    const CycleClass b = s.generator("b");
    const bool ok = dehn_twist(s, parse_class(s, "a-b"), a) == b &&
                    dehn_twist(s, parse_class(s, "a+b"), a, -1) == -b &&
                    apply_word(s, parse_word(s, kMu1), a) == -a && apply_word(s, parse_word(s, kMu2), a) == a;
    if (ok) out.push_back(bc);
  }
  return out;
}

}  // namespace wrinkle
