#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wrinkle {

using CycleClass = Eigen::Matrix<long, Eigen::Dynamic, 1>;

struct SurfaceModel {
  std::string name;
  std::vector<std::string> basis;
  Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> pairing;
  std::map<std::string, CycleClass> named;  // basis elements plus derived names such as d

  Eigen::Index rank() const { return static_cast<Eigen::Index>(basis.size()); }
  CycleClass generator(const std::string& name) const;
};

// Once-punctured torus: a, b with <a,b> = -1.
SurfaceModel torus_one_puncture();
// Doubly punctured torus: a, b, c with <a,b> = -1, <a,c> = 0, <b,c> = bc; d = b + c.
SurfaceModel torus_two_punctures(long bc = -1);
SurfaceModel surface_by_name(const std::string& name);

CycleClass parse_class(const SurfaceModel& surface, std::string_view text);
std::string format_class(const SurfaceModel& surface, const CycleClass& x);

long pairing(const SurfaceModel& surface, const CycleClass& u, const CycleClass& v);

/// power +1: x - <x,c> c; power -1: x + <x,c> c.
CycleClass dehn_twist(const SurfaceModel& surface, const CycleClass& c, const CycleClass& x, int power = 1);

struct TwistWord {
  std::vector<std::pair<CycleClass, int>> letters;  // written left to right as in a composition
};

/// "T(a+d),T(b-d),Tinv(a-b)"
TwistWord parse_word(const SurfaceModel& surface, std::string_view text);
std::string format_word(const SurfaceModel& surface, const TwistWord& word);

/// Rightmost letter acts first.
CycleClass apply_word(const SurfaceModel& surface, const TwistWord& word, const CycleClass& x);

enum class MonodromyParity { Even, Odd, Undetermined };
std::string_view monodromy_parity_name(MonodromyParity p);

MonodromyParity circle_parity_monodromy(const SurfaceModel& surface, const TwistWord& word, const CycleClass& fold_cycle);

inline constexpr std::string_view kMu1 = "T(a+d),T(b-d),T(a-b)";
inline constexpr std::string_view kMu2 = "T(a+b),T(b+d),T(a-d)";

/// Values of <b,c> in {-1, +1} for which all four monodromy identities hold.
std::vector<long> admissible_bc_signs();

}  // namespace wrinkle
