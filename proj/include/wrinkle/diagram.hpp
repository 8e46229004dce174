#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wrinkle/homology.hpp"
#include "wrinkle/models.hpp"

namespace wrinkle {

/// Sorted genera of the fiber components.
using Fiber = std::vector<int>;

struct Region {
  std::string id;
  Fiber fiber;
};

enum class ArcKind { Open, ClosedCircle };

/// A fold segment. Ends are cusp, joint or crossing ids; "" is the disc boundary.
struct FoldArc {
  std::string id;
  ArcKind kind = ArcKind::Open;
  std::array<std::string, 2> ends;
  std::string high;
  std::string low;
  std::string cycle;
};

/// Signs enter the smoothing cycle: s0*x - s1*y (standard), s0*x + s1*y (achiral).
struct Cusp {
  std::string id;
  std::array<std::string, 2> arcs;
  std::array<int, 2> signs{1, 1};
  int order = 0;
  bool reversed = false;  // born from an achiral wrinkle
};

/// Smoothed cusp: the fold continues and its cycle label changes.
struct Joint {
  std::string id;
  std::array<std::string, 2> arcs;
  std::string point;  // Lefschetz point created by the smoothing, "" once gone
};

/// Transverse double point. arcs[0], arcs[2] form one strand and arcs[1], arcs[3]
/// the other, listed in rotation order; regions[i] lies between arcs[i] and arcs[i+1].
struct Crossing {
  std::string id;
  std::array<std::string, 4> arcs;
  std::array<std::string, 4> regions;
};

struct LefschetzPoint {
  std::string id;
  std::string region;
  std::string cycle;
  Chirality chirality = Chirality::Standard;
  int order = 0;
};

struct CycleInfo {
  CycleClass cls;
  bool separating = false;
};

/// Named vanishing cycles as classes over a growing lattice, with declared geometric intersections.
struct CycleConfig {
  SurfaceModel lattice;
  std::map<std::string, CycleInfo> cycles;
  std::map<std::pair<std::string, std::string>, int> geometric;

  bool has(const std::string& name) const { return cycles.count(name) != 0; }
  int geo(const std::string& u, const std::string& v) const;
  void set_geo(const std::string& u, const std::string& v, int value);
  long pair(const std::string& u, const std::string& v) const;
  /// Appends a lattice generator pairing trivially with the others.
  CycleClass add_generator(const std::string& name);
  void set_generator_pairing(const std::string& g, const std::string& h, long value);
  void add_cycle(const std::string& name, const CycleClass& cls, bool separating = false);
  std::string fresh_name(const std::string& stem) const;
};

struct FibrationDiagram {
  std::vector<Region> regions;
  std::vector<FoldArc> arcs;
  std::vector<Cusp> cusps;
  std::vector<Joint> joints;
  std::vector<Crossing> crossings;
  std::vector<LefschetzPoint> points;
  CycleConfig cycles;

  Region* region(const std::string& id);
  const Region* region(const std::string& id) const;
  FoldArc* arc(const std::string& id);
  const FoldArc* arc(const std::string& id) const;
  Cusp* cusp(const std::string& id);
  const Cusp* cusp(const std::string& id) const;
  Joint* joint(const std::string& id);
  const Joint* joint(const std::string& id) const;
  Crossing* crossing(const std::string& id);
  const Crossing* crossing(const std::string& id) const;
  LefschetzPoint* point(const std::string& id);
  const LefschetzPoint* point(const std::string& id) const;

  bool has_id(const std::string& id) const;
  std::string fresh_id(const std::string& stem) const;
  std::size_t cell_count() const;
};

/// Low fibers allowed across a fold whose high side is `high`.
std::vector<Fiber> surgered_fibers(const Fiber& high, bool separating);

std::vector<std::string> validate(const FibrationDiagram& d);

bool isomorphic(const FibrationDiagram& d1, const FibrationDiagram& d2);

/// Fold components: arcs joined through cusps, joints and crossing strands.
std::vector<std::vector<std::string>> fold_components(const FibrationDiagram& d);
int closed_circle_count(const FibrationDiagram& d);

/// Twist word of the Lefschetz points left by smoothing the cusps of the circle through `arc`,
/// ordered by cusp order with the lowest order acting first, and the fold cycle it acts on.
struct CircleMonodromy {
  TwistWord word;
  CycleClass fold_cycle;
  std::string fold_cycle_name;
  MonodromyParity parity;
};
CircleMonodromy circle_monodromy(const FibrationDiagram& d, const std::string& arc);

nlohmann::json to_json(const FibrationDiagram& d);
FibrationDiagram diagram_from_json(const nlohmann::json& j);

}  // namespace wrinkle
