#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wrinkle/diagram.hpp"

namespace wrinkle {

enum class MoveKind {
  Birth,
  InverseBirth,
  Merging,
  InverseMerging,
  Flipping,
  InverseFlipping,
  Wrinkling,
  InverseWrinkling,
  CuspSmoothing,
  AchiralCuspSmoothing,
  AchiralWrinkling,
  LegExchangeIsotopy,
  CuspArcIsotopy,
};

std::string_view move_kind_name(MoveKind k);
MoveKind move_kind_from_name(std::string_view name);

/// Site ids per kind:
///   birth [region]; inverse_birth, inverse_wrinkling, leg_exchange_isotopy [region];
///   merging [arc, arc]; inverse_merging [cusp, cusp] or [joint, joint];
///   flipping [arc]; inverse_flipping [crossing]; wrinkling, achiral_wrinkling [point];
///   cusp_smoothing, achiral_cusp_smoothing [cusp]; cusp_arc_isotopy [cusp, arc].
/// cycles names created cycles by role (a, b, c, d, l). options: component, anchor, keep.
struct MoveSpec {
  MoveKind kind = MoveKind::Birth;
  std::vector<std::string> site;
  std::map<std::string, std::string> cycles;
  std::map<std::string, std::string> options;
};

/// nullopt when the move applies. An invalid input diagram is itself a violation.
std::optional<std::string> check_precondition(const FibrationDiagram& d, const MoveSpec& m);

FibrationDiagram apply_move(const FibrationDiagram& d, const MoveSpec& m);

struct CellCounts {
  std::size_t regions = 0, arcs = 0, cusps = 0, joints = 0, crossings = 0, points = 0;
  int circles = 0;
  friend bool operator==(const CellCounts&, const CellCounts&) = default;
};
CellCounts cell_counts(const FibrationDiagram& d);

struct ParityExpectation {
  std::string arc;
  MonodromyParity expect = MonodromyParity::Even;
};

struct MoveScript {
  std::string name;
  bool transcription = false;  // expected diagram transcribed from a picture
  FibrationDiagram initial;
  std::vector<MoveSpec> steps;
  std::optional<FibrationDiagram> expected;
  std::optional<ParityExpectation> parity;
};

struct TraceEntry {
  std::size_t step;
  MoveSpec move;
  CellCounts before;
  CellCounts after;
};

struct ScriptResult {
  FibrationDiagram final;
  std::vector<TraceEntry> trace;
  std::optional<bool> matches_expected;
  std::optional<MonodromyParity> parity;
  std::optional<bool> parity_matches;
  bool pass() const;
};

ScriptResult run_script(const MoveScript& script);

MoveScript script_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MoveSpec& m);
nlohmann::json to_json(const ScriptResult& r);

std::vector<std::string> builtin_script_names();
MoveScript builtin_script(std::string_view name);

}  // namespace wrinkle
