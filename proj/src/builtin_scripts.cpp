#include <array>

#include "wrinkle/errors.hpp"
#include "wrinkle/moves.hpp"

namespace wrinkle {

namespace {

// Expected diagrams are transcribed by hand from pictures and use their own ids.

constexpr std::string_view kFig8 = R"json({
  "name": "fig8",
  "transcription": true,
  "initial": {
    "regions": [{"id": "H", "fiber": [1]}, {"id": "L", "fiber": [0]}],
    "arcs": [{"id": "B0", "ends": ["", ""], "high": "H", "low": "L", "cycle": "b"}],
    "lefschetz": [{"id": "P", "region": "H", "cycle": "a"}],
    "cycles": {
      "generators": ["a", "b"],
      "pairing": [["a", "b", -1]],
      "classes": {"a": {"class": "a"}, "b": {"class": "b"}},
      "geometric": [["a", "b", 1]]
    }
  },
  "steps": [
    {"kind": "wrinkling", "site": ["P"]},
    {"kind": "cusp_arc_isotopy", "site": ["C2", "B0"]},
    {"kind": "merging", "site": ["A4", "A1"]},
    {"kind": "inverse_flipping", "site": ["X1"]},
    {"kind": "inverse_flipping", "site": ["X2"]}
  ],
  "expected": {
    "regions": [{"id": "H", "fiber": [1]}, {"id": "L", "fiber": [0]}],
    "arcs": [
      {"id": "U", "ends": ["", "K"], "high": "H", "low": "L", "cycle": "u"},
      {"id": "V", "ends": ["", "K"], "high": "H", "low": "L", "cycle": "v"}
    ],
    "cusps": [{"id": "K", "arcs": ["U", "V"]}],
    "cycles": {
      "generators": ["u", "v"],
      "pairing": [["u", "v", -1]],
      "classes": {"u": {"class": "u"}, "v": {"class": "v"}},
      "geometric": [["u", "v", 1]]
    }
  }
})json";

constexpr std::string_view kThm61 = R"json({
  "name": "thm61",
  "transcription": true,
  "initial": {
    "regions": [{"id": "O", "fiber": [1]}, {"id": "D1", "fiber": [0]}, {"id": "D2", "fiber": [0]}],
    "arcs": [
      {"id": "Z1", "kind": "closed", "high": "O", "low": "D1", "cycle": "z1"},
      {"id": "Z2", "kind": "closed", "high": "O", "low": "D2", "cycle": "z2"}
    ],
    "cycles": {"generators": ["z1", "z2"], "classes": {"z1": {"class": "z1"}, "z2": {"class": "z2"}}}
  },
  "steps": [
    {"kind": "flipping", "site": ["Z1"]},
    {"kind": "flipping", "site": ["Z2"]},
    {"kind": "inverse_merging", "site": ["C1", "C3"]}
  ],
  "expected": {
    "regions": [{"id": "O", "fiber": [1]}, {"id": "E1", "fiber": [0]}, {"id": "E2", "fiber": [0]}, {"id": "T", "fiber": [2]}],
    "arcs": [
      {"id": "Z1", "ends": ["Y1", "Y1"], "high": "O", "low": "E1", "cycle": "z1"},
      {"id": "Z2", "ends": ["Y2", "Y2"], "high": "O", "low": "E2", "cycle": "z2"},
      {"id": "Top", "ends": ["Y1", "Y2"], "high": "T", "low": "O", "cycle": "c"},
      {"id": "Mid", "ends": ["K1", "K2"], "high": "T", "low": "O", "cycle": "b"},
      {"id": "L1", "ends": ["K1", "Y1"], "high": "T", "low": "O", "cycle": "a1"},
      {"id": "L2", "ends": ["K2", "Y2"], "high": "T", "low": "O", "cycle": "a2"}
    ],
    "cusps": [
      {"id": "K1", "arcs": ["L1", "Mid"], "signs": [1, -1]},
      {"id": "K2", "arcs": ["L2", "Mid"], "signs": [1, -1]}
    ],
    "crossings": [
      {"id": "Y1", "arcs": ["Top", "L1", "Z1", "Z1"], "regions": ["T", "O", "E1", "O"]},
      {"id": "Y2", "arcs": ["Top", "L2", "Z2", "Z2"], "regions": ["T", "O", "E2", "O"]}
    ],
    "cycles": {
      "generators": ["z1", "z2", "a1", "b", "c", "a2"],
      "pairing": [["a1", "b", -1], ["b", "c", -1], ["a2", "b", -1]],
      "classes": {
        "z1": {"class": "z1"}, "z2": {"class": "z2"}, "a1": {"class": "a1"},
        "a2": {"class": "a2"}, "b": {"class": "b"}, "c": {"class": "c"}
      },
      "geometric": [["a1", "b", 1], ["b", "c", 1], ["a2", "b", 1]]
    }
  }
})json";

constexpr std::string_view kConnectedness = R"json({
  "name": "connectedness",
  "transcription": true,
  "initial": {
    "regions": [{"id": "N", "fiber": [2]}, {"id": "S", "fiber": [1, 1]}],
    "arcs": [{"id": "Z", "kind": "closed", "high": "N", "low": "S", "cycle": "s"}],
    "cycles": {"generators": [], "classes": {"s": {"class": "0", "separating": true}}}
  },
  "steps": [
    {"kind": "flipping", "site": ["Z"]},
    {"kind": "flipping", "site": ["Z"]},
    {"kind": "leg_exchange_isotopy", "site": ["S"]}
  ],
  "expected": {
    "regions": [{"id": "N", "fiber": [2]}, {"id": "T", "fiber": [3]}],
    "arcs": [
      {"id": "E1", "ends": ["K3", "K1"], "high": "T", "low": "N", "cycle": "c"},
      {"id": "E2", "ends": ["K1", "K2"], "high": "T", "low": "N", "cycle": "b"},
      {"id": "E3", "ends": ["K2", "K4"], "high": "T", "low": "N", "cycle": "a"},
      {"id": "E4", "ends": ["K3", "K4"], "high": "T", "low": "N", "cycle": "b2"}
    ],
    "cusps": [
      {"id": "K1", "arcs": ["E1", "E2"]},
      {"id": "K2", "arcs": ["E3", "E2"], "signs": [1, -1]},
      {"id": "K3", "arcs": ["E1", "E4"]},
      {"id": "K4", "arcs": ["E3", "E4"], "signs": [1, -1]}
    ],
    "cycles": {
      "generators": ["a", "b", "c", "b2"],
      "pairing": [["a", "b", -1], ["b", "c", -1], ["a", "b2", -1], ["b2", "c", -1]],
      "classes": {"a": {"class": "a"}, "b": {"class": "b"}, "c": {"class": "c"}, "b2": {"class": "b2"}},
      "geometric": [["a", "b", 1], ["b", "c", 1], ["a", "b2", 1], ["b2", "c", 1]]
    }
  }
})json";

constexpr std::string_view kAchiralRemoval = R"json({
  "name": "achiral_removal",
  "transcription": true,
  "initial": {
    "regions": [{"id": "H", "fiber": [1]}],
    "lefschetz": [{"id": "P", "region": "H", "cycle": "a", "chirality": "achiral"}],
    "cycles": {"generators": ["a"], "classes": {"a": {"class": "a"}}}
  },
  "steps": [
    {"kind": "achiral_wrinkling", "site": ["P"]},
    {"kind": "achiral_cusp_smoothing", "site": ["C1"]},
    {"kind": "achiral_cusp_smoothing", "site": ["C2"]},
    {"kind": "achiral_cusp_smoothing", "site": ["C3"]}
  ],
  "expected": {
    "regions": [{"id": "H", "fiber": [1]}, {"id": "I", "fiber": [2]}],
    "arcs": [
      {"id": "Wa", "ends": ["J0", "J2"], "high": "I", "low": "H", "cycle": "a"},
      {"id": "Wb", "ends": ["J1", "J2"], "high": "I", "low": "H", "cycle": "b"},
      {"id": "Wd", "ends": ["J0", "J1"], "high": "I", "low": "H", "cycle": "d"}
    ],
    "joints": [
      {"id": "J0", "arcs": ["Wa", "Wd"], "point": "Q0"},
      {"id": "J1", "arcs": ["Wd", "Wb"], "point": "Q1"},
      {"id": "J2", "arcs": ["Wb", "Wa"], "point": "Q2"}
    ],
    "lefschetz": [
      {"id": "Q0", "region": "I", "cycle": "l0", "order": 0},
      {"id": "Q1", "region": "I", "cycle": "l1", "order": 1},
      {"id": "Q2", "region": "I", "cycle": "l2", "order": 2}
    ],
    "cycles": {
      "generators": ["a", "b", "c"],
      "pairing": [["a", "b", -1], ["b", "c", -1]],
      "classes": {
        "a": {"class": "a"}, "b": {"class": "b"}, "d": {"class": "b+c"},
        "l0": {"class": "a-b-c"}, "l1": {"class": "2b+c"}, "l2": {"class": "a+b"}
      },
      "geometric": [
        ["a", "b", 1], ["a", "d", 1], ["b", "d", 1],
        ["l0", "a", 1], ["l0", "d", 1], ["l0", "b", 2],
        ["l1", "d", 1], ["l1", "b", 1], ["l1", "a", 2], ["l1", "l0", 3],
        ["l2", "b", 1], ["l2", "a", 1], ["l2", "d", 2], ["l2", "l0", 3], ["l2", "l1", 3]
      ]
    }
  },
  "parity": {"arc": "A1", "expect": "Even"}
})json";

constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kScripts{{
    {"fig8", kFig8},
    {"thm61", kThm61},
    {"connectedness", kConnectedness},
    {"achiral_removal", kAchiralRemoval},
}};

}  // namespace

std::vector<std::string> builtin_script_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : kScripts) out.emplace_back(name);
  return out;
}

MoveScript builtin_script(std::string_view name) {
  for (const auto& [n, text] : kScripts) {
    if (n == name) return script_from_json(nlohmann::json::parse(text));
  }
  throw UnknownId("builtin script " + std::string(name));
}

}  // namespace wrinkle
