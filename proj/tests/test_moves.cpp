#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "wrinkle/errors.hpp"
#include "wrinkle/moves.hpp"

using namespace wrinkle;

namespace {

FibrationDiagram parse(const char* text) { return diagram_from_json(nlohmann::json::parse(text)); }

MoveSpec move(MoveKind kind, std::vector<std::string> site, std::map<std::string, std::string> cycles = {}) {
  return {kind, std::move(site), std::move(cycles), {}};
}

// Region of genus 1 holding one standard and one achiral point.
constexpr const char* kPoints = R"({
  "regions": [{"id": "H", "fiber": [1]}],
  "lefschetz": [
    {"id": "P", "region": "H", "cycle": "a"},
    {"id": "Q", "region": "H", "cycle": "a", "chirality": "achiral"}
  ],
  "cycles": {"generators": ["a"], "classes": {"a": {"class": "a"}}}
})";

// Two folds facing a common high region M, with cycles meeting once.
constexpr const char* kStrip = R"({
  "regions": [{"id": "L1", "fiber": [0]}, {"id": "M", "fiber": [1]}, {"id": "L2", "fiber": [0]}],
  "arcs": [
    {"id": "F1", "ends": ["", ""], "high": "M", "low": "L1", "cycle": "x"},
    {"id": "F2", "ends": ["", ""], "high": "M", "low": "L2", "cycle": "y"}
  ],
  "cycles": {
    "generators": ["x", "y"], "pairing": [["x", "y", -1]],
    "classes": {"x": {"class": "x"}, "y": {"class": "y"}},
    "geometric": [["x", "y", 1]]
  }
})";

template <typename T>
std::vector<std::string> new_ids(const std::vector<T>& before, const std::vector<T>& after) {
  std::set<std::string> old;
  for (const auto& c : before) old.insert(c.id);
  std::vector<std::string> out;
  for (const auto& c : after) {
    if (!old.count(c.id)) out.push_back(c.id);
  }
  return out;
}

const CycleClass& cls(const FibrationDiagram& d, const std::string& name) { return d.cycles.cycles.at(name).cls; }

// Strip of genus g with random standard points in L1 and M and an optional circle in L1.
FibrationDiagram random_diagram(std::mt19937_64& rng) {
  const int g = std::uniform_int_distribution<int>(1, 3)(rng);
  FibrationDiagram d;
  for (const std::string name : {"x", "y"}) d.cycles.add_cycle(name, d.cycles.add_generator(name));
  d.cycles.set_generator_pairing("x", "y", -1);
  d.cycles.set_geo("x", "y", 1);
  d.regions = {{"L1", {g}}, {"M", {g + 1}}, {"L2", {g}}};
  d.arcs.push_back({"F1", ArcKind::Open, {"", ""}, "M", "L1", "x"});
  d.arcs.push_back({"F2", ArcKind::Open, {"", ""}, "M", "L2", "y"});
  if (std::bernoulli_distribution(0.5)(rng)) {
    d.cycles.add_cycle("z", d.cycles.add_generator("z"));
    d.regions.push_back({"D", {g - 1}});
    d.arcs.push_back({"Z", ArcKind::ClosedCircle, {"", ""}, "L1", "D", "z"});
  }
  const int points = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < points; ++i) {
    const std::string c = "p" + std::to_string(i);
    d.cycles.add_cycle(c, d.cycles.add_generator(c));
    d.points.push_back({"P" + std::to_string(i), i % 2 ? "M" : "L1", c, Chirality::Standard, 0});
  }
  REQUIRE(validate(d).empty());
  return d;
}

template <typename T>
std::string pick(std::mt19937_64& rng, const std::vector<T>& cells) {
  return cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)].id;
}

}  // namespace

TEST_CASE("move kind names") {
  for (int k = 0; k <= static_cast<int>(MoveKind::CuspArcIsotopy); ++k) {
    const auto kind = static_cast<MoveKind>(k);
    CHECK(move_kind_from_name(move_kind_name(kind)) == kind);
  }
  CHECK(move_kind_name(MoveKind::InverseFlipping) == "inverse_flipping");
  CHECK_THROWS_AS(move_kind_from_name("twisting"), UnknownId);
}

TEST_CASE("preconditions") {
  const auto pts = parse(kPoints);
  CHECK_FALSE(check_precondition(pts, move(MoveKind::Wrinkling, {"P"})));
  CHECK(check_precondition(pts, move(MoveKind::Wrinkling, {"Q"})));
  CHECK(check_precondition(pts, move(MoveKind::AchiralWrinkling, {"P"})));
  CHECK_FALSE(check_precondition(pts, move(MoveKind::AchiralWrinkling, {"Q"})));
  CHECK(check_precondition(pts, move(MoveKind::Wrinkling, {"nope"})));
  CHECK(check_precondition(pts, move(MoveKind::Wrinkling, {"P", "Q"})));
  CHECK(check_precondition(pts, move(MoveKind::CuspSmoothing, {"P"})));
  CHECK(check_precondition(pts, move(MoveKind::Wrinkling, {"P"}, {{"b", "a"}})));

  const auto strip = parse(kStrip);
  CHECK_FALSE(check_precondition(strip, move(MoveKind::Merging, {"F1", "F2"})));
  CHECK(check_precondition(strip, move(MoveKind::Merging, {"F1", "F1"})));
  auto disjoint = strip;
  disjoint.cycles.set_generator_pairing("x", "y", 0);
  disjoint.cycles.set_geo("x", "y", 0);
  CHECK(check_precondition(disjoint, move(MoveKind::Merging, {"F1", "F2"})));

  auto broken = strip;
  broken.regions[0].fiber = {-1};
  const auto why = check_precondition(broken, move(MoveKind::Birth, {"M"}));
  REQUIRE(why);
  CHECK(why->find("invalid") != std::string::npos);
  CHECK_THROWS_AS(apply_move(broken, move(MoveKind::Birth, {"M"})), MoveRejected);
}

TEST_CASE("inverse merging needs a connected middle fiber") {
  auto strip = parse(kStrip);
  const auto merged = apply_move(strip, move(MoveKind::Merging, {"F1", "F2"}));
  const auto cusps = new_ids(strip.cusps, merged.cusps);
  REQUIRE(cusps.size() == 2);
  CHECK_FALSE(check_precondition(merged, move(MoveKind::InverseMerging, cusps)));

  // The same picture with an extra sphere component in every fiber.
  auto split = merged;
  for (auto& r : split.regions) r.fiber = r.fiber == Fiber{0} ? Fiber{0, 1} : Fiber{0, 2};
  REQUIRE(validate(split).empty());
  const auto why = check_precondition(split, move(MoveKind::InverseMerging, cusps));
  REQUIRE(why);
  CHECK(why->find("disconnected") != std::string::npos);
}

TEST_CASE("birth") {
  const auto d = parse(R"({
    "regions": [{"id": "R", "fiber": [1]}],
    "cycles": {"generators": [], "classes": {}}
  })");
  const auto out = apply_move(d, move(MoveKind::Birth, {"R"}));
  CHECK(validate(out).empty());
  const auto before = cell_counts(d);
  const auto after = cell_counts(out);
  CHECK(after.regions == before.regions + 1);
  CHECK(after.arcs == before.arcs + 2);
  CHECK(after.cusps == before.cusps + 2);
  CHECK(after.circles == before.circles + 1);
  const auto inner = new_ids(d.regions, out.regions);
  REQUIRE(inner.size() == 1);
  CHECK(out.region(inner[0])->fiber == Fiber{2});
  CHECK(out.cycles.geo("a", "b") == 1);
  CHECK(std::abs(out.cycles.pair("a", "b")) == 1);
}

TEST_CASE("cusp smoothing cycles") {
  const auto d = apply_move(parse(R"({"regions": [{"id": "R", "fiber": [0]}], "cycles": {"generators": [], "classes": {}}})"),
                            move(MoveKind::Birth, {"R"}));
  const std::string cusp = d.cusps[0].id;
  const auto a = cls(d, "a");
  const auto b = cls(d, "b");

  const auto s = apply_move(d, move(MoveKind::CuspSmoothing, {cusp}));
  REQUIRE(s.points.size() == 1);
  CHECK(cls(s, s.points[0].cycle) == a - b);
  CHECK(s.points[0].chirality == Chirality::Standard);
  CHECK(s.points[0].region == d.arcs[0].high);
  // The twist along a-b carries a to b.
  TwistWord w;
  w.letters.emplace_back(a - b, 1);
  CHECK(apply_word(s.cycles.lattice, w, a) == b);

  const auto t = apply_move(d, move(MoveKind::AchiralCuspSmoothing, {cusp}, {{"l", "c"}}));
  REQUIRE(t.points.size() == 1);
  CHECK(t.points[0].cycle == "c");
  CHECK(cls(t, "c") == a + b);
  CHECK(t.points[0].chirality == Chirality::Achiral);
  // The inverse twist along a+b carries a to -b.
  TwistWord v;
  v.letters.emplace_back(a + b, -1);
  CHECK(apply_word(t.cycles.lattice, v, a) == -b);

  const auto before = cell_counts(d);
  const auto after = cell_counts(s);
  CHECK(after.cusps == before.cusps - 1);
  CHECK(after.points == before.points + 1);
  CHECK(after.joints == before.joints + 1);
  CHECK(after.circles == before.circles);
}

TEST_CASE("wrinkling") {
  const auto d = parse(kPoints);
  const auto out = apply_move(d, move(MoveKind::Wrinkling, {"P"}));
  CHECK(validate(out).empty());
  const auto before = cell_counts(d);
  const auto after = cell_counts(out);
  CHECK(after.points + 1 == before.points);
  CHECK(after.cusps == before.cusps + 3);
  CHECK(after.arcs == before.arcs + 3);
  CHECK(after.circles == before.circles + 1);
  CHECK(out.region("R1")->fiber == Fiber{2});

  std::set<std::string> cycles;
  for (const auto& a : out.arcs) cycles.insert(a.cycle);
  CHECK(cycles == std::set<std::string>{"a", "b", "d"});
  for (const auto& [u, v] : {std::pair{"a", "b"}, {"a", "d"}, {"b", "d"}}) CHECK(out.cycles.geo(u, v) == 1);
  CHECK(cls(out, "d") == cls(out, "b") + out.cycles.lattice.generator("c"));

  const auto ach = apply_move(d, move(MoveKind::AchiralWrinkling, {"Q"}));
  CHECK(std::all_of(ach.cusps.begin(), ach.cusps.end(), [](const Cusp& c) { return c.reversed; }));
}

TEST_CASE("flip cusps smooth to a+b and c-b") {
  const auto strip = parse(kStrip);
  const auto f = apply_move(strip, move(MoveKind::Flipping, {"F1"}));
  const auto counts = cell_counts(f);
  CHECK(counts.crossings == 1);
  CHECK(counts.cusps == 2);
  CHECK(counts.regions == 4);
  const auto a = cls(f, "a"), b = cls(f, "b"), c = cls(f, "c");
  std::set<std::vector<long>> smoothed;
  for (const auto& k : f.cusps) {
    const auto s = apply_move(f, move(MoveKind::CuspSmoothing, {k.id}));
    const auto& p = s.points.back();
    const CycleClass l = cls(s, p.cycle);
    smoothed.insert({l.data(), l.data() + l.size()});
  }
  const CycleClass ab = a + b, cb = c - b;
  CHECK(smoothed == std::set<std::vector<long>>{{ab.data(), ab.data() + ab.size()}, {cb.data(), cb.data() + cb.size()}});

  SUBCASE("existing cycles must form the flip configuration") {
    auto g = f;
    CHECK_FALSE(check_precondition(g, move(MoveKind::Flipping, {"F2"}, {{"a", "a"}, {"b", "b"}, {"c", "c"}})));
    g.cycles.set_geo("a", "c", 1);
    CHECK(check_precondition(g, move(MoveKind::Flipping, {"F2"}, {{"a", "a"}, {"b", "b"}, {"c", "c"}})));
    CHECK(check_precondition(f, move(MoveKind::Flipping, {"F2"}, {{"a", "a"}, {"b", "fresh"}, {"c", "c"}})));
  }
}

TEST_CASE("move and inverse compose to the identity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    for (int pair = 0; pair < 4; ++pair) {
      CAPTURE(trial);
      CAPTURE(pair);
      const auto d = random_diagram(rng);
      FibrationDiagram there, back;
      switch (pair) {
        case 0: {
          there = apply_move(d, move(MoveKind::Birth, {pick(rng, d.regions)}));
          back = apply_move(there, move(MoveKind::InverseBirth, new_ids(d.regions, there.regions)));
          break;
        }
        case 1: {
          there = apply_move(d, move(MoveKind::Wrinkling, {pick(rng, d.points)}));
          back = apply_move(there, move(MoveKind::InverseWrinkling, new_ids(d.regions, there.regions)));
          break;
        }
        case 2: {
          there = apply_move(d, move(MoveKind::Flipping, {pick(rng, d.arcs)}));
          back = apply_move(there, move(MoveKind::InverseFlipping, new_ids(d.crossings, there.crossings)));
          break;
        }
        case 3: {
          there = apply_move(d, move(MoveKind::Merging, {"F1", "F2"}));
          back = apply_move(there, move(MoveKind::InverseMerging, new_ids(d.cusps, there.cusps)));
          break;
        }
      }
      CHECK(validate(there).empty());
      CHECK_FALSE(isomorphic(d, there));
      CHECK(isomorphic(d, back));
    }
  }
}

TEST_CASE("cusp-arc isotopy") {
  const auto script = builtin_script("fig8");
  const auto w = apply_move(script.initial, script.steps[0]);
  const auto out = apply_move(w, script.steps[1]);
  const auto before = cell_counts(w);
  const auto after = cell_counts(out);
  CHECK(after.crossings == before.crossings + 2);
  CHECK(after.arcs == before.arcs + 4);
  CHECK(after.regions == before.regions + 1);
  CHECK(after.cusps == before.cusps);
  // The fold cycle must be disjoint from both cusp cycles.
  auto tangled = w;
  tangled.cycles.set_geo("b", "b1", 1);
  CHECK(check_precondition(tangled, script.steps[1]));
}

TEST_CASE("builtin scripts") {
  CHECK(builtin_script_names() == std::vector<std::string>{"fig8", "thm61", "connectedness", "achiral_removal"});
  for (const auto& name : builtin_script_names()) {
    CAPTURE(name);
    const auto script = builtin_script(name);
    CHECK(script.transcription);
    REQUIRE(script.expected);
    CHECK(validate(*script.expected).empty());
    const auto r = run_script(script);
    CHECK(r.trace.size() == script.steps.size());
    CHECK(r.matches_expected == true);
    CHECK(r.pass());
  }
  CHECK_THROWS_AS(builtin_script("fig9"), UnknownId);
}

TEST_CASE("script outcomes") {
  SUBCASE("thm61 joins the two circles") {
    const auto r = run_script(builtin_script("thm61"));
    CHECK(fold_components(r.final).size() == 1);
    CHECK(fold_components(builtin_script("thm61").initial).size() == 2);
  }
  SUBCASE("connectedness leaves only connected fibers") {
    const auto s = builtin_script("connectedness");
    CHECK(std::any_of(s.initial.regions.begin(), s.initial.regions.end(), [](const Region& r) { return r.fiber.size() > 1; }));
    const auto r = run_script(s);
    CHECK(std::all_of(r.final.regions.begin(), r.final.regions.end(), [](const Region& r) { return r.fiber.size() == 1; }));
    CHECK(closed_circle_count(r.final) == 1);
    CHECK(r.final.cusps.size() == 4);
  }
  SUBCASE("fig8 ends in a single cusp") {
    const auto r = run_script(builtin_script("fig8"));
    CHECK(r.final.cusps.size() == 1);
    CHECK(r.final.points.empty());
    CHECK(r.final.crossings.empty());
  }
}

TEST_CASE("circle parity after smoothing") {
  const auto achiral = builtin_script("achiral_removal");
  const auto r = run_script(achiral);
  REQUIRE(r.parity);
  CHECK(*r.parity == MonodromyParity::Even);
  CHECK(r.parity_matches == true);
  CHECK(r.final.points.size() == 3);
  CHECK(std::all_of(r.final.points.begin(), r.final.points.end(), [](const LefschetzPoint& p) { return p.chirality == Chirality::Standard; }));

  MoveScript standard = achiral;
  standard.initial.points[0].chirality = Chirality::Standard;
  standard.steps[0].kind = MoveKind::Wrinkling;
  for (std::size_t i = 1; i < standard.steps.size(); ++i) standard.steps[i].kind = MoveKind::CuspSmoothing;
  standard.expected.reset();
  standard.parity->expect = MonodromyParity::Odd;
  const auto s = run_script(standard);
  CHECK(s.parity == MonodromyParity::Odd);
  CHECK(s.pass());
  const auto mu = circle_monodromy(s.final, "A1");
  CHECK(format_word(s.final.cycles.lattice, mu.word) == "T(a+b+c),T(-c),T(a-b)");
}

TEST_CASE("script runner errors and json") {
  auto script = builtin_script("fig8");
  script.steps[2].site = {"A4", "A9"};
  try {
    run_script(script);
    FAIL("expected a rejection");
  } catch (const MoveRejected& e) {
    CHECK(std::string(e.what()).find("step 2") != std::string::npos);
  }

  const auto spec = move(MoveKind::Flipping, {"F1"}, {{"a", "u"}});
  const auto j = to_json(spec);
  CHECK(j.at("kind") == "flipping");
  CHECK(j.at("cycles").at("a") == "u");

  const auto r = run_script(builtin_script("achiral_removal"));
  const auto rj = to_json(r);
  CHECK(rj.at("trace").size() == 4);
  CHECK(rj.at("trace")[0].at("after").at("cusps") == 3);
  CHECK(rj.at("parity") == "Even");
  CHECK(rj.at("pass") == true);
  CHECK(isomorphic(diagram_from_json(rj.at("final")), r.final));

  CHECK_THROWS_AS(script_from_json(nlohmann::json::parse(R"({"steps": []})")), ParseError);
}
