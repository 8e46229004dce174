#include "doctest.h"
#include "wrinkle/diagram.hpp"
#include "wrinkle/errors.hpp"

using namespace wrinkle;

namespace {

FibrationDiagram parse(const char* text) { return diagram_from_json(nlohmann::json::parse(text)); }

// Genus-1 region with one fold arc down to a sphere.
constexpr const char* kFold = R"({
  "regions": [{"id": "H", "fiber": [1]}, {"id": "L", "fiber": [0]}],
  "arcs": [{"id": "F", "ends": ["", ""], "high": "H", "low": "L", "cycle": "a"}],
  "cycles": {"generators": ["a", "b"], "pairing": [["a", "b", -1]], "classes": {"a": {"class": "a"}}}
})";

// A wrinkle of genus 2 inside a genus-1 region.
constexpr const char* kWrinkle = R"({
  "regions": [{"id": "R", "fiber": [1]}, {"id": "I", "fiber": [2]}],
  "arcs": [
    {"id": "W1", "ends": ["C1", "C2"], "high": "I", "low": "R", "cycle": "x"},
    {"id": "W2", "ends": ["C1", "C2"], "high": "I", "low": "R", "cycle": "y"}
  ],
  "cusps": [{"id": "C1", "arcs": ["W1", "W2"]}, {"id": "C2", "arcs": ["W1", "W2"], "order": 1}],
  "cycles": {
    "generators": ["x", "y"], "pairing": [["x", "y", -1]],
    "classes": {"x": {"class": "x"}, "y": {"class": "y"}},
    "geometric": [["x", "y", 1]]
  }
})";

// The same wrinkle with ids, generator names and list order permuted.
constexpr const char* kWrinkleRelabelled = R"({
  "regions": [{"id": "in", "fiber": [2]}, {"id": "out", "fiber": [1]}],
  "arcs": [
    {"id": "q", "ends": ["k2", "k1"], "high": "in", "low": "out", "cycle": "v"},
    {"id": "p", "ends": ["k1", "k2"], "high": "in", "low": "out", "cycle": "u"}
  ],
  "cusps": [{"id": "k2", "arcs": ["q", "p"]}, {"id": "k1", "arcs": ["p", "q"]}],
  "cycles": {
    "generators": ["v", "u"], "pairing": [["v", "u", 1]],
    "classes": {"u": {"class": "u"}, "v": {"class": "v"}},
    "geometric": [["u", "v", 1]]
  }
})";

}  // namespace

TEST_CASE("surgery rule") {
  CHECK(surgered_fibers({2}, false) == std::vector<Fiber>{{1}});
  CHECK(surgered_fibers({0}, false).empty());
  CHECK(surgered_fibers({2}, true) == std::vector<Fiber>{{0, 2}, {1, 1}});
  CHECK(surgered_fibers({1, 3}, false) == std::vector<Fiber>{{0, 3}, {1, 2}});
}

TEST_CASE("validation accepts well-formed diagrams") {
  CHECK(validate(parse(kFold)).empty());
  CHECK(validate(parse(kWrinkle)).empty());
}

TEST_CASE("validation reports local violations") {
  SUBCASE("cusp cycles that are disjoint") {
    auto d = parse(kWrinkle);
    d.cycles.set_geo("x", "y", 0);
    d.cycles.set_generator_pairing("x", "y", 0);
    const auto v = validate(d);
    REQUIRE(v.size() == 2);
    CHECK(v[0].find("cusp C1") != std::string::npos);
    CHECK(v[1].find("cusp C2") != std::string::npos);
  }
  SUBCASE("low fiber not a surgery of the high fiber") {
    auto d = parse(kWrinkle);
    d.region("I")->fiber = {3};
    CHECK(validate(d).size() == 2);
  }
  SUBCASE("algebraic intersection above the geometric one") {
    auto d = parse(kWrinkle);
    d.cycles.set_generator_pairing("x", "y", 2);
    CHECK(validate(d).size() == 1);
  }
  SUBCASE("dangling arc end") {
    auto d = parse(kFold);
    d.arcs[0].ends[1] = "nowhere";
    CHECK(validate(d).size() == 1);
  }
  SUBCASE("duplicate id") {
    auto d = parse(kFold);
    d.regions.push_back({"F", {0}});
    CHECK_FALSE(validate(d).empty());
  }
}

TEST_CASE("validation of a flip crossing") {
  const auto d = parse(R"({
    "regions": [{"id": "T", "fiber": [2]}, {"id": "H", "fiber": [1]}, {"id": "L", "fiber": [0]}],
    "arcs": [
      {"id": "S1", "ends": ["", "X"], "high": "H", "low": "L", "cycle": "z"},
      {"id": "S2", "ends": ["X", ""], "high": "H", "low": "L", "cycle": "z"},
      {"id": "Ec", "ends": ["X", "K1"], "high": "T", "low": "H", "cycle": "c"},
      {"id": "Eb", "ends": ["K1", "K2"], "high": "T", "low": "H", "cycle": "b"},
      {"id": "Ea", "ends": ["K2", "X"], "high": "T", "low": "H", "cycle": "a"}
    ],
    "cusps": [{"id": "K1", "arcs": ["Ec", "Eb"]}, {"id": "K2", "arcs": ["Ea", "Eb"], "signs": [1, -1], "order": 1}],
    "crossings": [{"id": "X", "arcs": ["Ec", "Ea", "S1", "S2"], "regions": ["T", "H", "L", "H"]}],
    "cycles": {
      "generators": ["z", "a", "b", "c"], "pairing": [["a", "b", -1], ["b", "c", -1]],
      "classes": {"z": {"class": "z"}, "a": {"class": "a"}, "b": {"class": "b"}, "c": {"class": "c"}},
      "geometric": [["a", "b", 1], ["b", "c", 1]]
    }
  })");
  CHECK(validate(d).empty());
  CHECK(fold_components(d).size() == 1);
  CHECK(closed_circle_count(d) == 0);

  auto bad = d;
  bad.crossings[0].regions = {"H", "T", "L", "H"};
  CHECK_FALSE(validate(bad).empty());
}

TEST_CASE("isomorphism") {
  const auto w = parse(kWrinkle);
  CHECK(isomorphic(w, parse(kWrinkleRelabelled)));
  CHECK(isomorphic(parse(kWrinkleRelabelled), w));
  CHECK_FALSE(isomorphic(w, parse(kFold)));

  SUBCASE("geometric data is part of the structure") {
    auto v = parse(kWrinkleRelabelled);
    v.cycles.set_geo("u", "v", 3);
    CHECK_FALSE(isomorphic(w, v));
  }
  SUBCASE("fibers are part of the structure") {
    auto v = w;
    v.region("R")->fiber = {0};
    v.region("I")->fiber = {1};
    CHECK_FALSE(isomorphic(w, v));
  }
  SUBCASE("a cusp is not a joint with a point") {
    auto v = w;
    v.cusps.pop_back();
    v.cycles.add_cycle("l", v.cycles.cycles.at("x").cls - v.cycles.cycles.at("y").cls);
    v.points.push_back({"P", "I", "l", Chirality::Standard, 1});
    v.joints.push_back({"C2", {"W1", "W2"}, "P"});
    CHECK_FALSE(isomorphic(w, v));
  }
  SUBCASE("point versus wrinkle") {
    const auto p = parse(R"({
      "regions": [{"id": "R", "fiber": [1]}],
      "lefschetz": [{"id": "P", "region": "R", "cycle": "x"}],
      "cycles": {"generators": ["x"], "classes": {"x": {"class": "x"}}}
    })");
    CHECK(validate(p).empty());
    CHECK_FALSE(isomorphic(w, p));
  }
}

TEST_CASE("closed circles") {
  CHECK(closed_circle_count(parse(kWrinkle)) == 1);
  CHECK(closed_circle_count(parse(kFold)) == 0);
  const auto d = parse(R"({
    "regions": [{"id": "O", "fiber": [1]}, {"id": "D", "fiber": [0]}],
    "arcs": [{"id": "Z", "kind": "closed", "high": "O", "low": "D", "cycle": "z"}],
    "cycles": {"generators": ["z"], "classes": {"z": {"class": "z"}}}
  })");
  CHECK(validate(d).empty());
  CHECK(closed_circle_count(d) == 1);
}

TEST_CASE("circle monodromy reads smoothed joints") {
  auto d = parse(kWrinkle);
  CHECK_THROWS_AS(circle_monodromy(d, "W1"), Unsupported);
  const auto x = d.cycles.cycles.at("x").cls;
  const auto y = d.cycles.cycles.at("y").cls;
  d.cycles.add_cycle("l", x - y);
  d.cycles.set_geo("l", "x", 1);
  d.cycles.set_geo("l", "y", 1);
  d.cusps.erase(d.cusps.begin());
  d.joints.push_back({"C1", {"W1", "W2"}, "P"});
  d.points.push_back({"P", "I", "l", Chirality::Standard, 0});
  CHECK(validate(d).empty());
  const auto m = circle_monodromy(d, "W2");
  REQUIRE(m.word.letters.size() == 1);
  CHECK(m.word.letters[0].first == x - y);
  CHECK(m.word.letters[0].second == 1);
  CHECK(m.fold_cycle_name == "x");
  // <x,x-y> = 1, so T(x-y) sends x to y.
  CHECK(apply_word(d.cycles.lattice, m.word, x) == y);
}

TEST_CASE("json round trip") {
  for (const char* text : {kFold, kWrinkle, kWrinkleRelabelled}) {
    const auto d = parse(text);
    const auto j = to_json(d);
    const auto back = diagram_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(isomorphic(d, back));
  }
  CHECK_THROWS_AS(parse(R"({"regions": []})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"cycles": {"generators": [], "classes": {}}, "arcs": [{"id": "A", "kind": "spiral", "high": "H", "low": "L", "cycle": "a"}]})"),
                  ParseError);
}
