#include "wrinkle/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "wrinkle/cover.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/homology.hpp"
#include "wrinkle/jetstab.hpp"
#include "wrinkle/moves.hpp"

namespace wrinkle {

namespace {

const Assignment kBirthParams{{Var::s, ratio(1, 4)}, {Var::eps, ratio(1, 6)}};

Assignment with_s(const Rational& s) { return {{Var::s, s}}; }

Part part(std::string name, bool pass, nlohmann::json value = nullptr) { return {std::move(name), pass, std::move(value)}; }

nlohmann::json counts_json(const CellCounts& c) {
  return {{"regions", c.regions}, {"arcs", c.arcs},           {"cusps", c.cusps}, {"joints", c.joints},
          {"crossings", c.crossings}, {"points", c.points}, {"circles", c.circles}};
}

CriterionResult closedness() {
  CriterionResult r{1, "closedness certificates", {}};
  for (const char* id : {"LS", "cusp_eps", "eq1_birth", "eq2_merging", "eq3_flipping", "sigma_wrinkling"}) {
    const auto closed = verify_closed(get_form(id).form);
    r.parts.push_back(part(std::string("d = 0 for ") + id, closed.pass, closed.pass ? "0" : to_string(closed.residual)));
  }
  return r;
}

CriterionResult eq1_is_ls() {
  CriterionResult r{2, "eq1 equals LS", {}};
  const TwoForm eq1 = get_form("eq1_birth").form;
  const TwoForm ls = get_form("LS").form;
  r.parts.push_back(part("coefficient-wise equality", eq1 == ls, to_string(eq1 - ls)));
  return r;
}

CriterionResult birth_circle(const RunConfig& config) {
  CriterionResult r{3, "birth zero circle", {}};
  const FormEntry ls = get_form("LS", kBirthParams);
  const LocalModel model = get_model("birth", kBirthParams);
  const CriticalLocus locus = model.known_critical_set();

  const std::vector<Polynomial> expected{Polynomial::parse("x^2 + t^2") - Polynomial(ratio(1, 4)),
                                         Polynomial::variable(Var::y), Polynomial::variable(Var::z)};
  r.parts.push_back(part("locus is x^2 + t^2 = 1/4, y = z = 0", locus.equations == expected, locus.description));

  const Check zero = verify_zero_set(ls, model, 100, config.samples, tolerance::kTubeRadius, config.seed);
  r.parts.push_back(part("zero set", zero.pass && zero.margin > 0, to_json(zero)));

  Eigen::Index min_rank = 4;
  double min_sv = std::numeric_limits<double>::infinity();
  for (long n = 0; n < 100; ++n) {
    const auto t = verify_transversality(ls.form, ls.bound, locus.rational_point(ratio(n - 50, 9)));
    min_rank = std::min(min_rank, t.rank);
    min_sv = std::min(min_sv, t.singular_values(2));
  }
  r.parts.push_back(part("rank 3 at 100 circle samples", min_rank == 3 && min_sv > tolerance::kSingularValue,
                         {{"min_rank", min_rank}, {"min_third_singular_value", min_sv}}));

  const CurvePiece& circle = locus.pieces.at(0);
  bool signature = true;
  double max_trace = 0.0;
  for (int n = 0; n < 50; ++n) {
    const double u = circle.lo + (circle.hi - circle.lo) * n / 50.0;
    const EigenData e = eigenbundle(ls.form, ls.bound, circle.point(u), circle.tangent(u));
    signature = signature && e.eigenvalues(0) > 0 && e.eigenvalues(1) > 0 && e.eigenvalues(2) < 0;
    max_trace = std::max(max_trace, std::abs(e.trace));
  }
  r.parts.push_back(part("signature (+,+,-) at 50 samples", signature));
  r.parts.push_back(part("|trace| < 1e-12 at 50 samples", max_trace < tolerance::kTrace, {{"max_abs_trace", max_trace}}));
  return r;
}

CriterionResult fiber_positivity(const RunConfig& config) {
  CriterionResult r{4, "fiber positivity", {}};
  const FormEntry ls = get_form("LS", kBirthParams);
  const Check a = verify_fiber_positivity(ls, get_model("birth", kBirthParams), config.samples, tolerance::kTubeRadius,
                                          config.seed);
  r.parts.push_back(part("LS on birth", a.pass && a.margin > 0, to_json(a)));
  const FormEntry eq3 = get_form("eq3_flipping", with_s(ratio(1, 4)));
  const Check b = verify_fiber_positivity(eq3, get_model("flipping", eq3.bound), config.samples,
                                          tolerance::kTubeRadius, config.seed);
  r.parts.push_back(part("eq3 on flipping", b.pass && b.margin > 0, to_json(b)));
  return r;
}

CriterionResult wrinkling_geometry() {
  CriterionResult r{5, "wrinkling geometry", {}};
  const LocalModel model = get_model("wrinkling", with_s(1));
  const int cusps = count_cusps(model);
  r.parts.push_back(part("three cusps at s = 1", cusps == 3, cusps));

  double worst = 0.0;
  const double s = 1.0;
  const auto samples = critical_values(model, 1000);
  for (const auto& v : samples) {
    const double c = std::cos(v.param);
    const Eigen::Vector2d closed(-s * s / 8.0 * (1 + c) * (2 - c), -s * s / 8.0 * (1 + c) * std::sin(v.param));
    worst = std::max(worst, (v.value - closed).norm());
  }
  r.parts.push_back(part("critical values match the closed form", !samples.empty() && worst < tolerance::kCurveMatch,
                         {{"samples", samples.size()}, {"max_error", worst}}));

  const auto kind = classify(get_model("wrinkling", with_s(0)), {0, 0, 0, 0});
  r.parts.push_back(part("origin at s = 0 is Lefschetz type", kind.tag == SingularityTag::LefschetzType,
                         std::string(tag_name(kind.tag))));
  return r;
}

CriterionResult branched_cover() {
  CriterionResult r{6, "branched cover", {}};
  auto k_point = [](double k) { return Eigen::Vector2d(-k / 2.0, 0.0); };
  const double h = std::sqrt(0.5);
  const std::vector<Eigen::Vector2d> expected{{-1.0 - h, 0.0}, {-1.0 + h, 0.0}, {0.0, -h}, {0.0, h}};
  const auto one = branch_points(2.0, k_point(1));
  double worst = std::numeric_limits<double>::infinity();
  if (one.points.size() == expected.size()) {
    worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) worst = std::max(worst, (one.points[i] - expected[i]).norm());
  }
  r.parts.push_back(part("k = 1 gives the four expected points", worst < tolerance::kBranchMatch,
                         {{"count", one.points.size()}, {"max_error", worst}}));
  const auto three = branch_points(2.0, k_point(3));
  r.parts.push_back(part("k = 3 gives two points", three.points.size() == 2, three.points.size()));

  const Collision along = trace_collision(2.0, [&](double l) { return k_point(1.0 + 2.0 * l); });
  const Collision up = trace_collision(2.0, [](double l) { return Eigen::Vector2d(-0.5, 2.0 * l); });
  const Collision down = trace_collision(2.0, [](double l) { return Eigen::Vector2d(-0.5, -2.0 * l); });
  auto pair_json = [](const Collision& c) { return nlohmann::json{c.pair.first, c.pair.second}; };
  r.parts.push_back(part("three paths collide pairwise-distinct pairs",
                         along.pair != up.pair && along.pair != down.pair && up.pair != down.pair,
                         {{"along_k", pair_json(along)}, {"up", pair_json(up)}, {"down", pair_json(down)}}));
  return r;
}

CriterionResult monodromy(const RunConfig& config) {
  CriterionResult r{7, "monodromy", {}};
  const SurfaceModel t1 = torus_one_puncture();
  const CycleClass a1 = t1.generator("a");
  const CycleClass b1 = t1.generator("b");
  const CycleClass x = dehn_twist(t1, a1 - b1, a1);
  r.parts.push_back(part("T(a-b) a = b", x == b1, format_class(t1, x)));
  const CycleClass y = dehn_twist(t1, a1 + b1, a1, -1);
  r.parts.push_back(part("Tinv(a+b) a = -b", y == CycleClass(-b1), format_class(t1, y)));

  const SurfaceModel t2 = torus_two_punctures();
  const CycleClass a = t2.generator("a");
  const TwistWord mu1 = parse_word(t2, kMu1);
  const TwistWord mu2 = parse_word(t2, kMu2);
  const CycleClass m1 = apply_word(t2, mu1, a);
  const CycleClass m2 = apply_word(t2, mu2, a);
  const auto p1 = circle_parity_monodromy(t2, mu1, a);
  const auto p2 = circle_parity_monodromy(t2, mu2, a);
  r.parts.push_back(part("mu1(a) = -a, odd", m1 == CycleClass(-a) && p1 == MonodromyParity::Odd,
                         format_class(t2, m1) + " " + std::string(monodromy_parity_name(p1))));
  r.parts.push_back(part("mu2(a) = a, even", m2 == a && p2 == MonodromyParity::Even,
                         format_class(t2, m2) + " " + std::string(monodromy_parity_name(p2))));

  const CounterRng rng(config.seed, 7);
  std::uint64_t cursor = 0;
  auto draw = [&] {
    CycleClass v(t2.rank());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.integer(cursor++, -5, 5);
    return v;
  };
  int broken = 0;
  for (int n = 0; n < kTwistTriples; ++n) {
    const CycleClass c = draw();
    const CycleClass u = draw();
    const CycleClass v = draw();
    if (pairing(t2, dehn_twist(t2, c, u), dehn_twist(t2, c, v)) != pairing(t2, u, v)) ++broken;
  }
  r.parts.push_back(part("twists preserve the pairing on 1000 triples", broken == 0, broken));

  const auto signs = admissible_bc_signs();
  r.parts.push_back(part("<b,c> = -1 is the unique admissible sign", signs == std::vector<long>{-1},
                         {{"tested", {-1, 1}}, {"admissible", signs}}));
  return r;
}

CriterionResult jet_grid() {
  CriterionResult r{8, "jet stability grid", {}};
  int stability_errors = 0;
  int form_errors = 0;
  std::map<std::string, int> tally;
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      for (Family f : {Family::Cubic, Family::Quartic1, Family::Quartic2}) {
        const bool stable = is_11_stable(f, a, b);
        bool expect = true;
        std::optional<NormalForm> form;
        switch (f) {
          case Family::Cubic:
            expect = a != 0 || b != 0;
            if (b != 0) form = NormalForm::h0;
            else if (a > 0) form = NormalForm::h1;
            else if (a < 0) form = NormalForm::h2;
            break;
          case Family::Quartic1: form = NormalForm::h3; break;
          case Family::Quartic2:
            expect = b != 0;
            if (b != 0) form = NormalForm::h3;
            break;
        }
        if (stable != expect) ++stability_errors;
        const auto got = classify_family(f, a, b);
        if (got != form || got.has_value() != stable) ++form_errors;
        ++tally[std::string(family_name(f)) + ":" + (got ? std::string(normal_form_name(*got)) : "NotStable")];
      }
    }
  }
  r.parts.push_back(part("stability over {-3..3}^2", stability_errors == 0, stability_errors));
  nlohmann::json counts(tally);
  r.parts.push_back(part("normal forms h0..h3", form_errors == 0, {{"mismatches", form_errors}, {"tally", counts}}));
  return r;
}

// Strip of genus g: two folds into a common high region, standard points in
// L1 and M, optionally a circle in L1.
FibrationDiagram random_strip(std::mt19937_64& rng) {
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
  return d;
}

template <typename T>
std::string pick(std::mt19937_64& rng, const std::vector<T>& cells) {
  return cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)].id;
}

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

struct Delta {
  long regions = 0, arcs = 0, cusps = 0, crossings = 0, points = 0, circles = 0;
  friend bool operator==(const Delta&, const Delta&) = default;
};

Delta delta(const CellCounts& before, const CellCounts& after) {
  auto diff = [](std::size_t a, std::size_t b) { return static_cast<long>(b) - static_cast<long>(a); };
  return {diff(before.regions, after.regions), diff(before.arcs, after.arcs),
          diff(before.cusps, after.cusps),     diff(before.crossings, after.crossings),
          diff(before.points, after.points),   static_cast<long>(after.circles - before.circles)};
}

std::string delta_text(const Delta& d) {
  return "R" + std::to_string(d.regions) + " A" + std::to_string(d.arcs) + " C" + std::to_string(d.cusps) + " X" +
         std::to_string(d.crossings) + " P" + std::to_string(d.points) + " O" + std::to_string(d.circles);
}

CriterionResult move_calculus(const RunConfig& config) {
  CriterionResult r{9, "move calculus", {}};
  for (const auto& name : builtin_script_names()) {
    bool ok = false;
    nlohmann::json value;
    try {
      const ScriptResult result = run_script(builtin_script(name));
      ok = result.pass() && result.matches_expected.value_or(false);
      value = {{"steps", result.trace.size()}, {"final", counts_json(cell_counts(result.final))}};
      if (result.parity) value["parity"] = std::string(monodromy_parity_name(*result.parity));
    } catch (const Error& e) {
      value = e.what();
    }
    r.parts.push_back(part("builtin " + name, ok, value));
  }

  std::mt19937_64 rng(config.seed);
  int trips = 0, identities = 0;
  std::vector<std::string> failures, delta_errors;
  for (int trial = 0; trial < kRoundTripTrials; ++trial) {
    for (int pair = 0; pair < 4; ++pair) {
      const FibrationDiagram d = random_strip(rng);
      ++trips;
      try {
        FibrationDiagram there, back;
        Delta expected;
        switch (pair) {
          case 0:
            there = apply_move(d, {MoveKind::Birth, {pick(rng, d.regions)}, {}, {}});
            back = apply_move(there, {MoveKind::InverseBirth, new_ids(d.regions, there.regions), {}, {}});
            expected = {1, 2, 2, 0, 0, 1};
            break;
          case 1:
            there = apply_move(d, {MoveKind::Wrinkling, {pick(rng, d.points)}, {}, {}});
            back = apply_move(there, {MoveKind::InverseWrinkling, new_ids(d.regions, there.regions), {}, {}});
            expected = {1, 3, 3, 0, -1, 1};
            break;
          case 2: {
            const std::string arc = pick(rng, d.arcs);
            there = apply_move(d, {MoveKind::Flipping, {arc}, {}, {}});
            back = apply_move(there, {MoveKind::InverseFlipping, new_ids(d.crossings, there.crossings), {}, {}});
            const bool closed = d.arc(arc)->kind == ArcKind::ClosedCircle;
            expected = {1, closed ? 3 : 4, 2, 1, 0, 0};
            break;
          }
          default:
            there = apply_move(d, {MoveKind::Merging, {"F1", "F2"}, {}, {}});
            back = apply_move(there, {MoveKind::InverseMerging, new_ids(d.cusps, there.cusps), {}, {}});
            expected = {0, 2, 2, 0, 0, 0};
            break;
        }
        if (isomorphic(d, back) && !isomorphic(d, there)) ++identities;
        else failures.push_back("trial " + std::to_string(trial) + " pair " + std::to_string(pair));
        const Delta forward = delta(cell_counts(d), cell_counts(there));
        const Delta inverse = delta(cell_counts(there), cell_counts(back));
        const Delta undo{-expected.regions, -expected.arcs,   -expected.cusps,
                         -expected.crossings, -expected.points, -expected.circles};
        if (!(forward == expected) || !(inverse == undo)) {
          delta_errors.push_back("pair " + std::to_string(pair) + ": " + delta_text(forward) + " then " +
                                 delta_text(inverse));
        }
      } catch (const Error& e) {
        failures.push_back(e.what());
      }
    }
  }
  r.parts.push_back(part("move/inverse round trips", identities == trips,
                         {{"trials", trips}, {"identities", identities}, {"failures", failures}}));
  r.parts.push_back(part("cell-count deltas", delta_errors.empty() && failures.empty(), delta_errors));
  return r;
}

CriterionResult find_k_criterion(const RunConfig& config) {
  CriterionResult r{10, "find_k for sigma on wrinkling", {}};
  FindKOptions options;
  options.k_max = kFindKMax;
  options.samples = config.samples;
  options.delta = tolerance::kTubeRadius;
  options.seed = config.seed;
  try {
    const FindKResult found = find_k(with_s(1), options);
    r.parts.push_back(part("terminates with K* <= 100", found.k <= kFindKMax, {{"k_star", found.k}}));
    for (const auto& check : found.passing.checks) r.parts.push_back(part(check.name, check.pass, to_json(check)));
    if (found.previous) r.parts.push_back(part("K* - 1 fails", !found.previous->all_pass(), to_json(*found.previous)));
  } catch (const KNotFound& e) {
    r.parts.push_back(part("terminates with K* <= 100", false, e.what()));
  }
  return r;
}

}  // namespace

bool CriterionResult::pass() const {
  return !parts.empty() && std::all_of(parts.begin(), parts.end(), [](const Part& p) { return p.pass; });
}

std::string CriterionResult::line() const {
  std::string out = "criterion " + std::to_string(id) + (pass() ? " PASS " : " FAIL ") + title;
  std::string failing;
  for (const auto& p : parts) {
    if (!p.pass) failing += (failing.empty() ? "" : "; ") + p.name;
  }
  if (!failing.empty()) out += " (failing: " + failing + ")";
  return out;
}

CriterionResult run_criterion(int id, const RunConfig& config) {
  switch (id) {
    case 1: return closedness();
    case 2: return eq1_is_ls();
    case 3: return birth_circle(config);
    case 4: return fiber_positivity(config);
    case 5: return wrinkling_geometry();
    case 6: return branched_cover();
    case 7: return monodromy(config);
    case 8: return jet_grid();
    case 9: return move_calculus(config);
    case 10: return find_k_criterion(config);
    default: throw UnknownId("criterion " + std::to_string(id));
  }
}

std::vector<CriterionResult> run_acceptance(const RunConfig& config) {
  auto once = [&] {
    std::vector<CriterionResult> out;
    for (int id = 1; id < kCriterionCount; ++id) out.push_back(run_criterion(id, config));
    return out;
  };
  std::vector<CriterionResult> first = once();
  const std::string a = acceptance_report(first, config).dump(2);
  const std::string b = acceptance_report(once(), config).dump(2);
  CriterionResult det{11, "determinism", {}};
  det.parts.push_back(part("rerun with the same seed is byte-identical", a == b, {{"bytes", a.size()}}));
  first.push_back(det);
  return first;
}

nlohmann::json to_json(const CriterionResult& result) {
  nlohmann::json j;
  j["id"] = result.id;
  j["title"] = result.title;
  j["pass"] = result.pass();
  j["parts"] = nlohmann::json::array();
  for (const auto& p : result.parts) j["parts"].push_back({{"name", p.name}, {"pass", p.pass}, {"value", p.value}});
  return j;
}

nlohmann::json acceptance_report(const std::vector<CriterionResult>& results, const RunConfig& config) {
  nlohmann::json j;
  j["config"] = {{"seed", config.seed}, {"samples", config.samples}, {"delta", format_rational(config.delta)}};
  j["criteria"] = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    j["criteria"].push_back(to_json(r));
    all = all && r.pass();
  }
  j["pass"] = all;
  return j;
}

}  // namespace wrinkle
