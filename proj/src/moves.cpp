#include "wrinkle/moves.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

constexpr std::array<std::pair<MoveKind, std::string_view>, 13> kKindNames{{
    {MoveKind::Birth, "birth"},
    {MoveKind::InverseBirth, "inverse_birth"},
    {MoveKind::Merging, "merging"},
    {MoveKind::InverseMerging, "inverse_merging"},
    {MoveKind::Flipping, "flipping"},
    {MoveKind::InverseFlipping, "inverse_flipping"},
    {MoveKind::Wrinkling, "wrinkling"},
    {MoveKind::InverseWrinkling, "inverse_wrinkling"},
    {MoveKind::CuspSmoothing, "cusp_smoothing"},
    {MoveKind::AchiralCuspSmoothing, "achiral_cusp_smoothing"},
    {MoveKind::AchiralWrinkling, "achiral_wrinkling"},
    {MoveKind::LegExchangeIsotopy, "leg_exchange_isotopy"},
    {MoveKind::CuspArcIsotopy, "cusp_arc_isotopy"},
}};

[[noreturn]] void reject(const std::string& why) { throw MoveRejected(why); }

template <typename T>
void erase_id(std::vector<T>& cells, const std::string& id) {
  cells.erase(std::remove_if(cells.begin(), cells.end(), [&](const T& c) { return c.id == id; }), cells.end());
}

std::string other_end(const FoldArc& a, const std::string& v) {
  if (a.ends[0] == v && a.ends[1] == v) reject("arc " + a.id + " has both ends at " + v);
  if (a.ends[0] == v) return a.ends[1];
  if (a.ends[1] == v) return a.ends[0];
  reject("arc " + a.id + " does not end at " + v);
}

// Arcs and vertices on one side of a region, grown from seed arcs through shared vertices.
struct Side {
  std::set<std::string> arcs;
  std::set<std::string> vertices;
};

class Rewriter {
 public:
  Rewriter(const FibrationDiagram& d, const MoveSpec& m) : d_(d), m_(m) {}

  FibrationDiagram run() {
    switch (m_.kind) {
      case MoveKind::Birth: birth(); break;
      case MoveKind::InverseBirth: inverse_birth(); break;
      case MoveKind::Merging: merging(); break;
      case MoveKind::InverseMerging: inverse_merging(); break;
      case MoveKind::Flipping: flipping(); break;
      case MoveKind::InverseFlipping: inverse_flipping(); break;
      case MoveKind::Wrinkling: wrinkling(Chirality::Standard); break;
      case MoveKind::AchiralWrinkling: wrinkling(Chirality::Achiral); break;
      case MoveKind::InverseWrinkling: inverse_wrinkling(); break;
      case MoveKind::CuspSmoothing: cusp_smoothing(false); break;
      case MoveKind::AchiralCuspSmoothing: cusp_smoothing(true); break;
      case MoveKind::CuspArcIsotopy: cusp_arc_isotopy(); break;
      case MoveKind::LegExchangeIsotopy: leg_exchange(); break;
    }
    gc_cycles();
    return d_;
  }

 private:
  // Lookup

  void need_sites(std::size_t n) const {
    if (m_.site.size() != n) {
      reject(std::string(move_kind_name(m_.kind)) + " takes " + std::to_string(n) + " site ids, got " + std::to_string(m_.site.size()));
    }
  }

  std::optional<std::string> option(const std::string& key) const {
    auto it = m_.options.find(key);
    if (it == m_.options.end()) return std::nullopt;
    return it->second;
  }

  Region& region(const std::string& id) {
    Region* r = d_.region(id);
    if (!r) reject("unknown region " + id);
    return *r;
  }
  FoldArc& arc(const std::string& id) {
    FoldArc* a = d_.arc(id);
    if (!a) reject("unknown arc " + id);
    return *a;
  }
  Cusp& cusp(const std::string& id) {
    Cusp* c = d_.cusp(id);
    if (!c) reject("unknown cusp " + id);
    return *c;
  }
  Crossing& crossing(const std::string& id) {
    Crossing* x = d_.crossing(id);
    if (!x) reject("unknown crossing " + id);
    return *x;
  }
  const CycleInfo& cycle(const std::string& name) const {
    auto it = d_.cycles.cycles.find(name);
    if (it == d_.cycles.cycles.end()) reject("unknown cycle " + name);
    return it->second;
  }

  std::vector<std::string> arcs_at(const std::string& r) const {
    std::vector<std::string> out;
    for (const auto& a : d_.arcs) {
      if (a.high == r || a.low == r) out.push_back(a.id);
    }
    return out;
  }

  bool has_points_in(const std::string& r) const {
    return std::any_of(d_.points.begin(), d_.points.end(), [&](const LefschetzPoint& p) { return p.region == r; });
  }

  int crossing_mentions(const std::string& r) const {
    int n = 0;
    for (const auto& x : d_.crossings) n += static_cast<int>(std::count(x.regions.begin(), x.regions.end(), r));
    return n;
  }

  Side side(const std::string& r, const std::vector<std::string>& seeds, const std::set<std::string>& excluded = {}) const {
    Side s;
    std::deque<std::string> queue;
    auto visit = [&](const FoldArc& a) {
      if (!s.arcs.insert(a.id).second) return;
      for (const auto& v : a.ends) {
        if (!v.empty() && s.vertices.insert(v).second) queue.push_back(v);
      }
    };
    for (const auto& id : seeds) {
      if (const FoldArc* a = d_.arc(id)) visit(*a);
    }
    while (!queue.empty()) {
      const std::string v = queue.front();
      queue.pop_front();
      for (const auto& a : d_.arcs) {
        if (excluded.count(a.id) || (a.high != r && a.low != r)) continue;
        if (a.ends[0] == v || a.ends[1] == v) visit(a);
      }
    }
    return s;
  }

  static bool disjoint(const Side& x, const Side& y) {
    for (const auto& a : x.arcs) {
      if (y.arcs.count(a)) return false;
    }
    for (const auto& v : x.vertices) {
      if (y.vertices.count(v)) return false;
    }
    return true;
  }

  // Creation

  std::string fresh(const std::string& stem) {
    for (int i = 1;; ++i) {
      const std::string s = stem + std::to_string(i);
      if (!d_.has_id(s) && !reserved_.count(s)) {
        reserved_.insert(s);
        return s;
      }
    }
  }

  Fiber raised(Fiber f) const {
    std::size_t i = f.size() - 1;
    if (auto c = option("component")) {
      i = static_cast<std::size_t>(std::stoul(*c));
      if (i >= f.size()) reject("fiber component " + *c + " out of range");
    }
    ++f[i];
    std::sort(f.begin(), f.end());
    return f;
  }

  static Fiber lowered(Fiber f) {
    if (f.back() == 0) reject("cannot lower a genus-zero fiber");
    --f.back();
    std::sort(f.begin(), f.end());
    return f;
  }

  std::string add_region(const Fiber& f) {
    const std::string id = fresh("R");
    d_.regions.push_back({id, f});
    return id;
  }

  std::string cycle_name(const std::string& role, const std::string& stem) const {
    auto it = m_.cycles.find(role);
    const std::string name = it != m_.cycles.end() ? it->second : d_.cycles.fresh_name(stem);
    if (d_.cycles.has(name) || d_.cycles.lattice.named.count(name)) reject("cycle name " + name + " is taken");
    return name;
  }

  std::string new_generator(const std::string& role) {
    const std::string name = cycle_name(role, role);
    d_.cycles.add_cycle(name, d_.cycles.add_generator(name));
    return name;
  }

  std::string new_cycle(const std::string& role, const CycleClass& cls) {
    const std::string name = cycle_name(role, role);
    d_.cycles.add_cycle(name, cls);
    return name;
  }

  void default_geo(const std::string& name) {
    for (const auto& [z, info] : d_.cycles.cycles) {
      if (z == name) continue;
      const int alg = static_cast<int>(std::abs(d_.cycles.pair(name, z)));
      if (d_.cycles.geo(name, z) < alg) d_.cycles.set_geo(name, z, alg);
    }
  }

  // Makes <a, gen> = value through one generator of a with coefficient +-1.
  void anchor_pairing(const std::string& a, const std::string& gen, long value) {
    const CycleClass& cls = cycle(a).cls;
    const auto& basis = d_.cycles.lattice.basis;
    std::optional<Eigen::Index> anchor;
    if (auto name = option("anchor")) {
      auto it = std::find(basis.begin(), basis.end(), *name);
      if (it == basis.end()) reject("unknown anchor generator " + *name);
      anchor = it - basis.begin();
      if (std::abs(cls(*anchor)) != 1) reject("anchor " + *name + " does not occur in " + a + " with coefficient +-1");
    } else {
      for (Eigen::Index i = 0; i < cls.size() && !anchor; ++i) {
        if (std::abs(cls(i)) == 1 && basis[static_cast<std::size_t>(i)] != gen) anchor = i;
      }
    }
    if (!anchor) reject("cycle " + a + " has no generator with coefficient +-1");
    d_.cycles.set_generator_pairing(basis[static_cast<std::size_t>(*anchor)], gen, value * cls(*anchor));
  }

  // Rewiring

  void retarget(const std::string& vertex, const std::string& from, const std::string& to, int occurrence = 0) {
    if (vertex.empty()) return;
    if (Cusp* c = d_.cusp(vertex)) {
      for (auto& a : c->arcs) {
        if (a == from) {
          a = to;
          return;
        }
      }
    }
    if (Joint* j = d_.joint(vertex)) {
      for (auto& a : j->arcs) {
        if (a == from) {
          a = to;
          return;
        }
      }
    }
    if (Crossing* x = d_.crossing(vertex)) {
      int seen = 0;
      for (auto& a : x->arcs) {
        if (a == from && seen++ == occurrence) {
          a = to;
          return;
        }
      }
    }
    reject("vertex " + vertex + " does not hold arc " + from);
  }

  void rename_region(const std::string& from, const std::string& to) {
    if (from == to) return;
    for (auto& a : d_.arcs) {
      if (a.high == from) a.high = to;
      if (a.low == from) a.low = to;
    }
    for (auto& x : d_.crossings) {
      for (auto& r : x.regions) {
        if (r == from) r = to;
      }
    }
    for (auto& p : d_.points) {
      if (p.region == from) p.region = to;
    }
    erase_id(d_.regions, from);
  }

  void move_side(const Side& s, const std::string& from, const std::string& to) {
    for (const auto& id : s.arcs) {
      FoldArc& a = arc(id);
      if (a.high == from) a.high = to;
      if (a.low == from) a.low = to;
    }
    for (const auto& v : s.vertices) {
      if (Crossing* x = d_.crossing(v)) {
        for (auto& r : x->regions) {
          if (r == from) r = to;
        }
      }
    }
  }

  static std::optional<Eigen::Index> generator_index(const CycleClass& c) {
    Eigen::Index at = -1;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (c(i) == 0) continue;
      if (c(i) != 1 || at >= 0) return std::nullopt;
      at = i;
    }
    if (at < 0) return std::nullopt;
    return at;
  }

  // Both cycles are generators: fold the generator of `from` into that of `to`.
  void merge_generators(const std::string& from, const std::string& to) {
    const auto f = generator_index(cycle(from).cls);
    const auto t = generator_index(cycle(to).cls);
    if (!f || !t || *f == *t) return;
    auto& p = d_.cycles.lattice.pairing;
    for (Eigen::Index z = 0; z < p.rows(); ++z) {
      if (z == *f || z == *t) continue;
      if (p(*t, z) == 0) p(*t, z) = p(*f, z);
      else if (p(*f, z) != 0 && p(*f, z) != p(*t, z)) reject("identifying " + from + " with " + to + " gives conflicting pairings");
      p(z, *t) = -p(*t, z);
      p(*f, z) = 0;
      p(z, *f) = 0;
    }
    for (auto& [name, info] : d_.cycles.cycles) {
      info.cls(*t) += info.cls(*f);
      info.cls(*f) = 0;
    }
    for (auto& [name, c] : d_.cycles.lattice.named) {
      if (name == d_.cycles.lattice.basis[static_cast<std::size_t>(*f)]) continue;
      c(*t) += c(*f);
      c(*f) = 0;
    }
  }

  void identify_cycle(const std::string& from, const std::string& to) {
    if (from == to) return;
    merge_generators(from, to);
    for (const auto& [z, info] : d_.cycles.cycles) {
      if (z == from || z == to) continue;
      d_.cycles.set_geo(to, z, std::max(d_.cycles.geo(to, z), d_.cycles.geo(from, z)));
    }
    for (auto& a : d_.arcs) {
      if (a.cycle == from) a.cycle = to;
    }
    for (auto& p : d_.points) {
      if (p.cycle == from) p.cycle = to;
    }
  }

  void erase_point(const std::string& id) {
    erase_id(d_.points, id);
    for (auto& j : d_.joints) {
      if (j.point == id) j.point.clear();
    }
  }

  void gc_cycles() {
    std::set<std::string> used;
    for (const auto& a : d_.arcs) used.insert(a.cycle);
    for (const auto& p : d_.points) used.insert(p.cycle);
    for (auto it = d_.cycles.cycles.begin(); it != d_.cycles.cycles.end();) {
      it = used.count(it->first) ? std::next(it) : d_.cycles.cycles.erase(it);
    }
    for (auto it = d_.cycles.geometric.begin(); it != d_.cycles.geometric.end();) {
      const bool keep = used.count(it->first.first) && used.count(it->first.second);
      it = keep ? std::next(it) : d_.cycles.geometric.erase(it);
    }
  }

  // Moves

  void birth() {
    need_sites(1);
    const std::string r = m_.site[0];
    const Fiber outer = region(r).fiber;
    const std::string inner = add_region(raised(outer));
    const std::string a = new_generator("a");
    const std::string b = new_generator("b");
    d_.cycles.set_generator_pairing(a, b, -1);
    d_.cycles.set_geo(a, b, 1);
    default_geo(a);
    default_geo(b);
    const std::string c1 = fresh("C"), c2 = fresh("C"), w1 = fresh("A"), w2 = fresh("A");
    d_.arcs.push_back({w1, ArcKind::Open, {c1, c2}, inner, r, a});
    d_.arcs.push_back({w2, ArcKind::Open, {c1, c2}, inner, r, b});
    d_.cusps.push_back({c1, {w1, w2}, {1, 1}, 0, false});
    d_.cusps.push_back({c2, {w1, w2}, {1, 1}, 1, false});
  }

  // Arcs and cusps of a wrinkle bounding `inner` from the inside, with no other cells inside.
  std::pair<std::vector<std::string>, std::vector<std::string>> wrinkle_cells(const std::string& inner, std::size_t n) {
    region(inner);
    const auto arcs = arcs_at(inner);
    if (arcs.size() != n) reject("region " + inner + " is not bounded by exactly " + std::to_string(n) + " fold arcs");
    const std::string outer = arc(arcs[0]).low;
    std::set<std::string> cusps;
    for (const auto& id : arcs) {
      const FoldArc& a = arc(id);
      if (a.kind != ArcKind::Open || a.high != inner || a.low != outer) reject("arc " + id + " is not part of a wrinkle around " + inner);
      for (const auto& v : a.ends) {
        if (!d_.cusp(v)) reject("arc " + id + " does not end at cusps");
        cusps.insert(v);
      }
    }
    if (cusps.size() != n) reject("wrinkle around " + inner + " does not have " + std::to_string(n) + " cusps");
    for (const auto& c : cusps) {
      for (const auto& a : cusp(c).arcs) {
        if (std::find(arcs.begin(), arcs.end(), a) == arcs.end()) reject("cusp " + c + " leaves the wrinkle");
      }
    }
    if (has_points_in(inner)) reject("region " + inner + " contains Lefschetz points");
    if (crossing_mentions(inner) != 0) reject("region " + inner + " meets a crossing");
    return {arcs, {cusps.begin(), cusps.end()}};
  }

  void erase_wrinkle(const std::string& inner, const std::vector<std::string>& arcs, const std::vector<std::string>& cusps) {
    for (const auto& a : arcs) erase_id(d_.arcs, a);
    for (const auto& c : cusps) erase_id(d_.cusps, c);
    erase_id(d_.regions, inner);
  }

  void inverse_birth() {
    need_sites(1);
    const auto [arcs, cusps] = wrinkle_cells(m_.site[0], 2);
    erase_wrinkle(m_.site[0], arcs, cusps);
  }

  void wrinkling(Chirality chirality) {
    need_sites(1);
    const LefschetzPoint* found = d_.point(m_.site[0]);
    if (!found) reject("unknown Lefschetz point " + m_.site[0]);
    const LefschetzPoint p = *found;
    if (p.chirality != chirality) reject("point " + p.id + " has the wrong chirality for " + std::string(move_kind_name(m_.kind)));
    if (cycle(p.cycle).separating) reject("point " + p.id + " has a separating vanishing cycle");
    const std::string a = p.cycle;
    const std::string b = new_generator("b");
    const std::string c = new_generator("c");
    anchor_pairing(a, b, -1);
    d_.cycles.set_generator_pairing(b, c, -1);
    const std::string dn = new_cycle("d", cycle(b).cls + cycle(c).cls);
    d_.cycles.set_geo(a, b, 1);
    d_.cycles.set_geo(b, dn, 1);
    d_.cycles.set_geo(a, dn, 1);
    default_geo(b);
    default_geo(c);
    default_geo(dn);
    erase_point(p.id);

    const std::string inner = add_region(raised(region(p.region).fiber));
    const std::string wa = fresh("A"), wb = fresh("A"), wd = fresh("A");
    const std::string c0 = fresh("C"), c1 = fresh("C"), c2 = fresh("C");
    if (chirality == Chirality::Standard) {
      d_.arcs.push_back({wa, ArcKind::Open, {c0, c2}, inner, p.region, a});
      d_.arcs.push_back({wb, ArcKind::Open, {c0, c1}, inner, p.region, b});
      d_.arcs.push_back({wd, ArcKind::Open, {c1, c2}, inner, p.region, dn});
      d_.cusps.push_back({c0, {wa, wb}, {1, 1}, 0, false});
      d_.cusps.push_back({c1, {wb, wd}, {1, 1}, 1, false});
      d_.cusps.push_back({c2, {wa, wd}, {1, -1}, 2, false});
    } else {
      d_.arcs.push_back({wa, ArcKind::Open, {c0, c2}, inner, p.region, a});
      d_.arcs.push_back({wb, ArcKind::Open, {c1, c2}, inner, p.region, b});
      d_.arcs.push_back({wd, ArcKind::Open, {c0, c1}, inner, p.region, dn});
      d_.cusps.push_back({c0, {wa, wd}, {1, -1}, 0, true});
      d_.cusps.push_back({c1, {wd, wb}, {1, 1}, 1, true});
      d_.cusps.push_back({c2, {wb, wa}, {1, 1}, 2, true});
    }
  }

  void inverse_wrinkling() {
    need_sites(1);
    const std::string inner = m_.site[0];
    const auto [arcs, cusps] = wrinkle_cells(inner, 3);
    const Cusp* first = nullptr;
    bool reversed = false;
    for (const auto& id : cusps) {
      const Cusp& c = cusp(id);
      if (!first || c.order < first->order) first = &c;
      reversed = reversed || c.reversed;
    }
    LefschetzPoint p;
    p.id = fresh("P");
    p.region = arc(arcs[0]).low;
    p.cycle = arc(first->arcs[0]).cycle;
    p.chirality = reversed ? Chirality::Achiral : Chirality::Standard;
    erase_wrinkle(inner, arcs, cusps);
    d_.points.push_back(p);
  }

  void cusp_smoothing(bool achiral) {
    need_sites(1);
    const Cusp c = cusp(m_.site[0]);
    const FoldArc& x = arc(c.arcs[0]);
    const FoldArc& y = arc(c.arcs[1]);
    const std::string xn = x.cycle, yn = y.cycle, high = x.high;
    if (d_.cycles.geo(xn, yn) != 1) reject("cusp " + c.id + ": cycles do not meet exactly once");
    const long s1 = achiral ? c.signs[1] : -c.signs[1];
    const CycleClass cls = c.signs[0] * cycle(xn).cls + s1 * cycle(yn).cls;
    const std::string l = new_cycle("l", cls);
    for (const auto& [z, info] : d_.cycles.cycles) {
      if (z != l && z != xn && z != yn) d_.cycles.set_geo(l, z, d_.cycles.geo(xn, z) + d_.cycles.geo(yn, z));
    }
    d_.cycles.set_geo(l, xn, 1);
    d_.cycles.set_geo(l, yn, 1);

    LefschetzPoint p;
    p.id = fresh("P");
    p.region = high;
    p.cycle = l;
    p.chirality = achiral && !c.reversed ? Chirality::Achiral : Chirality::Standard;
    p.order = c.order;
    erase_id(d_.cusps, c.id);
    d_.joints.push_back({c.id, c.arcs, p.id});
    d_.points.push_back(p);
  }

  void merging() {
    need_sites(2);
    const std::string n1 = m_.site[0], n2 = m_.site[1];
    if (n1 == n2) reject("merging needs two distinct arcs");
    const FoldArc a1 = arc(n1);
    FoldArc a2 = arc(n2);
    if (a1.kind != ArcKind::Open || a2.kind != ArcKind::Open) reject("merging needs open fold arcs");
    if (a1.high != a2.high) reject("arcs " + n1 + " and " + n2 + " do not bound a common high region");
    if (d_.cycles.geo(a1.cycle, a2.cycle) != 1) reject("cycles of " + n1 + " and " + n2 + " do not meet exactly once");
    if (region(a1.low).fiber != region(a2.low).fiber) reject("low regions of " + n1 + " and " + n2 + " have different fibers");
    for (const FoldArc* a : std::array<const FoldArc*, 2>{&a1, &a2}) {
      if (!a->ends[0].empty() && a->ends[0] == a->ends[1]) reject("arc " + a->id + " is a loop");
    }
    for (const auto& v : a1.ends) {
      if (!v.empty() && std::find(a2.ends.begin(), a2.ends.end(), v) != a2.ends.end()) reject("arcs " + n1 + " and " + n2 + " share vertex " + v);
    }
    const std::string mid = a1.high;
    if (!a1.ends[0].empty()) {
      Side probe = side(mid, arcs_at_vertex(mid, a1.ends[0], {n1, n2}), {n1, n2});
      probe.vertices.insert(a1.ends[0]);
      if (probe.vertices.count(a2.ends[1]) && !probe.vertices.count(a2.ends[0])) std::swap(a2.ends[0], a2.ends[1]);
    }

    const std::string c1 = fresh("C"), c2 = fresh("C"), r1 = fresh("A"), r2 = fresh("A");
    retarget(a1.ends[1], n1, r1);
    retarget(a2.ends[1], n2, r2);
    d_.arcs.push_back({r1, ArcKind::Open, {c2, a1.ends[1]}, mid, a1.low, a1.cycle});
    d_.arcs.push_back({r2, ArcKind::Open, {c2, a2.ends[1]}, mid, a2.low, a2.cycle});
    arc(n1).ends = {a1.ends[0], c1};
    arc(n2).ends = {a2.ends[0], c1};
    d_.cusps.push_back({c1, {n1, n2}, {1, 1}, 0, false});
    d_.cusps.push_back({c2, {r1, r2}, {1, 1}, 1, false});
    rename_region(a2.low, a1.low);

    const Side left = side(mid, {n1, n2});
    const Side right = side(mid, {r1, r2});
    if (disjoint(left, right)) move_side(right, mid, add_region(region(mid).fiber));
  }

  std::vector<std::string> arcs_at_vertex(const std::string& r, const std::string& v, const std::set<std::string>& excluded) const {
    std::vector<std::string> out;
    for (const auto& a : d_.arcs) {
      if (excluded.count(a.id) || (a.high != r && a.low != r)) continue;
      if (a.ends[0] == v || a.ends[1] == v) out.push_back(a.id);
    }
    return out;
  }

  void inverse_merging() {
    need_sites(2);
    const std::string v1 = m_.site[0], v2 = m_.site[1];
    if (v1 == v2) reject("inverse merging needs two distinct vertices");
    std::array<std::string, 2> arcs1, arcs2;
    bool broken = false;
    if (d_.cusp(v1) && d_.cusp(v2)) {
      arcs1 = cusp(v1).arcs;
      arcs2 = cusp(v2).arcs;
    } else if (d_.joint(v1) && d_.joint(v2)) {
      broken = true;
      arcs1 = d_.joint(v1)->arcs;
      arcs2 = d_.joint(v2)->arcs;
    } else {
      reject("inverse merging needs two cusps or two joints");
    }
    std::string ul = arcs1[0], lol = arcs1[1], ur = arcs2[0], lor = arcs2[1];
    auto cyc = [&](const std::string& a) { return arc(a).cycle; };
    const bool straight = cyc(ul) == cyc(ur) && cyc(lol) == cyc(lor);
    const bool crossed = cyc(ul) == cyc(lor) && cyc(lol) == cyc(ur);
    if (option("swap") == "true" || (!straight && crossed)) std::swap(ur, lor);
    const std::set<std::string> distinct{ul, lol, ur, lor};
    if (distinct.size() != 4) reject("the two vertices share a fold arc");

    const std::string low = arc(ul).low;
    for (const auto& a : distinct) {
      if (arc(a).low != low) reject("arc " + a + " does not face the common region " + low);
    }
    const std::string ml = arc(ul).high, mr = arc(ur).high;
    if (region(ml).fiber != region(mr).fiber) reject("regions " + ml + " and " + mr + " have different fibers");
    if (region(low).fiber.size() != 1) reject("fiber over the middle region " + low + " is disconnected");

    std::array<std::string, 2> points{};
    if (broken) {
      points = {d_.joint(v1)->point, d_.joint(v2)->point};
      const std::array<std::string, 2> folds{ul, ur};
      for (int i = 0; i < 2; ++i) {
        const LefschetzPoint* p = d_.point(points[static_cast<std::size_t>(i)]);
        if (!p) reject("joint " + m_.site[static_cast<std::size_t>(i)] + " has no Lefschetz point");
        if (d_.cycles.geo(p->cycle, cyc(folds[static_cast<std::size_t>(i)])) != 1) {
          reject("Lefschetz cycle " + p->cycle + " does not meet fold cycle " + cyc(folds[static_cast<std::size_t>(i)]) + " exactly once");
        }
      }
    }

    const std::string u1 = other_end(arc(ul), v1), u2 = other_end(arc(ur), v2);
    const std::string l1 = other_end(arc(lol), v1), l2 = other_end(arc(lor), v2);
    for (const auto& p : points) {
      if (!p.empty()) erase_point(p);
    }
    identify_cycle(cyc(ur), cyc(ul));
    identify_cycle(cyc(lor), cyc(lol));
    retarget(u2, ur, ul);
    retarget(l2, lor, lol);
    arc(ul).ends = {u1, u2};
    arc(lol).ends = {l1, l2};
    erase_id(d_.arcs, ur);
    erase_id(d_.arcs, lor);
    erase_id(d_.cusps, v1);
    erase_id(d_.cusps, v2);
    erase_id(d_.joints, v1);
    erase_id(d_.joints, v2);
    rename_region(mr, ml);

    const Side up = side(low, {ul});
    const Side down = side(low, {lol});
    if (disjoint(up, down)) move_side(down, low, add_region(region(low).fiber));
  }

  void flipping() {
    need_sites(1);
    const FoldArc a = arc(m_.site[0]);
    std::array<std::string, 3> names;
    int existing = 0;
    const std::array<std::string, 3> roles{"a", "b", "c"};
    for (std::size_t i = 0; i < 3; ++i) {
      auto it = m_.cycles.find(roles[i]);
      if (it == m_.cycles.end()) continue;
      if (d_.cycles.has(it->second)) ++existing;
      names[i] = it->second;
    }
    if (existing == 3) {
      const auto& [x, y, z] = names;
      if (std::abs(d_.cycles.pair(x, y)) != 1 || d_.cycles.geo(x, y) != 1) reject("cycles " + x + "," + y + " do not meet once");
      if (std::abs(d_.cycles.pair(y, z)) != 1 || d_.cycles.geo(y, z) != 1) reject("cycles " + y + "," + z + " do not meet once");
      if (d_.cycles.geo(x, z) != 0) reject("cycles " + x + "," + z + " are not disjoint");
      if (cycle(x).cls == cycle(z).cls || cycle(x).cls == -cycle(z).cls) reject("cycles " + x + "," + z + " are homologous");
    } else if (existing != 0) {
      reject("flipping cycles must be all new or all existing");
    } else {
      for (std::size_t i = 0; i < 3; ++i) names[i] = new_generator(roles[i]);
      d_.cycles.set_generator_pairing(names[0], names[1], -1);
      d_.cycles.set_generator_pairing(names[1], names[2], -1);
      d_.cycles.set_geo(names[0], names[1], 1);
      d_.cycles.set_geo(names[1], names[2], 1);
      for (const auto& n : names) default_geo(n);
    }

    const std::string top = add_region(raised(region(a.high).fiber));
    const std::string x = fresh("X"), c1 = fresh("C"), c2 = fresh("C");
    const std::string arc_c = fresh("A"), arc_b = fresh("A"), arc_a = fresh("A");
    std::string seg_r = a.id;
    if (a.kind == ArcKind::ClosedCircle) {
      FoldArc& loop = arc(a.id);
      loop.kind = ArcKind::Open;
      loop.ends = {x, x};
    } else {
      seg_r = fresh("A");
      const bool looped = !a.ends[1].empty() && a.ends[0] == a.ends[1];
      retarget(a.ends[1], a.id, seg_r, looped ? 1 : 0);
      d_.arcs.push_back({seg_r, ArcKind::Open, {x, a.ends[1]}, a.high, a.low, a.cycle});
      arc(a.id).ends[1] = x;
    }
    d_.arcs.push_back({arc_c, ArcKind::Open, {x, c1}, top, a.high, names[2]});
    d_.arcs.push_back({arc_b, ArcKind::Open, {c1, c2}, top, a.high, names[1]});
    d_.arcs.push_back({arc_a, ArcKind::Open, {c2, x}, top, a.high, names[0]});
    d_.cusps.push_back({c1, {arc_c, arc_b}, {1, 1}, 0, false});
    d_.cusps.push_back({c2, {arc_a, arc_b}, {1, -1}, 1, false});
    d_.crossings.push_back({x, {arc_c, arc_a, a.id, seg_r}, {top, a.high, a.low, a.high}});
  }

  void inverse_flipping() {
    need_sites(1);
    const Crossing x = crossing(m_.site[0]);
    std::optional<std::size_t> slot;
    std::string ca, cb, top;
    for (std::size_t i = 0; i < 4 && !slot; ++i) {
      const std::string e1 = x.arcs[i], e2 = x.arcs[(i + 1) % 4];
      if (e1 == e2) continue;
      const FoldArc& f1 = arc(e1);
      const FoldArc& f2 = arc(e2);
      if (f1.ends[0] == f1.ends[1] || f2.ends[0] == f2.ends[1]) continue;
      const std::string far1 = other_end(f1, x.id), far2 = other_end(f2, x.id);
      const Cusp* k1 = d_.cusp(far1);
      const Cusp* k2 = d_.cusp(far2);
      if (!k1 || !k2 || far1 == far2) continue;
      const std::string t = k1->arcs[0] == e1 ? k1->arcs[1] : k1->arcs[0];
      if (t == e1 || t == e2 || (k2->arcs[0] != t && k2->arcs[1] != t)) continue;
      const std::string tri = x.regions[i];
      if (f1.high != tri || f2.high != tri || arc(t).high != tri) continue;
      const auto around = arcs_at(tri);
      if (std::set<std::string>(around.begin(), around.end()) != std::set<std::string>{e1, e2, t}) continue;
      if (has_points_in(tri) || crossing_mentions(tri) != 1) continue;
      const auto& g = d_.cycles;
      if (g.geo(f1.cycle, f2.cycle) != 0) continue;
      if (cycle(f1.cycle).cls == cycle(f2.cycle).cls || cycle(f1.cycle).cls == -cycle(f2.cycle).cls) continue;
      slot = i;
      ca = far1;
      cb = far2;
      top = t;
    }
    if (!slot) reject("crossing " + x.id + " is not the double point of a flip");
    const std::size_t i = *slot;
    const std::string o1 = x.arcs[(i + 2) % 4], o2 = x.arcs[(i + 3) % 4];
    if (x.regions[(i + 1) % 4] != x.regions[(i + 3) % 4]) reject("crossing " + x.id + ": outer strand changes sides");
    const FoldArc f1 = arc(o1);
    const FoldArc f2 = arc(o2);
    if (f1.high != f2.high || f1.low != f2.low) reject("crossing " + x.id + ": outer arcs bound different regions");

    if (o1 == o2) {
      FoldArc& loop = arc(o1);
      loop.kind = ArcKind::ClosedCircle;
      loop.ends = {"", ""};
    } else {
      const std::string far1 = other_end(f1, x.id), far2 = other_end(f2, x.id);
      std::string kept = f1.cycle;
      const auto keep = option("keep");
      if (keep == "second") kept = f2.cycle;
      else if (!keep && f1.cycle != f2.cycle && !d_.cusp(far1) && d_.cusp(far2)) kept = f2.cycle;
      retarget(far2, o2, o1);
      FoldArc& merged = arc(o1);
      merged.ends[merged.ends[0] == x.id ? 0 : 1] = far2;
      merged.cycle = kept;
      erase_id(d_.arcs, o2);
    }
    for (const auto& a : {x.arcs[i], x.arcs[(i + 1) % 4], top}) erase_id(d_.arcs, a);
    erase_id(d_.cusps, ca);
    erase_id(d_.cusps, cb);
    erase_id(d_.crossings, x.id);
    erase_id(d_.regions, x.regions[i]);
  }

  void cusp_arc_isotopy() {
    need_sites(2);
    Cusp c = cusp(m_.site[0]);
    const FoldArc a = arc(m_.site[1]);
    if (a.kind != ArcKind::Open || (!a.ends[0].empty() && a.ends[0] == a.ends[1])) reject("arc " + a.id + " must be an open non-loop arc");
    const FoldArc e1 = arc(c.arcs[0]);
    const FoldArc e2 = arc(c.arcs[1]);
    if (e1.id == e2.id || a.id == e1.id || a.id == e2.id) reject("cusp " + c.id + " and arc " + a.id + " overlap");
    const std::string inner = e1.high, mid = e1.low;
    if (a.high != mid) reject("arc " + a.id + " does not have the cusp's low region " + mid + " on its high side");
    if (cycle(a.cycle).separating) reject("arc " + a.id + " has a separating cycle");
    for (const FoldArc* e : {&e1, &e2}) {
      if (d_.cycles.geo(a.cycle, e->cycle) != 0) reject("cycle " + a.cycle + " meets cusp cycle " + e->cycle);
      if (e->ends[0] == e->ends[1]) reject("arc " + e->id + " is a loop");
    }
    const Fiber wedge = lowered(region(inner).fiber);
    const Fiber& below = region(a.low).fiber;
    for (const FoldArc* e : {&e1, &e2}) {
      const auto allowed = surgered_fibers(wedge, cycle(e->cycle).separating);
      if (std::find(allowed.begin(), allowed.end(), below) == allowed.end()) reject("region " + a.low + " is not a surgery of the pushed wedge");
    }
    const std::string t = add_region(wedge);
    const std::string x1 = fresh("X"), x2 = fresh("X");
    const std::string amid = fresh("A"), aright = fresh("A"), d1 = fresh("A"), d2 = fresh("A");
    retarget(a.ends[1], a.id, aright);
    d_.arcs.push_back({amid, ArcKind::Open, {x1, x2}, inner, t, a.cycle});
    d_.arcs.push_back({aright, ArcKind::Open, {x2, a.ends[1]}, a.high, a.low, a.cycle});
    arc(a.id).ends[1] = x1;
    const std::array<std::pair<const FoldArc*, std::pair<std::string, std::string>>, 2> legs{{{&e1, {x1, d1}}, {&e2, {x2, d2}}}};
    for (const auto& [e, ids] : legs) {
      FoldArc& up = arc(e->id);
      up.ends[up.ends[0] == c.id ? 0 : 1] = ids.first;
      d_.arcs.push_back({ids.second, ArcKind::Open, {ids.first, c.id}, t, a.low, e->cycle});
    }
    cusp(c.id).arcs = {d1, d2};
    d_.crossings.push_back({x1, {amid, e1.id, a.id, d1}, {inner, mid, a.low, t}});
    d_.crossings.push_back({x2, {aright, e2.id, amid, d2}, {mid, inner, t, a.low}});
  }

  void leg_exchange() {
    need_sites(1);
    const std::string s = m_.site[0];
    if (region(s).fiber.size() < 2) reject("region " + s + " has a connected fiber");
    if (has_points_in(s)) reject("region " + s + " contains Lefschetz points");
    const auto loops = arcs_at(s);
    if (loops.empty()) reject("region " + s + " is not bounded by fold arcs");
    const std::string outer = arc(loops[0]).high;
    std::vector<std::string> xs;
    for (const auto& id : loops) {
      const FoldArc& l = arc(id);
      if (l.low != s || l.high != outer || l.kind != ArcKind::Open) reject("arc " + id + " does not bound " + s + " from above");
      if (!cycle(l.cycle).separating) reject("arc " + id + " has a nonseparating cycle");
      for (const auto& v : l.ends) {
        if (!d_.crossing(v)) reject("arc " + id + " does not end at crossings");
        if (std::find(xs.begin(), xs.end(), v) == xs.end()) xs.push_back(v);
      }
      if (l.ends[0] == l.ends[1]) reject("arc " + id + " is a loop");
    }
    if (xs.size() != 2) reject("region " + s + " does not meet exactly two crossings");
    if (crossing_mentions(s) != 2) reject("region " + s + " meets other crossings");
    const Crossing x1 = crossing(xs[0]);
    const Crossing x2 = crossing(xs[1]);
    const std::set<std::string> loop_set(loops.begin(), loops.end());

    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t k = 0; k < 4; ++k) {
      if (loop_set.count(x1.arcs[k])) continue;
      const std::string out = x1.arcs[(k + 2) % 4];
      if (!loop_set.count(out)) reject("crossing " + x1.id + " is not a flip of the loop");
      const auto j = static_cast<std::size_t>(std::find(x2.arcs.begin(), x2.arcs.end(), out) - x2.arcs.begin());
      if (j == 4) reject("loop arc " + out + " misses crossing " + x2.id);
      const std::string partner = x2.arcs[(j + 2) % 4];
      if (loop_set.count(partner)) reject("crossing " + x2.id + " is not a flip of the loop");
      pairs.emplace_back(x1.arcs[k], partner);
    }
    if (pairs.size() != 2) reject("crossings " + x1.id + "," + x2.id + " do not carry two legs each");

    for (const auto& [e, f] : pairs) {
      const FoldArc leg = arc(e);
      const FoldArc other = arc(f);
      if (leg.low != other.low) reject("legs " + e + "," + f + " have different low regions");
      if (region(leg.high).fiber != region(other.high).fiber) reject("legs " + e + "," + f + " have different high fibers");
    }
    for (const auto& [e, f] : pairs) {
      const FoldArc other = arc(f);
      const std::string far = other_end(other, x2.id);
      if (far == x1.id) reject("leg " + f + " returns to " + x1.id);
      retarget(far, f, e);
      FoldArc& leg = arc(e);
      leg.ends[leg.ends[0] == x1.id ? 0 : 1] = far;
      identify_cycle(other.cycle, leg.cycle);
      const std::string high = leg.high;
      erase_id(d_.arcs, f);
      rename_region(other.high, high);
    }
    for (const auto& l : loops) erase_id(d_.arcs, l);
    erase_id(d_.crossings, x1.id);
    erase_id(d_.crossings, x2.id);
    erase_id(d_.regions, s);
  }

  FibrationDiagram d_;
  const MoveSpec& m_;
  std::set<std::string> reserved_;
};

MonodromyParity parity_from_name(const std::string& name) {
  for (auto p : {MonodromyParity::Even, MonodromyParity::Odd, MonodromyParity::Undetermined}) {
    if (monodromy_parity_name(p) == name) return p;
  }
  throw ParseError("parity " + name);
}

nlohmann::json counts_json(const CellCounts& c) {
  return {{"regions", c.regions}, {"arcs", c.arcs},           {"cusps", c.cusps},     {"joints", c.joints},
          {"crossings", c.crossings}, {"points", c.points}, {"circles", c.circles}};
}

MoveSpec spec_from_json(const nlohmann::json& j) {
  MoveSpec m;
  m.kind = move_kind_from_name(j.at("kind").get<std::string>());
  m.site = j.at("site").get<std::vector<std::string>>();
  if (j.contains("cycles")) m.cycles = j.at("cycles").get<std::map<std::string, std::string>>();
  if (j.contains("options")) m.options = j.at("options").get<std::map<std::string, std::string>>();
  return m;
}

}  // namespace

std::string_view move_kind_name(MoveKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

MoveKind move_kind_from_name(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  throw UnknownId("move kind " + std::string(name));
}

std::optional<std::string> check_precondition(const FibrationDiagram& d, const MoveSpec& m) {
  try {
    apply_move(d, m);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

FibrationDiagram apply_move(const FibrationDiagram& d, const MoveSpec& m) {
  const auto before = validate(d);
  if (!before.empty()) throw MoveRejected("input diagram is invalid: " + before.front());
  FibrationDiagram out;
  try {
    out = Rewriter(d, m).run();
  } catch (const MoveRejected&) {
    throw;
  } catch (const Error& e) {
    throw MoveRejected(e.what());
  }
  const auto after = validate(out);
  if (!after.empty()) throw MoveRejected("rewrite leaves an invalid diagram: " + after.front());
  return out;
}

CellCounts cell_counts(const FibrationDiagram& d) {
  return {d.regions.size(), d.arcs.size(), d.cusps.size(), d.joints.size(), d.crossings.size(), d.points.size(), closed_circle_count(d)};
}

bool ScriptResult::pass() const { return matches_expected.value_or(true) && parity_matches.value_or(true); }

ScriptResult run_script(const MoveScript& script) {
  const auto invalid = validate(script.initial);
  if (!invalid.empty()) throw MoveRejected("initial diagram: " + invalid.front());
  ScriptResult r;
  FibrationDiagram current = script.initial;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const MoveSpec& step = script.steps[i];
    if (auto why = check_precondition(current, step)) {
      throw MoveRejected("step " + std::to_string(i) + " (" + std::string(move_kind_name(step.kind)) + "): " + *why);
    }
    FibrationDiagram next = apply_move(current, step);
    r.trace.push_back({i, step, cell_counts(current), cell_counts(next)});
    current = std::move(next);
  }
  r.final = std::move(current);
  if (script.expected) r.matches_expected = isomorphic(r.final, *script.expected);
  if (script.parity) {
    r.parity = circle_monodromy(r.final, script.parity->arc).parity;
    r.parity_matches = *r.parity == script.parity->expect;
  }
  return r;
}

MoveScript script_from_json(const nlohmann::json& j) {
  MoveScript s;
  try {
    s.name = j.value("name", "");
    s.transcription = j.value("transcription", false);
    s.initial = diagram_from_json(j.at("initial"));
    for (const auto& step : j.at("steps")) s.steps.push_back(spec_from_json(step));
    if (j.contains("expected")) s.expected = diagram_from_json(j.at("expected"));
    if (j.contains("parity")) {
      s.parity = ParityExpectation{j.at("parity").at("arc").get<std::string>(), parity_from_name(j.at("parity").at("expect").get<std::string>())};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("move script json: ") + e.what());
  }
  return s;
}

nlohmann::json to_json(const MoveSpec& m) {
  nlohmann::json j{{"kind", move_kind_name(m.kind)}, {"site", m.site}};
  if (!m.cycles.empty()) j["cycles"] = m.cycles;
  if (!m.options.empty()) j["options"] = m.options;
  return j;
}

nlohmann::json to_json(const ScriptResult& r) {
  nlohmann::json j;
  j["trace"] = nlohmann::json::array();
  for (const auto& t : r.trace) {
    j["trace"].push_back({{"step", t.step}, {"move", to_json(t.move)}, {"before", counts_json(t.before)}, {"after", counts_json(t.after)}});
  }
  j["final"] = to_json(r.final);
  if (r.matches_expected) j["matches_expected"] = *r.matches_expected;
  if (r.parity) j["parity"] = monodromy_parity_name(*r.parity);
  if (r.parity_matches) j["parity_matches"] = *r.parity_matches;
  j["pass"] = r.pass();
  return j;
}

}  // namespace wrinkle
