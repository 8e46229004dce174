#include "wrinkle/diagram.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

std::pair<std::string, std::string> key(const std::string& u, const std::string& v) {
  return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

template <typename T>
T* find_by_id(std::vector<T>& cells, const std::string& id) {
  for (auto& c : cells) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

template <typename T>
const T* find_by_id(const std::vector<T>& cells, const std::string& id) {
  for (const auto& c : cells) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

}  // namespace

int CycleConfig::geo(const std::string& u, const std::string& v) const {
  auto it = geometric.find(key(u, v));
  return it == geometric.end() ? 0 : it->second;
}

void CycleConfig::set_geo(const std::string& u, const std::string& v, int value) {
  if (u == v) return;
  if (value == 0) geometric.erase(key(u, v));
  else geometric[key(u, v)] = value;
}

long CycleConfig::pair(const std::string& u, const std::string& v) const {
  return pairing(lattice, cycles.at(u).cls, cycles.at(v).cls);
}

CycleClass CycleConfig::add_generator(const std::string& name) {
  if (lattice.named.count(name)) throw MoveRejected("generator " + name + " already exists");
  const Eigen::Index n = lattice.rank();
  lattice.basis.push_back(name);
  Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> grown = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>::Zero(n + 1, n + 1);
  grown.topLeftCorner(n, n) = lattice.pairing;
  lattice.pairing = grown;
  for (auto& [label, cls] : lattice.named) {
    cls.conservativeResize(n + 1);
    cls(n) = 0;
  }
  for (auto& [label, info] : cycles) {
    info.cls.conservativeResize(n + 1);
    info.cls(n) = 0;
  }
  CycleClass e = CycleClass::Zero(n + 1);
  e(n) = 1;
  lattice.named[name] = e;
  return e;
}

void CycleConfig::set_generator_pairing(const std::string& g, const std::string& h, long value) {
  const auto ig = std::find(lattice.basis.begin(), lattice.basis.end(), g);
  const auto ih = std::find(lattice.basis.begin(), lattice.basis.end(), h);
  if (ig == lattice.basis.end() || ih == lattice.basis.end()) throw UnknownId("generator " + g + " or " + h);
  const auto i = ig - lattice.basis.begin();
  const auto j = ih - lattice.basis.begin();
  lattice.pairing(i, j) = value;
  lattice.pairing(j, i) = -value;
}

void CycleConfig::add_cycle(const std::string& name, const CycleClass& cls, bool separating) {
  if (cls.size() != lattice.rank()) throw DimensionMismatch("cycle " + name);
  cycles[name] = {cls, separating};
}

std::string CycleConfig::fresh_name(const std::string& stem) const {
  auto taken = [&](const std::string& s) { return cycles.count(s) != 0 || lattice.named.count(s) != 0; };
  if (!taken(stem)) return stem;
  for (int i = 1;; ++i) {
    const std::string s = stem + std::to_string(i);
    if (!taken(s)) return s;
  }
}

Region* FibrationDiagram::region(const std::string& id) { return find_by_id(regions, id); }
const Region* FibrationDiagram::region(const std::string& id) const { return find_by_id(regions, id); }
FoldArc* FibrationDiagram::arc(const std::string& id) { return find_by_id(arcs, id); }
const FoldArc* FibrationDiagram::arc(const std::string& id) const { return find_by_id(arcs, id); }
Cusp* FibrationDiagram::cusp(const std::string& id) { return find_by_id(cusps, id); }
const Cusp* FibrationDiagram::cusp(const std::string& id) const { return find_by_id(cusps, id); }
Joint* FibrationDiagram::joint(const std::string& id) { return find_by_id(joints, id); }
const Joint* FibrationDiagram::joint(const std::string& id) const { return find_by_id(joints, id); }
Crossing* FibrationDiagram::crossing(const std::string& id) { return find_by_id(crossings, id); }
const Crossing* FibrationDiagram::crossing(const std::string& id) const { return find_by_id(crossings, id); }
LefschetzPoint* FibrationDiagram::point(const std::string& id) { return find_by_id(points, id); }
const LefschetzPoint* FibrationDiagram::point(const std::string& id) const { return find_by_id(points, id); }

bool FibrationDiagram::has_id(const std::string& id) const {
  return region(id) || arc(id) || cusp(id) || joint(id) || crossing(id) || point(id);
}

std::string FibrationDiagram::fresh_id(const std::string& stem) const {
  for (int i = 1;; ++i) {
    const std::string s = stem + std::to_string(i);
    if (!has_id(s)) return s;
  }
}

std::size_t FibrationDiagram::cell_count() const {
  return regions.size() + arcs.size() + cusps.size() + joints.size() + crossings.size() + points.size();
}

std::vector<Fiber> surgered_fibers(const Fiber& high, bool separating) {
  std::set<Fiber> out;
  for (std::size_t i = 0; i < high.size(); ++i) {
    if (i > 0 && high[i] == high[i - 1]) continue;
    Fiber rest = high;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (!separating) {
      if (high[i] == 0) continue;
      Fiber f = rest;
      f.push_back(high[i] - 1);
      std::sort(f.begin(), f.end());
      out.insert(f);
    } else {
      for (int g1 = 0; g1 <= high[i] / 2; ++g1) {
        Fiber f = rest;
        f.push_back(g1);
        f.push_back(high[i] - g1);
        std::sort(f.begin(), f.end());
        out.insert(f);
      }
    }
  }
  return {out.begin(), out.end()};
}

std::vector<std::string> validate(const FibrationDiagram& d) {
  std::vector<std::string> out;
  auto fail = [&](std::string msg) { out.push_back(std::move(msg)); };

  std::set<std::string> ids;
  auto claim = [&](const std::string& id) {
    if (id.empty()) fail("empty cell id");
    else if (!ids.insert(id).second) fail("duplicate id " + id);
  };
  for (const auto& r : d.regions) claim(r.id);
  for (const auto& a : d.arcs) claim(a.id);
  for (const auto& c : d.cusps) claim(c.id);
  for (const auto& j : d.joints) claim(j.id);
  for (const auto& x : d.crossings) claim(x.id);
  for (const auto& p : d.points) claim(p.id);

  for (const auto& r : d.regions) {
    if (r.fiber.empty()) fail("region " + r.id + " has an empty fiber");
    if (!std::is_sorted(r.fiber.begin(), r.fiber.end())) fail("region " + r.id + " fiber is not sorted");
    for (int g : r.fiber) {
      if (g < 0) fail("region " + r.id + " has negative genus");
    }
  }

  auto end_count = [&](const std::string& vertex) {
    int n = 0;
    for (const auto& a : d.arcs) n += static_cast<int>(std::count(a.ends.begin(), a.ends.end(), vertex));
    return n;
  };

  for (const auto& a : d.arcs) {
    const Region* hi = d.region(a.high);
    const Region* lo = d.region(a.low);
    if (!hi || !lo) {
      fail("arc " + a.id + " references a missing region");
      continue;
    }
    if (a.high == a.low) fail("arc " + a.id + " has the same region on both sides");
    if (!d.cycles.has(a.cycle)) {
      fail("arc " + a.id + " references missing cycle " + a.cycle);
      continue;
    }
    const auto allowed = surgered_fibers(hi->fiber, d.cycles.cycles.at(a.cycle).separating);
    if (std::find(allowed.begin(), allowed.end(), lo->fiber) == allowed.end()) {
      fail("arc " + a.id + ": low fiber of " + a.low + " is not a surgery of " + a.high + " along " + a.cycle);
    }
    if (a.kind == ArcKind::ClosedCircle) {
      if (!a.ends[0].empty() || !a.ends[1].empty()) fail("closed arc " + a.id + " has ends");
    } else {
      for (const auto& e : a.ends) {
        if (!e.empty() && !d.cusp(e) && !d.joint(e) && !d.crossing(e)) fail("arc " + a.id + " ends at unknown vertex " + e);
      }
    }
  }

  auto same_sides = [&](const std::string& what, const std::string& id, const std::string& a0, const std::string& a1) {
    const FoldArc* x = d.arc(a0);
    const FoldArc* y = d.arc(a1);
    if (!x || !y) {
      fail(what + " " + id + " references a missing arc");
      return false;
    }
    if (x->high != y->high || x->low != y->low) fail(what + " " + id + ": incident arcs bound different regions");
    return true;
  };

  for (const auto& c : d.cusps) {
    if (end_count(c.id) != 2) fail("cusp " + c.id + " is not the endpoint of exactly two arcs");
    if (!same_sides("cusp", c.id, c.arcs[0], c.arcs[1])) continue;
    for (const auto& a : c.arcs) {
      const auto& ends = d.arc(a)->ends;
      if (std::find(ends.begin(), ends.end(), c.id) == ends.end()) fail("cusp " + c.id + " is not an end of " + a);
    }
    for (int s : c.signs) {
      if (s != 1 && s != -1) fail("cusp " + c.id + " has a sign other than +-1");
    }
    const auto& u = d.arc(c.arcs[0])->cycle;
    const auto& v = d.arc(c.arcs[1])->cycle;
    if (d.cycles.has(u) && d.cycles.has(v) && d.cycles.geo(u, v) != 1) {
      fail("cusp " + c.id + ": cycles " + u + " and " + v + " do not meet exactly once");
    }
  }

  for (const auto& j : d.joints) {
    if (end_count(j.id) != 2) fail("joint " + j.id + " is not the endpoint of exactly two arcs");
    if (!same_sides("joint", j.id, j.arcs[0], j.arcs[1])) continue;
    if (!j.point.empty() && !d.point(j.point)) fail("joint " + j.id + " references missing point " + j.point);
  }

  for (const auto& x : d.crossings) {
    if (end_count(x.id) != 4) fail("crossing " + x.id + " is not the endpoint of exactly four arc ends");
    bool ok = true;
    for (const auto& a : x.arcs) ok = ok && d.arc(a) != nullptr;
    for (const auto& r : x.regions) ok = ok && d.region(r) != nullptr;
    if (!ok) {
      fail("crossing " + x.id + " references missing cells");
      continue;
    }
    for (int i = 0; i < 4; ++i) {
      const FoldArc* a = d.arc(x.arcs[static_cast<std::size_t>(i)]);
      const std::string& before = x.regions[static_cast<std::size_t>((i + 3) % 4)];
      const std::string& after = x.regions[static_cast<std::size_t>(i)];
      const bool flanked = (a->high == before && a->low == after) || (a->high == after && a->low == before);
      if (!flanked) fail("crossing " + x.id + ": arc " + a->id + " is not flanked by its regions");
    }
    // Each strand keeps its high side through the crossing.
    for (int s = 0; s < 2; ++s) {
      const FoldArc* in = d.arc(x.arcs[static_cast<std::size_t>(s)]);
      const FoldArc* out_arc = d.arc(x.arcs[static_cast<std::size_t>(s + 2)]);
      const bool in_high_forward = in->high == x.regions[static_cast<std::size_t>(s)];
      const std::string& expect = in_high_forward ? x.regions[static_cast<std::size_t>(s + 1)] : x.regions[static_cast<std::size_t>((s + 2) % 4)];
      if (out_arc->high != expect) fail("crossing " + x.id + ": strand through " + in->id + " switches its high side");
    }
  }

  for (const auto& p : d.points) {
    if (!d.region(p.region)) fail("point " + p.id + " lies in missing region " + p.region);
    if (!d.cycles.has(p.cycle)) fail("point " + p.id + " references missing cycle " + p.cycle);
  }

  for (const auto& [k, value] : d.cycles.geometric) {
    if (!d.cycles.has(k.first) || !d.cycles.has(k.second)) {
      fail("geometric entry for unknown cycle pair " + k.first + "," + k.second);
      continue;
    }
    if (value < 0) fail("negative geometric intersection for " + k.first + "," + k.second);
  }
  for (auto it = d.cycles.cycles.begin(); it != d.cycles.cycles.end(); ++it) {
    if (it->second.cls.size() != d.cycles.lattice.rank()) {
      fail("cycle " + it->first + " has the wrong lattice rank");
      continue;
    }
    for (auto jt = std::next(it); jt != d.cycles.cycles.end(); ++jt) {
      if (jt->second.cls.size() != d.cycles.lattice.rank()) continue;
      const long alg = std::abs(d.cycles.pair(it->first, jt->first));
      if (alg > d.cycles.geo(it->first, jt->first)) {
        fail("cycles " + it->first + "," + jt->first + ": algebraic intersection exceeds the geometric one");
      }
    }
  }
  return out;
}

std::vector<std::vector<std::string>> fold_components(const FibrationDiagram& d) {
  std::vector<std::size_t> parent(d.arcs.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) { return parent[i] == i ? i : parent[i] = root(parent[i]); };
  auto index = [&](const std::string& id) {
    for (std::size_t i = 0; i < d.arcs.size(); ++i) {
      if (d.arcs[i].id == id) return i;
    }
    throw UnknownId("arc " + id);
  };
  auto unite = [&](const std::string& a, const std::string& b) { parent[root(index(a))] = root(index(b)); };
  for (const auto& c : d.cusps) unite(c.arcs[0], c.arcs[1]);
  for (const auto& j : d.joints) unite(j.arcs[0], j.arcs[1]);
  for (const auto& x : d.crossings) {
    unite(x.arcs[0], x.arcs[2]);
    unite(x.arcs[1], x.arcs[3]);
  }
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < d.arcs.size(); ++i) groups[root(i)].push_back(d.arcs[i].id);
  std::vector<std::vector<std::string>> out;
  for (auto& [r, g] : groups) out.push_back(std::move(g));
  return out;
}

int closed_circle_count(const FibrationDiagram& d) {
  int n = 0;
  for (const auto& comp : fold_components(d)) {
    bool closed = true;
    for (const auto& id : comp) {
      const FoldArc* a = d.arc(id);
      if (a->kind == ArcKind::Open && (a->ends[0].empty() || a->ends[1].empty())) closed = false;
    }
    if (closed) ++n;
  }
  return n;
}

CircleMonodromy circle_monodromy(const FibrationDiagram& d, const std::string& arc) {
  std::vector<std::string> comp;
  for (auto& c : fold_components(d)) {
    if (std::find(c.begin(), c.end(), arc) != c.end()) comp = c;
  }
  if (comp.empty()) throw UnknownId("arc " + arc);
  struct Letter {
    int order;
    const Joint* joint;
    const LefschetzPoint* point;
  };
  std::vector<Letter> letters;
  for (const auto& j : d.joints) {
    if (j.point.empty() || std::find(comp.begin(), comp.end(), j.arcs[0]) == comp.end()) continue;
    const LefschetzPoint* p = d.point(j.point);
    if (!p) throw UnknownId("point " + j.point);
    letters.push_back({p->order, &j, p});
  }
  if (letters.empty()) throw Unsupported("circle through " + arc + " carries no Lefschetz points");
  std::stable_sort(letters.begin(), letters.end(), [](const Letter& a, const Letter& b) { return a.order > b.order; });
  CircleMonodromy out;
  for (const auto& l : letters) {
    out.word.letters.emplace_back(d.cycles.cycles.at(l.point->cycle).cls, l.point->chirality == Chirality::Standard ? 1 : -1);
  }
  out.fold_cycle_name = d.arc(letters.back().joint->arcs[0])->cycle;
  out.fold_cycle = d.cycles.cycles.at(out.fold_cycle_name).cls;
  out.parity = circle_parity_monodromy(d.cycles.lattice, out.word, out.fold_cycle);
  return out;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const FibrationDiagram& a, const FibrationDiagram& b) : a_(a), b_(b) {}

  bool run() { return regions(0); }

 private:
  using Map = std::map<std::string, std::string>;

  // Binds a cycle name, checking its data against every cycle bound so far.
  bool bind_cycle(const std::string& u, const std::string& v, std::vector<std::string>& added) {
    auto it = cyc_.find(u);
    if (it != cyc_.end()) return it->second == v;
    if (cyc_used_.count(v)) return false;
    const auto& cu = a_.cycles.cycles.at(u);
    const auto& cv = b_.cycles.cycles.at(v);
    if (cu.separating != cv.separating) return false;
    for (const auto& [x, y] : cyc_) {
      if (a_.cycles.geo(u, x) != b_.cycles.geo(v, y)) return false;
      if (std::abs(a_.cycles.pair(u, x)) != std::abs(b_.cycles.pair(v, y))) return false;
    }
    cyc_[u] = v;
    cyc_used_.insert(v);
    added.push_back(u);
    return true;
  }

  void unbind_cycles(const std::vector<std::string>& added) {
    for (const auto& u : added) {
      cyc_used_.erase(cyc_.at(u));
      cyc_.erase(u);
    }
  }

  std::string map_vertex(const std::string& v) const {
    if (v.empty()) return v;
    for (const Map* m : {&cusp_, &joint_, &cross_}) {
      auto it = m->find(v);
      if (it != m->end()) return it->second;
    }
    return "?";
  }

  bool regions(std::size_t i) {
    if (i == a_.regions.size()) return arcs(0);
    const auto& r = a_.regions[i];
    for (const auto& s : b_.regions) {
      if (s.fiber != r.fiber || region_used_.count(s.id)) continue;
      region_[r.id] = s.id;
      region_used_.insert(s.id);
      if (regions(i + 1)) return true;
      region_.erase(r.id);
      region_used_.erase(s.id);
    }
    return false;
  }

  bool arcs(std::size_t i) {
    if (i == a_.arcs.size()) return cusps(0);
    const auto& x = a_.arcs[i];
    for (const auto& y : b_.arcs) {
      if (arc_used_.count(y.id) || x.kind != y.kind) continue;
      if (region_.at(x.high) != y.high || region_.at(x.low) != y.low) continue;
      std::vector<std::string> added;
      if (!bind_cycle(x.cycle, y.cycle, added)) continue;
      arc_[x.id] = y.id;
      arc_used_.insert(y.id);
      if (arcs(i + 1)) return true;
      arc_.erase(x.id);
      arc_used_.erase(y.id);
      unbind_cycles(added);
    }
    return false;
  }

  bool same_pair(const std::array<std::string, 2>& p, const std::array<std::string, 2>& q) const {
    const std::string m0 = arc_.at(p[0]);
    const std::string m1 = arc_.at(p[1]);
    return (m0 == q[0] && m1 == q[1]) || (m0 == q[1] && m1 == q[0]);
  }

  bool cusps(std::size_t i) {
    if (i == a_.cusps.size()) return joints(0);
    const auto& c = a_.cusps[i];
    for (const auto& e : b_.cusps) {
      if (cusp_used_.count(e.id) || !same_pair(c.arcs, e.arcs)) continue;
      cusp_[c.id] = e.id;
      cusp_used_.insert(e.id);
      if (cusps(i + 1)) return true;
      cusp_.erase(c.id);
      cusp_used_.erase(e.id);
    }
    return false;
  }

  bool joints(std::size_t i) {
    if (i == a_.joints.size()) return crossings(0);
    const auto& j = a_.joints[i];
    for (const auto& k : b_.joints) {
      if (joint_used_.count(k.id) || !same_pair(j.arcs, k.arcs)) continue;
      if (j.point.empty() != k.point.empty()) continue;
      joint_[j.id] = k.id;
      joint_used_.insert(k.id);
      if (joints(i + 1)) return true;
      joint_.erase(j.id);
      joint_used_.erase(k.id);
    }
    return false;
  }

  bool dihedral_match(const Crossing& x, const Crossing& y) const {
    for (int flip = 0; flip < 2; ++flip) {
      for (int shift = 0; shift < 4; ++shift) {
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
          const int ai = flip ? (shift - i + 8) % 4 : (shift + i) % 4;
          // Under reflection the region between arcs i and i+1 sits before the image of arc i.
          const int ri = flip ? (shift - i - 1 + 8) % 4 : (shift + i) % 4;
          ok = arc_.at(x.arcs[static_cast<std::size_t>(i)]) == y.arcs[static_cast<std::size_t>(ai)] &&
               region_.at(x.regions[static_cast<std::size_t>(i)]) == y.regions[static_cast<std::size_t>(ri)];
        }
        if (ok) return true;
      }
    }
    return false;
  }

  bool crossings(std::size_t i) {
    if (i == a_.crossings.size()) return points(0);
    const auto& x = a_.crossings[i];
    for (const auto& y : b_.crossings) {
      if (cross_used_.count(y.id) || !dihedral_match(x, y)) continue;
      cross_[x.id] = y.id;
      cross_used_.insert(y.id);
      if (crossings(i + 1)) return true;
      cross_.erase(x.id);
      cross_used_.erase(y.id);
    }
    return false;
  }

  bool points(std::size_t i) {
    if (i == a_.points.size()) return finish();
    const auto& p = a_.points[i];
    for (const auto& q : b_.points) {
      if (point_used_.count(q.id) || p.chirality != q.chirality || region_.at(p.region) != q.region) continue;
      std::vector<std::string> added;
      if (!bind_cycle(p.cycle, q.cycle, added)) continue;
      point_[p.id] = q.id;
      point_used_.insert(q.id);
      if (points(i + 1)) return true;
      point_.erase(p.id);
      point_used_.erase(q.id);
      unbind_cycles(added);
    }
    return false;
  }

  bool finish() const {
    for (const auto& x : a_.arcs) {
      const FoldArc* y = b_.arc(arc_.at(x.id));
      std::array<std::string, 2> mapped{map_vertex(x.ends[0]), map_vertex(x.ends[1])};
      auto target = y->ends;
      std::sort(mapped.begin(), mapped.end());
      std::sort(target.begin(), target.end());
      if (mapped != target) return false;
    }
    for (const auto& j : a_.joints) {
      const Joint* k = b_.joint(joint_.at(j.id));
      if (!j.point.empty() && point_.at(j.point) != k->point) return false;
    }
    return true;
  }

  const FibrationDiagram& a_;
  const FibrationDiagram& b_;
  Map region_, arc_, cusp_, joint_, cross_, point_, cyc_;
  std::set<std::string> region_used_, arc_used_, cusp_used_, joint_used_, cross_used_, point_used_, cyc_used_;
};

}  // namespace

bool isomorphic(const FibrationDiagram& d1, const FibrationDiagram& d2) {
  if (d1.regions.size() != d2.regions.size() || d1.arcs.size() != d2.arcs.size() || d1.cusps.size() != d2.cusps.size() ||
      d1.joints.size() != d2.joints.size() || d1.crossings.size() != d2.crossings.size() ||
      d1.points.size() != d2.points.size()) {
    return false;
  }
  return IsoSearch(d1, d2).run();
}

nlohmann::json to_json(const FibrationDiagram& d) {
  using nlohmann::json;
  json j;
  j["regions"] = json::array();
  for (const auto& r : d.regions) j["regions"].push_back({{"id", r.id}, {"fiber", r.fiber}});
  j["arcs"] = json::array();
  for (const auto& a : d.arcs) {
    j["arcs"].push_back({{"id", a.id},
                         {"kind", a.kind == ArcKind::Open ? "open" : "closed"},
                         {"ends", a.ends},
                         {"high", a.high},
                         {"low", a.low},
                         {"cycle", a.cycle}});
  }
  j["cusps"] = json::array();
  for (const auto& c : d.cusps) {
    j["cusps"].push_back({{"id", c.id}, {"arcs", c.arcs}, {"signs", c.signs}, {"order", c.order}, {"reversed", c.reversed}});
  }
  j["joints"] = json::array();
  for (const auto& k : d.joints) j["joints"].push_back({{"id", k.id}, {"arcs", k.arcs}, {"point", k.point}});
  j["crossings"] = json::array();
  for (const auto& x : d.crossings) j["crossings"].push_back({{"id", x.id}, {"arcs", x.arcs}, {"regions", x.regions}});
  j["lefschetz"] = json::array();
  for (const auto& p : d.points) {
    j["lefschetz"].push_back({{"id", p.id},
                              {"region", p.region},
                              {"cycle", p.cycle},
                              {"chirality", p.chirality == Chirality::Standard ? "standard" : "achiral"},
                              {"order", p.order}});
  }
  json cycles;
  cycles["generators"] = d.cycles.lattice.basis;
  cycles["pairing"] = json::array();
  for (Eigen::Index i = 0; i < d.cycles.lattice.rank(); ++i) {
    for (Eigen::Index k = i + 1; k < d.cycles.lattice.rank(); ++k) {
      const long v = d.cycles.lattice.pairing(i, k);
      if (v != 0) {
        cycles["pairing"].push_back({d.cycles.lattice.basis[static_cast<std::size_t>(i)], d.cycles.lattice.basis[static_cast<std::size_t>(k)], v});
      }
    }
  }
  cycles["classes"] = json::object();
  for (const auto& [name, info] : d.cycles.cycles) {
    json c{{"class", format_class(d.cycles.lattice, info.cls)}};
    if (info.separating) c["separating"] = true;
    cycles["classes"][name] = c;
  }
  cycles["geometric"] = json::array();
  for (const auto& [k, v] : d.cycles.geometric) cycles["geometric"].push_back({k.first, k.second, v});
  j["cycles"] = cycles;
  return j;
}

FibrationDiagram diagram_from_json(const nlohmann::json& j) {
  FibrationDiagram d;
  try {
    const auto& cj = j.at("cycles");
    for (const auto& g : cj.at("generators")) d.cycles.add_generator(g.get<std::string>());
    for (const auto& p : cj.value("pairing", nlohmann::json::array())) {
      d.cycles.set_generator_pairing(p.at(0).get<std::string>(), p.at(1).get<std::string>(), p.at(2).get<long>());
    }
    for (const auto& [name, c] : cj.at("classes").items()) {
      d.cycles.add_cycle(name, parse_class(d.cycles.lattice, c.at("class").get<std::string>()), c.value("separating", false));
    }
    for (const auto& g : cj.value("geometric", nlohmann::json::array())) {
      d.cycles.set_geo(g.at(0).get<std::string>(), g.at(1).get<std::string>(), g.at(2).get<int>());
    }
    for (const auto& r : j.value("regions", nlohmann::json::array())) {
      Region region{r.at("id").get<std::string>(), r.at("fiber").get<Fiber>()};
      std::sort(region.fiber.begin(), region.fiber.end());
      d.regions.push_back(region);
    }
    for (const auto& a : j.value("arcs", nlohmann::json::array())) {
      FoldArc arc;
      arc.id = a.at("id").get<std::string>();
      const std::string kind = a.value("kind", "open");
      if (kind != "open" && kind != "closed") throw ParseError("arc kind " + kind);
      arc.kind = kind == "open" ? ArcKind::Open : ArcKind::ClosedCircle;
      if (a.contains("ends")) arc.ends = a.at("ends").get<std::array<std::string, 2>>();
      arc.high = a.at("high").get<std::string>();
      arc.low = a.at("low").get<std::string>();
      arc.cycle = a.at("cycle").get<std::string>();
      d.arcs.push_back(arc);
    }
    for (const auto& c : j.value("cusps", nlohmann::json::array())) {
      Cusp cusp;
      cusp.id = c.at("id").get<std::string>();
      cusp.arcs = c.at("arcs").get<std::array<std::string, 2>>();
      if (c.contains("signs")) cusp.signs = c.at("signs").get<std::array<int, 2>>();
      cusp.order = c.value("order", 0);
      cusp.reversed = c.value("reversed", false);
      d.cusps.push_back(cusp);
    }
    for (const auto& k : j.value("joints", nlohmann::json::array())) {
      d.joints.push_back({k.at("id").get<std::string>(), k.at("arcs").get<std::array<std::string, 2>>(), k.value("point", "")});
    }
    for (const auto& x : j.value("crossings", nlohmann::json::array())) {
      d.crossings.push_back({x.at("id").get<std::string>(), x.at("arcs").get<std::array<std::string, 4>>(),
                             x.at("regions").get<std::array<std::string, 4>>()});
    }
    for (const auto& p : j.value("lefschetz", nlohmann::json::array())) {
      LefschetzPoint point;
      point.id = p.at("id").get<std::string>();
      point.region = p.at("region").get<std::string>();
      point.cycle = p.at("cycle").get<std::string>();
      const std::string chirality = p.value("chirality", "standard");
      if (chirality != "standard" && chirality != "achiral") throw ParseError("chirality " + chirality);
      point.chirality = chirality == "standard" ? Chirality::Standard : Chirality::Achiral;
      point.order = p.value("order", 0);
      d.points.push_back(point);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("diagram json: ") + e.what());
  }
  return d;
}

}  // namespace wrinkle
