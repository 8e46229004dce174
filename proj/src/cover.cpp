#include "wrinkle/cover.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

Eigen::Vector2d residual(double s, const Eigen::Vector2d& w, const Eigen::Vector2d& p) {
  const double t = p(0);
  const double x = p(1);
  return {t * t - x * x + s * t - w(0), 2.0 * t * x - w(1)};
}

Eigen::Vector2d polish(double s, const Eigen::Vector2d& w, Eigen::Vector2d p) {
  for (int it = 0; it < 30; ++it) {
    const Eigen::Vector2d r = residual(s, w, p);
    if (r.cwiseAbs().maxCoeff() < 1e-15) break;
    Eigen::Matrix2d j;
    j << 2.0 * p(0) + s, -2.0 * p(1), 2.0 * p(1), 2.0 * p(0);
    if (std::abs(j.determinant()) < 1e-300) break;
    const Eigen::Vector2d step = j.partialPivLu().solve(r);
    p -= step;
    if (step.norm() < 1e-17) break;
  }
  return p;
}

std::vector<Eigen::Vector2d> raw_solutions(double s, const Eigen::Vector2d& w) {
  std::vector<Eigen::Vector2d> out;
  if (w(1) == 0.0) {
    // t = 0 branch: -x^2 = w1.
    if (w(0) < 0.0) {
      const double x = std::sqrt(-w(0));
      out.emplace_back(0.0, x);
      out.emplace_back(0.0, -x);
    } else if (w(0) == 0.0) {
      out.emplace_back(0.0, 0.0);
    }
    // x = 0 branch: t^2 + s t - w1 = 0.
    const double disc = s * s + 4.0 * w(0);
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      out.emplace_back((-s + r) / 2.0, 0.0);
      out.emplace_back((-s - r) / 2.0, 0.0);
    }
    return out;
  }
  // 4 t^4 + 4 s t^3 - 4 w1 t^2 - w2^2 = 0, then x = w2 / (2 t).
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  const std::array<double, 4> c{-w(1) * w(1) / 4.0, 0.0, -w(0), s};  // monic: t^4 + s t^3 - w1 t^2 - w2^2/4
  for (int i = 0; i < 3; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -c[static_cast<std::size_t>(i)];
  const Eigen::EigenSolver<Eigen::Matrix4d> eig(companion, false);
  const double scale = 1.0 + std::abs(s) + std::abs(w(0)) + std::abs(w(1));
  for (int i = 0; i < 4; ++i) {
    const auto root = eig.eigenvalues()(i);
    if (std::abs(root.imag()) > 1e-6 * scale) continue;
    const double t = root.real();
    if (t == 0.0) continue;
    out.emplace_back(t, w(1) / (2.0 * t));
  }
  return out;
}

}  // namespace

std::size_t BranchSet::simple_count() const {
  return static_cast<std::size_t>(std::count(is_double.begin(), is_double.end(), false));
}

double BranchSet::max_residual() const {
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, residual(s, w, p).cwiseAbs().maxCoeff());
  return worst;
}

BranchSet branch_points(double s, const Eigen::Vector2d& w) {
  BranchSet out;
  out.s = s;
  out.w = w;
  for (auto p : raw_solutions(s, w)) {
    p = polish(s, w, p);
    bool merged = false;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      if ((out.points[i] - p).norm() < kBranchMergeTol) {
        out.is_double[i] = true;
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.points.push_back(p);
      out.is_double.push_back(false);
    }
  }
  std::vector<std::size_t> order(out.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = out.points[a];
    const auto& pb = out.points[b];
    return pa(0) != pb(0) ? pa(0) < pb(0) : pa(1) < pb(1);
  });
  BranchSet sorted = out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.points[i] = out.points[order[i]];
    sorted.is_double[i] = out.is_double[order[i]];
  }
  return sorted;
}

std::string_view fiber_type_name(FiberType type) {
  switch (type) {
    case FiberType::Cylinder: return "Cylinder";
    case FiberType::DoublyPuncturedTorus: return "DoublyPuncturedTorus";
    case FiberType::Transitional: return "Transitional";
  }
  return "unknown";
}

FiberType fiber_type(double s, const Eigen::Vector2d& w) {
  const BranchSet b = branch_points(s, w);
  const bool all_simple = b.simple_count() == b.points.size();
  if (all_simple && b.points.size() == 4) return FiberType::DoublyPuncturedTorus;
  if (all_simple && b.points.size() == 2) return FiberType::Cylinder;
  return FiberType::Transitional;
}

namespace {

using Tracked = std::array<Eigen::Vector2d, 4>;

struct Match {
  Tracked next;
  double max_move;
};

Match best_match(const Tracked& current, const std::vector<Eigen::Vector2d>& points) {
  std::array<int, 4> perm{0, 1, 2, 3};
  std::array<int, 4> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (int i = 0; i < 4; ++i) cost += (current[i] - points[static_cast<std::size_t>(perm[i])]).squaredNorm();
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  Match m;
  m.max_move = 0.0;
  for (int i = 0; i < 4; ++i) {
    m.next[i] = points[static_cast<std::size_t>(best[i])];
    m.max_move = std::max(m.max_move, (m.next[i] - current[i]).norm());
  }
  return m;
}

double min_separation(const std::vector<Eigen::Vector2d>& points) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::min(d, (points[i] - points[j]).norm());
  }
  return d;
}

bool four_simple(const BranchSet& b) { return b.points.size() == 4 && b.simple_count() == 4; }

}  // namespace

Collision trace_collision(double s, const std::function<Eigen::Vector2d(double)>& path, const TraceOptions& options) {
  const BranchSet initial = branch_points(s, path(0.0));
  if (!four_simple(initial)) throw Unsupported("path must start where the fiber has four branch points");
  Tracked tracked;
  for (int i = 0; i < 4; ++i) tracked[i] = initial.points[static_cast<std::size_t>(i)];

  double lambda = 0.0;
  double h = 1.0 / options.steps;
  for (;;) {
    if (lambda >= 1.0) throw Unsupported("path never leaves the four-point region");
    const double target = std::min(1.0, lambda + h);
    const BranchSet next = branch_points(s, path(target));
    if (!four_simple(next)) {
      // Bisect onto the collision, carrying labels along the regular side.
      double lo = lambda;
      double hi = target;
      while (hi - lo > options.width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const BranchSet b = branch_points(s, path(mid));
        if (four_simple(b)) {
          tracked = best_match(tracked, b.points).next;
          lo = mid;
        } else {
          hi = mid;
        }
      }
      std::vector<std::pair<double, std::pair<int, int>>> gaps;
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) gaps.push_back({(tracked[i] - tracked[j]).norm(), {i, j}});
      }
      std::sort(gaps.begin(), gaps.end());
      // Merging happens at the dedup tolerance, so the pair sits just above it.
      if (gaps[1].first < 1e3 * kBranchMergeTol) throw RefineStep("two pairs of branch points collide at once");
      if (gaps[0].first >= 2.0 * kBranchMergeTol) throw RefineStep("branch points vanished without colliding");
      std::vector<Eigen::Vector2d> start(initial.points.begin(), initial.points.end());
      return {hi, gaps[0].second, start};
    }
    const Match m = best_match(tracked, next.points);
    if (m.max_move >= 0.5 * min_separation(next.points)) {
      h *= 0.5;
      if (h < 1e-12) throw RefineStep("nearest-neighbour matching stays ambiguous");
      continue;
    }
    tracked = m.next;
    lambda = target;
    h = std::min(2.0 * h, 1.0 / options.steps);
  }
}

}  // namespace wrinkle
