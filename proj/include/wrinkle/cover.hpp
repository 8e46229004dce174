#pragma once

#include <Eigen/Core>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

namespace wrinkle {

/// Real solutions (t, x) of t^2 - x^2 + s t = w1, 2 t x = w2: the branch
/// points of the fiber of the wrinkling map over w, viewed as a double
/// cover of the (y, z) plane.
struct BranchSet {
  double s = 0.0;
  Eigen::Vector2d w = Eigen::Vector2d::Zero();
  std::vector<Eigen::Vector2d> points;  // sorted by (t, x)
  std::vector<bool> is_double;

  std::size_t simple_count() const;
  double max_residual() const;
};

inline constexpr double kBranchMergeTol = 1e-6;

BranchSet branch_points(double s, const Eigen::Vector2d& w);

enum class FiberType { Cylinder, DoublyPuncturedTorus, Transitional };
std::string_view fiber_type_name(FiberType type);

FiberType fiber_type(double s, const Eigen::Vector2d& w);

struct Collision {
  double parameter;
  std::pair<int, int> pair;  // labels of the merging branch points
  std::vector<Eigen::Vector2d> start;  // labelled initial points
};

struct TraceOptions {
  int steps = 400;
  double width = 1e-16;
};

/// Follows the four branch points along w(lambda), lambda in [0, 1], and
/// reports the first pair that collides. Labels index the initial points
/// sorted by (t, x).
Collision trace_collision(double s, const std::function<Eigen::Vector2d(double)>& path, const TraceOptions& options = {});

}  // namespace wrinkle
