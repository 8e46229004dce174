#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

#include "wrinkle/forms.hpp"
#include "wrinkle/linalg.hpp"
#include "wrinkle/polynomial.hpp"
#include "wrinkle/sampling.hpp"

namespace wrinkle {

/// Admissible interval for one model parameter; open ends are unbounded.
struct ParamRange {
  Var var;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool lo_open = false;

  bool contains(const Rational& value) const {
    if (lo && (lo_open ? value <= *lo : value < *lo)) return false;
    return !hi || value <= *hi;
  }
  std::string describe() const;
};

enum class Chirality { Standard, Achiral };

/// One smooth branch of a critical point curve, given by a numeric
/// parametrisation and its derivative.
struct CurvePiece {
  std::function<Eigen::Vector4d(double)> point;
  std::function<Eigen::Vector4d(double)> tangent;
  double lo = 0.0;
  double hi = 1.0;
  bool closed = false;
};

/// Closed-form description of the critical point set of a catalog model.
struct CriticalLocus {
  enum class Kind { Empty, Point, Curve };

  Kind kind = Kind::Empty;
  std::string description;
  /// Generators of the defining ideal in (t,x,y,z), parameters substituted.
  std::vector<Polynomial> equations;
  std::vector<CurvePiece> pieces;
  /// Rational parametrisation u -> point on the locus, when one exists.
  std::function<Point4(const Rational&)> rational_point;

  bool has_rational_points() const { return static_cast<bool>(rational_point); }
  /// Euclidean distance from p to the locus (dense polyline plus refinement).
  double distance(const Eigen::Vector4d& p) const;
};

/// A map R^4 -> R^2 from the catalog.
struct LocalModel {
  std::string id;
  std::array<Polynomial, 2> components;
  std::vector<ParamRange> params;
  Assignment bound;  // parameter values already substituted into components
  /// True when the first component is the coordinate t (map of the form (t, f)).
  bool product_form = false;
  Chirality chirality = Chirality::Standard;
  /// Expected singularities, e.g. "2 cusps + fold arcs"; reporting only.
  std::vector<std::string> singularity_inventory;

  CriticalLocus known_critical_set() const;
};

LocalModel get_model(const std::string& id, const Assignment& params = {});
const std::vector<std::string>& model_ids();

/// Exact Jacobian d(F1,F2)/d(t,x,y,z) at a rational point.
Eigen::Matrix<Rational, 2, 4> jacobian(const LocalModel& model, const Point4& point);
/// Numeric Jacobian, for sampling loops.
Eigen::Matrix<double, 2, 4> jacobian_numeric(const LocalModel& model, const Eigen::Vector4d& point);
Eigen::Vector2d evaluate_numeric(const LocalModel& model, const Eigen::Vector4d& point);
std::array<Rational, 2> evaluate(const LocalModel& model, const Point4& point);

enum class ClaimKind { Closed, NonnegSquare, Transverse, FiberPositive, Equals };

struct Claim {
  ClaimKind kind;
  std::string target;  // other form id for Equals
};

std::string_view claim_name(ClaimKind kind);

struct FormEntry {
  std::string id;
  TwoForm form;
  std::vector<ParamRange> params;
  Assignment bound;
  std::string model_id;  // linked fibration model
  std::vector<Claim> claim_list;

  bool claims(ClaimKind kind) const;
};

FormEntry get_form(const std::string& id, const Assignment& params = {});
const std::vector<std::string>& form_ids();

/// Self-dual completion dt^df + *(dt^df) of a function f.
TwoForm self_dual_completion(const Polynomial& f);

Assignment point_assignment(const Point4& p, const Assignment& params);
NumericPoint numeric_point(const Eigen::Vector4d& p, const Assignment& params);

}  // namespace wrinkle
