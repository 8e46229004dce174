#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wrinkle/models.hpp"

namespace wrinkle {

struct Check {
  std::string name;
  bool pass = false;
  double margin = 0.0;
  std::optional<Eigen::Vector4d> witness;
  std::string detail;
};

struct SamplingInfo {
  std::uint64_t seed = 42;
  std::size_t count = 0;
  double radius = 1.0;
  double delta = 0.0;
};

struct VerificationReport {
  std::string form;
  Assignment params;
  std::vector<Check> checks;
  SamplingInfo sampling;

  bool all_pass() const;
};

struct ClosedResult {
  bool pass;
  ThreeForm residual;
};

ClosedResult verify_closed(const TwoForm& form);

/// Volume coefficient of w^w at rational samples of the unit ball; exact
/// minimum. When a model is linked, also requires an exact zero at 32
/// critical-locus samples (numeric |P| < 1e-12 when no rational
/// parametrisation exists).
Check verify_nonneg_square(const FormEntry& entry, std::size_t n_samples, std::uint64_t seed);

/// Zero-set check: every coefficient vanishes exactly at the rational locus
/// samples, and the volume coefficient is positive at samples farther than
/// delta from the locus.
Check verify_zero_set(const FormEntry& entry, const LocalModel& model, std::size_t locus_samples,
                      std::size_t off_samples, double delta, std::uint64_t seed);

struct TransversalityResult {
  Eigen::Index rank;
  bool pass;
  Eigen::VectorXd singular_values;
};

inline constexpr double kTransversalityTol = 1e-9;

TransversalityResult verify_transversality(const TwoForm& form, const Assignment& params, const Point4& zero_point);
TransversalityResult verify_transversality(const TwoForm& form, const Assignment& params,
                                           const Eigen::Vector4d& zero_point);

/// Positivity of w on oriented kernels of dF away from the critical locus.
Check verify_fiber_positivity(const FormEntry& entry, const LocalModel& model, std::size_t n_samples, double delta,
                              std::uint64_t seed);

/// Value of w(v1, v2) on the oriented fiber tangent plane at p.
double fiber_value(const TwoForm& form, const Assignment& params, const LocalModel& model, const Eigen::Vector4d& p);

struct FindKResult {
  int k;
  VerificationReport passing;
  std::optional<VerificationReport> previous;  // k - 1, showing the failure
};

struct FindKOptions {
  int k_max = 100;
  std::size_t samples = 10000;
  double delta = 0.05;
  std::uint64_t seed = 42;
};

VerificationReport check_omega(const FormEntry& entry, const LocalModel& model, const FindKOptions& options);
FindKResult find_k(const Assignment& params, const FindKOptions& options);

struct EigenData {
  Eigen::Vector4d zero_point;
  Eigen::Vector4d tangent;  // oriented by the convention below
  Eigen::Matrix<double, 4, 3> normal_frame;
  Eigen::Matrix3d matrix;
  Eigen::Vector3d eigenvalues;  // descending
  Eigen::Vector4d l_minus;      // unit, in ambient coordinates
  double trace;
  double asymmetry;
};

/// Quadratic form B(v, w) = (nabla_v w)(z, w) on the normal 3-space of the
/// zero circle. The normal space is oriented so that nabla w : N -> Lambda+
/// preserves orientation (Lambda+ oriented by dt^dx+dy^dz, dt^dy+dz^dx,
/// dt^dz+dx^dy); z is then flipped if needed so that N followed by z is
/// positively oriented in R^4.
EigenData eigenbundle(const TwoForm& form, const Assignment& params, const Eigen::Vector4d& zero_point,
                      const Eigen::Vector4d& circle_tangent);

enum class Parity { Even, Odd };
std::string_view parity_name(Parity p);

Parity circle_parity_geometric(const TwoForm& form, const Assignment& params, const CurvePiece& circle,
                               std::size_t n_steps);

}  // namespace wrinkle
