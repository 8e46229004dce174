#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wrinkle/models.hpp"

namespace wrinkle {

enum class SingularityTag { Fold, Cusp, LefschetzType, Degenerate };

std::string_view tag_name(SingularityTag tag);

struct SingularityKind {
  SingularityTag tag;
  /// Named quantities that justified the tag (exact).
  std::vector<std::pair<std::string, Rational>> certificate;
  /// Lefschetz vs achiral is catalog metadata, never computed.
  std::optional<Chirality> declared_chirality;
};

/// Catalog critical set, cross-checked on 64 samples: exact rank <= 1 at
/// rational samples, smallest singular value below 1e-9 at numeric ones.
CriticalLocus critical_points(const LocalModel& model);

struct CriticalValueSample {
  std::size_t piece;
  double param;
  Eigen::Vector4d point;
  Eigen::Vector2d value;
};

/// n_samples image points spread over the pieces of the critical set
/// (closed pieces are sampled on a half-open parameter domain).
std::vector<CriticalValueSample> critical_values(const LocalModel& model, std::size_t n_samples);

/// Exact image of the rational critical-locus sample with parameter u.
std::array<Rational, 2> critical_value_exact(const LocalModel& model, const Rational& u);

/// Velocity of the critical value curve F(gamma(u)).
Eigen::Vector2d image_velocity(const LocalModel& model, const CurvePiece& piece, double u);

struct CuspScan {
  int grid = 4096;
  double refine_width = 1e-12;
  double velocity_tol = 1e-10;
};

/// Zeros of the image velocity on one piece.
std::vector<double> cusp_parameters(const LocalModel& model, const CurvePiece& piece, const CuspScan& scan = {});
int count_cusps(const LocalModel& model, const CuspScan& scan = {});

SingularityKind classify(const LocalModel& model, const Point4& point);

}  // namespace wrinkle
