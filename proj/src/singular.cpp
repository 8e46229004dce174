#include "wrinkle/singular.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "wrinkle/errors.hpp"
#include "wrinkle/linalg.hpp"

namespace wrinkle {

std::string_view tag_name(SingularityTag tag) {
  switch (tag) {
    case SingularityTag::Fold: return "Fold";
    case SingularityTag::Cusp: return "Cusp";
    case SingularityTag::LefschetzType: return "LefschetzType";
    case SingularityTag::Degenerate: return "Degenerate";
  }
  return "unknown";
}

namespace {

bool in_catalog(const std::string& id) {
  const auto& ids = model_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

constexpr std::size_t kValidationSamples = 64;

Rational hessian_entry(const Polynomial& f, Var a, Var b, const Assignment& at) {
  return f.derivative(a).derivative(b).evaluate(at);
}

}  // namespace

CriticalLocus critical_points(const LocalModel& model) {
  if (!in_catalog(model.id)) throw Unsupported("critical set of non-catalog model " + model.id);
  CriticalLocus locus = model.known_critical_set();
  if (locus.kind == CriticalLocus::Kind::Empty) return locus;
  for (std::size_t n = 0; n < kValidationSamples; ++n) {
    if (locus.has_rational_points()) {
      const Rational u = ratio(static_cast<long>(n) - 32, 7);
      const Point4 p = locus.rational_point(u);
      if (exact_rank(jacobian(model, p)) > 1) {
        throw ModelInconsistency(model.id + ": catalog critical sample has rank 2 at u = " + format_rational(u));
      }
    } else {
      const auto& piece = locus.pieces[n % locus.pieces.size()];
      const double u = piece.lo + (piece.hi - piece.lo) * static_cast<double>(n) / kValidationSamples;
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian_numeric(model, piece.point(u)));
      if (svd.singularValues()(1) > 1e-9) {
        throw ModelInconsistency(model.id + ": catalog critical sample has rank 2 at u = " + std::to_string(u));
      }
    }
  }
  return locus;
}

std::vector<CriticalValueSample> critical_values(const LocalModel& model, std::size_t n_samples) {
  const CriticalLocus locus = critical_points(model);
  std::vector<CriticalValueSample> out;
  if (locus.pieces.empty() || n_samples == 0) return out;
  const std::size_t per_piece = (n_samples + locus.pieces.size() - 1) / locus.pieces.size();
  for (std::size_t k = 0; k < locus.pieces.size() && out.size() < n_samples; ++k) {
    const auto& piece = locus.pieces[k];
    const std::size_t count = std::min(per_piece, n_samples - out.size());
    const double denom = piece.closed ? static_cast<double>(count) : static_cast<double>(std::max<std::size_t>(count - 1, 1));
    for (std::size_t i = 0; i < count; ++i) {
      const double u = piece.lo + (piece.hi - piece.lo) * static_cast<double>(i) / denom;
      const Eigen::Vector4d p = piece.point(u);
      out.push_back({k, u, p, evaluate_numeric(model, p)});
    }
  }
  return out;
}

std::array<Rational, 2> critical_value_exact(const LocalModel& model, const Rational& u) {
  const CriticalLocus locus = model.known_critical_set();
  if (!locus.has_rational_points()) throw Unsupported(model.id + ": no rational parametrisation of the critical set");
  return evaluate(model, locus.rational_point(u));
}

Eigen::Vector2d image_velocity(const LocalModel& model, const CurvePiece& piece, double u) {
  return jacobian_numeric(model, piece.point(u)) * piece.tangent(u);
}

std::vector<double> cusp_parameters(const LocalModel& model, const CurvePiece& piece, const CuspScan& scan) {
  if (piece.lo == piece.hi) throw Degenerate(model.id + ": critical set is a point");
  const int n = scan.grid;
  const double h = (piece.hi - piece.lo) / n;
  const int count = piece.closed ? n : n + 1;
  auto speed2 = [&](double u) { return image_velocity(model, piece, u).squaredNorm(); };
  std::vector<double> grid(static_cast<std::size_t>(count));
  int run = 0;
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = speed2(piece.lo + i * h);
    run = grid[static_cast<std::size_t>(i)] < scan.velocity_tol * scan.velocity_tol ? run + 1 : 0;
    if (run >= 3) throw Degenerate(model.id + ": image velocity vanishes on an interval");
  }
  auto at = [&](int i) {
    if (piece.closed) i = (i % count + count) % count;
    return grid[static_cast<std::size_t>(i)];
  };
  std::vector<double> found;
  const int first = piece.closed ? 0 : 1;
  const int last = piece.closed ? count : count - 1;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = first; i < last; ++i) {
    if (!(at(i) <= at(i - 1) && at(i) < at(i + 1))) continue;
    double a = piece.lo + (i - 1) * h;
    double b = piece.lo + (i + 1) * h;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = speed2(c);
    double fd = speed2(d);
    while (b - a > scan.refine_width) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = speed2(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = speed2(d);
      }
    }
    const double u = 0.5 * (a + b);
    if (image_velocity(model, piece, u).cwiseAbs().maxCoeff() >= scan.velocity_tol) continue;
    double wrapped = u;
    if (piece.closed) {
      const double period = piece.hi - piece.lo;
      wrapped = piece.lo + std::fmod(std::fmod(u - piece.lo, period) + period, period);
    }
    bool duplicate = false;
    for (double f : found) duplicate = duplicate || std::abs(f - wrapped) < 1e-8;
    if (!duplicate) found.push_back(wrapped);
  }
  return found;
}

int count_cusps(const LocalModel& model, const CuspScan& scan) {
  const CriticalLocus locus = critical_points(model);
  int total = 0;
  for (const auto& piece : locus.pieces) total += static_cast<int>(cusp_parameters(model, piece, scan).size());
  return total;
}

SingularityKind classify(const LocalModel& model, const Point4& point) {
  const auto j = jacobian(model, point);
  const auto rank = exact_rank(j);
  if (rank == 2) throw NotCritical("Jacobian has rank 2 at the given point");
  const Assignment at = point_assignment(point, model.bound);
  SingularityKind out{SingularityTag::Degenerate, {}, std::nullopt};

  if (rank == 1) {
    if (!model.product_form) throw Unsupported(model.id + ": rank-1 classification needs a product-form model");
    const Polynomial& f = model.components[1];
    static constexpr std::array<Var, 3> fiber{Var::x, Var::y, Var::z};
    Eigen::Matrix<Rational, 3, 3> hess;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) hess(a, b) = hessian_entry(f, fiber[a], fiber[b], at);
    }
    const Rational det = exact_determinant(hess);
    out.certificate.emplace_back("hessian_det", det);
    if (det != 0) {
      out.tag = SingularityTag::Fold;
      return out;
    }
    const RationalMatrix kernel = exact_nullspace(hess);
    if (kernel.cols() != 1) return out;
    // D^3_k f and d_t d_k f along the kernel direction.
    Rational cubic = 0;
    Rational mixed = 0;
    for (int a = 0; a < 3; ++a) {
      if (kernel(a, 0) == 0) continue;
      mixed += kernel(a, 0) * f.derivative(Var::t).derivative(fiber[a]).evaluate(at);
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          if (kernel(b, 0) == 0 || kernel(c, 0) == 0) continue;
          cubic += kernel(a, 0) * kernel(b, 0) * kernel(c, 0) *
                   f.derivative(fiber[a]).derivative(fiber[b]).derivative(fiber[c]).evaluate(at);
        }
      }
    }
    out.certificate.emplace_back("cubic", cubic);
    out.certificate.emplace_back("mixed", mixed);
    if (cubic != 0 && mixed != 0) out.tag = SingularityTag::Cusp;
    return out;
  }

  // Rank 0: pencil of the two Hessians over rational points of the unit circle.
  std::array<Eigen::Matrix<Rational, 4, 4>, 2> q;
  for (int r = 0; r < 2; ++r) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) q[r](a, b) = hessian_entry(model.components[r], kCoords[a], kCoords[b], at);
    }
  }
  Rational smallest = -1;
  for (int n = 0; n < 64; ++n) {
    const Rational u = ratio(n - 32, 8);
    const Rational d = 1 + u * u;
    const Rational l1 = (1 - u * u) / d;
    const Rational l2 = 2 * u / d;
    Eigen::Matrix<Rational, 4, 4> pencil;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) pencil(a, b) = l1 * q[0](a, b) + l2 * q[1](a, b);
    }
    const Rational det = abs(exact_determinant(pencil));
    if (smallest < 0 || det < smallest) smallest = det;
  }
  out.certificate.emplace_back("min_pencil_det", smallest);
  if (smallest > 0) {
    out.tag = SingularityTag::LefschetzType;
    out.declared_chirality = model.chirality;
  }
  return out;
}

}  // namespace wrinkle
