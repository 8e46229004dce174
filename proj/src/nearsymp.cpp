#include "wrinkle/nearsymp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "wrinkle/errors.hpp"
#include "wrinkle/linalg.hpp"
#include "wrinkle/sampling.hpp"

namespace wrinkle {

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

// Sampling streams, fixed so that checks never share random draws.
constexpr std::uint64_t kStreamSquare = 1;
constexpr std::uint64_t kStreamOffTube = 2;
constexpr std::uint64_t kStreamFiber = 3;

Eigen::Vector4d to_vector(const Point4& p) { return {p[0].get_d(), p[1].get_d(), p[2].get_d(), p[3].get_d()}; }

/// A 2-form with parameters bound, prepared for fast double evaluation.
class NumericForm {
 public:
  NumericForm(const TwoForm& form, const Assignment& params) : params_(params) {
    for (std::size_t i = 0; i < 6; ++i) {
      coeffs_[i] = form[i].substitute(params);
      for (std::size_t j = 0; j < 4; ++j) grad_[i][j] = coeffs_[i].derivative(kCoords[j]);
    }
  }

  Eigen::Matrix<double, 6, 1> values(const Eigen::Vector4d& p) const {
    const NumericPoint np = numeric_point(p, params_);
    Eigen::Matrix<double, 6, 1> out;
    for (std::size_t i = 0; i < 6; ++i) out(static_cast<Eigen::Index>(i)) = coeffs_[i].evaluate_numeric(np);
    return out;
  }

  Eigen::Matrix<double, 6, 4> gradient(const Eigen::Vector4d& p) const {
    const NumericPoint np = numeric_point(p, params_);
    Eigen::Matrix<double, 6, 4> out;
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = grad_[i][j].evaluate_numeric(np);
      }
    }
    return out;
  }

 private:
  Assignment params_;
  std::array<Polynomial, 6> coeffs_;
  std::array<std::array<Polynomial, 4>, 6> grad_;
};

/// w(a, b) for a 2-form given by its six basis coefficients.
double pair(const Eigen::Matrix<double, 6, 1>& c, const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  constexpr auto basis = FormBasis<2>::elements();
  double out = 0.0;
  for (std::size_t n = 0; n < 6; ++n) {
    const auto i = static_cast<Eigen::Index>(basis[n][0]);
    const auto j = static_cast<Eigen::Index>(basis[n][1]);
    out += c(static_cast<Eigen::Index>(n)) * (a(i) * b(j) - a(j) * b(i));
  }
  return out;
}

std::vector<Point4> locus_samples(const CriticalLocus& locus, std::size_t count) {
  std::vector<Point4> out;
  if (!locus.has_rational_points()) return out;
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(locus.rational_point(ratio(static_cast<long>(n) - static_cast<long>(count / 2), 10)));
  }
  return out;
}

std::vector<Eigen::Vector4d> numeric_locus_samples(const CriticalLocus& locus, std::size_t count) {
  std::vector<Eigen::Vector4d> out;
  if (locus.pieces.empty()) return out;
  for (std::size_t n = 0; n < count; ++n) {
    const auto& piece = locus.pieces[n % locus.pieces.size()];
    const double frac = static_cast<double>(n / locus.pieces.size()) /
                        static_cast<double>((count + locus.pieces.size() - 1) / locus.pieces.size());
    out.push_back(piece.point(piece.lo + (piece.hi - piece.lo) * frac));
  }
  return out;
}

}  // namespace

ClosedResult verify_closed(const TwoForm& form) {
  ThreeForm residual = exterior_derivative(form);
  return {residual.is_zero(), std::move(residual)};
}

Check verify_nonneg_square(const FormEntry& entry, std::size_t n_samples, std::uint64_t seed) {
  Check check{"nonneg-square", true, 0.0, std::nullopt, ""};
  const Polynomial volume = volume_coefficient(entry.form);
  std::optional<Rational> minimum;
  for (const auto& p : sample_ball(seed, kStreamSquare, n_samples, 1)) {
    const Rational v = volume.evaluate(point_assignment(p, entry.bound));
    if (!minimum || v < *minimum) {
      minimum = v;
      check.witness = to_vector(p);
    }
  }
  if (minimum) {
    check.margin = minimum->get_d();
    check.pass = *minimum >= 0;
  }
  if (!entry.model_id.empty()) {
    const LocalModel model = get_model(entry.model_id, entry.bound);
    const CriticalLocus locus = model.known_critical_set();
    const auto exact = locus_samples(locus, 32);
    if (!exact.empty()) {
      for (const auto& p : exact) {
        if (volume.evaluate(point_assignment(p, entry.bound)) != 0) {
          check.pass = false;
          check.witness = to_vector(p);
          check.detail = "volume coefficient nonzero on the critical locus";
        }
      }
    } else {
      for (const auto& p : numeric_locus_samples(locus, 32)) {
        if (std::abs(volume.evaluate_numeric(numeric_point(p, entry.bound))) >= 1e-12) {
          check.pass = false;
          check.witness = p;
          check.detail = "volume coefficient nonzero on the critical locus";
        }
      }
    }
  }
  return check;
}

Check verify_zero_set(const FormEntry& entry, const LocalModel& model, std::size_t locus_samples_count,
                      std::size_t off_samples, double delta, std::uint64_t seed) {
  Check check{"zero-set", true, std::numeric_limits<double>::infinity(), std::nullopt, ""};
  const CriticalLocus locus = model.known_critical_set();
  const auto on = locus_samples(locus, locus_samples_count);
  if (on.empty() && locus.kind != CriticalLocus::Kind::Empty) {
    check.pass = false;
    check.detail = "no rational samples of the critical locus";
    return check;
  }
  for (const auto& p : on) {
    const auto values = evaluate(entry.form, point_assignment(p, entry.bound));
    for (const auto& v : values) {
      if (v != 0) {
        check.pass = false;
        check.witness = to_vector(p);
        check.detail = "coefficient nonzero on the critical locus";
      }
    }
  }
  const Polynomial volume = volume_coefficient(entry.form);
  std::size_t used = 0;
  for (const auto& p : sample_ball(seed, kStreamOffTube, off_samples, 1)) {
    const Eigen::Vector4d pv = to_vector(p);
    if (locus.distance(pv) <= delta) continue;
    ++used;
    const Rational v = volume.evaluate(point_assignment(p, entry.bound));
    if (v.get_d() < check.margin) {
      check.margin = v.get_d();
      if (check.pass) check.witness = pv;
    }
    if (v <= 0) {
      check.pass = false;
      check.detail = "volume coefficient not positive off the tube";
    }
  }
  if (check.detail.empty()) check.detail = std::to_string(on.size()) + " locus samples, " + std::to_string(used) + " off-tube samples";
  return check;
}

TransversalityResult verify_transversality(const TwoForm& form, const Assignment& params, const Point4& zero_point) {
  const Assignment at = point_assignment(zero_point, params);
  for (std::size_t i = 0; i < 6; ++i) {
    if (form[i].evaluate(at) != 0) throw NotOnZeroSet("coefficient " + std::to_string(i) + " is nonzero");
  }
  Eigen::Matrix<double, 6, 4> g;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = form[i].derivative(kCoords[j]).evaluate(at).get_d();
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const Eigen::Index rank = numeric_rank(g, kTransversalityTol);
  return {rank, rank == 3, svd.singularValues()};
}

TransversalityResult verify_transversality(const TwoForm& form, const Assignment& params,
                                           const Eigen::Vector4d& zero_point) {
  const NumericForm nf(form, params);
  if (nf.values(zero_point).cwiseAbs().maxCoeff() >= 1e-12) throw NotOnZeroSet("form does not vanish at the point");
  const Eigen::MatrixXd g = nf.gradient(zero_point);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const Eigen::Index rank = numeric_rank(g, kTransversalityTol);
  return {rank, rank == 3, svd.singularValues()};
}

double fiber_value(const TwoForm& form, const Assignment& params, const LocalModel& model, const Eigen::Vector4d& p) {
  const NumericForm nf(form, params);
  const Eigen::Matrix<double, 2, 4> j = jacobian_numeric(model, p);
  const Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(j, Eigen::ComputeFullV);
  Eigen::Vector4d v1 = svd.matrixV().col(2);
  Eigen::Vector4d v2 = svd.matrixV().col(3);
  const Eigen::Matrix<double, 4, 2> u = j.transpose() * (j * j.transpose()).inverse();
  Eigen::Matrix4d frame;
  frame << u.col(0), u.col(1), v1, v2;
  if (frame.determinant() < 0) std::swap(v1, v2);
  return pair(nf.values(p), v1, v2);
}

Check verify_fiber_positivity(const FormEntry& entry, const LocalModel& model, std::size_t n_samples, double delta,
                              std::uint64_t seed) {
  Check check{"fiber-positive", true, std::numeric_limits<double>::infinity(), std::nullopt, ""};
  const CriticalLocus locus = model.known_critical_set();
  const NumericForm nf(entry.form, entry.bound);
  std::size_t used = 0;
  for (const auto& rp : sample_ball(seed, kStreamFiber, n_samples, 1)) {
    const Eigen::Vector4d p = to_vector(rp);
    if (locus.distance(p) <= delta) continue;
    ++used;
    const Eigen::Matrix<double, 2, 4> j = jacobian_numeric(model, p);
    const Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(j, Eigen::ComputeFullV);
    if (svd.singularValues()(1) < 1e-10) {
      throw ModelInconsistency(model.id + ": dF degenerate away from the catalog critical set");
    }
    Eigen::Vector4d v1 = svd.matrixV().col(2);
    Eigen::Vector4d v2 = svd.matrixV().col(3);
    const Eigen::Matrix<double, 4, 2> u = j.transpose() * (j * j.transpose()).inverse();
    Eigen::Matrix4d frame;
    frame << u.col(0), u.col(1), v1, v2;
    if (frame.determinant() < 0) std::swap(v1, v2);
    const double value = pair(nf.values(p), v1, v2);
    if (value < check.margin) {
      check.margin = value;
      check.witness = p;
    }
    if (!(value > 0)) check.pass = false;
  }
  check.detail = std::to_string(used) + " samples outside the tube";
  return check;
}

VerificationReport check_omega(const FormEntry& entry, const LocalModel& model, const FindKOptions& options) {
  VerificationReport report;
  report.form = entry.id;
  report.params = entry.bound;
  report.sampling = {options.seed, options.samples, 1.0, options.delta};
  const auto closed = verify_closed(entry.form);
  report.checks.push_back({"closed", closed.pass, 0.0, std::nullopt, closed.pass ? "d = 0" : to_string(closed.residual)});
  report.checks.push_back(verify_nonneg_square(entry, options.samples, options.seed));
  report.checks.push_back(verify_fiber_positivity(entry, model, options.samples, options.delta, options.seed));
  return report;
}

FindKResult find_k(const Assignment& params, const FindKOptions& options) {
  // The volume coefficient is affine in k; tabulate both parts once.
  const FormEntry symbolic = get_form("omega_wrinkling", params);
  const LocalModel model = get_model("wrinkling", params);
  const Polynomial volume = volume_coefficient(symbolic.form);
  const Assignment zero_k = [&] {
    Assignment a = symbolic.bound;
    a[Var::k] = 0;
    return a;
  }();
  const Assignment one_k = [&] {
    Assignment a = symbolic.bound;
    a[Var::k] = 1;
    return a;
  }();
  std::vector<std::pair<Rational, Rational>> affine;
  for (const auto& p : sample_ball(options.seed, kStreamSquare, options.samples, 1)) {
    const Rational b = volume.evaluate(point_assignment(p, zero_k));
    const Rational a = volume.evaluate(point_assignment(p, one_k)) - b;
    affine.emplace_back(b, a);
  }
  auto square_ok = [&](int k) {
    return std::all_of(affine.begin(), affine.end(), [k](const auto& ba) { return ba.first + k * ba.second >= 0; });
  };
  auto entry_for = [&](int k) {
    Assignment a = params;
    a[Var::k] = k;
    return get_form("omega_wrinkling", a);
  };
  for (int k = 1; k <= options.k_max; ++k) {
    if (!square_ok(k)) continue;
    VerificationReport report = check_omega(entry_for(k), model, options);
    if (!report.all_pass()) continue;
    return {k, std::move(report), check_omega(entry_for(k - 1), model, options)};
  }
  throw KNotFound("no k <= " + std::to_string(options.k_max) + " passes");
}

std::string_view parity_name(Parity p) { return p == Parity::Even ? "Even" : "Odd"; }

EigenData eigenbundle(const TwoForm& form, const Assignment& params, const Eigen::Vector4d& zero_point,
                      const Eigen::Vector4d& circle_tangent) {
  const NumericForm nf(form, params);
  EigenData out;
  out.zero_point = zero_point;
  Eigen::Vector4d z = circle_tangent.normalized();
  const Eigen::HouseholderQR<Eigen::Vector4d> qr(z);
  const Eigen::Matrix4d q = qr.householderQ();
  Eigen::Matrix<double, 4, 3> n = q.rightCols<3>();
  const Eigen::Matrix<double, 6, 4> grad = nf.gradient(zero_point);
  auto derivative_along = [&](const Eigen::Vector4d& v) -> Eigen::Matrix<double, 6, 1> { return grad * v; };
  auto self_dual = [](const Eigen::Matrix<double, 6, 1>& c) {
    using namespace basis;
    return Eigen::Vector3d(0.5 * (c(tx) + c(yz)), 0.5 * (c(ty) - c(xz)), 0.5 * (c(tz) + c(xy)));
  };
  Eigen::Matrix3d plus;
  for (int i = 0; i < 3; ++i) plus.col(i) = self_dual(derivative_along(n.col(i)));
  const double orient = plus.determinant();
  if (std::abs(orient) < 1e-12) throw SignatureError("nabla w is not onto Lambda+ at the point");
  if (orient < 0) n.col(2) = -n.col(2);
  Eigen::Matrix4d frame;
  frame << n, z;
  if (frame.determinant() < 0) z = -z;
  out.tangent = z;
  out.normal_frame = n;
  Eigen::Matrix3d b;
  for (int i = 0; i < 3; ++i) {
    const auto c = derivative_along(n.col(i));
    for (int j = 0; j < 3; ++j) b(i, j) = pair(c, z, n.col(j));
  }
  out.asymmetry = (b - b.transpose()).cwiseAbs().maxCoeff();
  out.matrix = 0.5 * (b + b.transpose());
  out.trace = out.matrix.trace();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(out.matrix);
  // Eigen returns ascending order.
  out.eigenvalues = eig.eigenvalues().reverse();
  const double tol = 1e-9 * std::max(1.0, out.matrix.cwiseAbs().maxCoeff());
  if (!(out.eigenvalues(0) > tol && out.eigenvalues(1) > tol && out.eigenvalues(2) < -tol)) {
    throw SignatureError("eigenvalues not of signature (+,+,-)");
  }
  out.l_minus = (n * eig.eigenvectors().col(0)).normalized();
  return out;
}

Parity circle_parity_geometric(const TwoForm& form, const Assignment& params, const CurvePiece& circle,
                               std::size_t n_steps) {
  if (!circle.closed) throw Unsupported("parity needs a closed circle");
  Eigen::Vector4d first;
  Eigen::Vector4d prev;
  for (std::size_t i = 0; i <= n_steps; ++i) {
    const double u = circle.lo + (circle.hi - circle.lo) * static_cast<double>(i) / static_cast<double>(n_steps);
    Eigen::Vector4d line = eigenbundle(form, params, circle.point(u), circle.tangent(u)).l_minus;
    if (i == 0) {
      first = prev = line;
      continue;
    }
    const double d = line.dot(prev);
    if (std::abs(d) < 0.5) throw StepTooCoarse("eigen-line turned too far between steps; raise n_steps");
    if (d < 0) line = -line;
    prev = line;
  }
  return prev.dot(first) > 0 ? Parity::Even : Parity::Odd;
}

}  // namespace wrinkle
