#include "wrinkle/report.hpp"

#include <cmath>
#include <cstdio>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

nlohmann::json vector_json(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

// Non-finite margins have no JSON number; they become strings.
nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

void require_bound(const FormEntry& entry) {
  for (const auto& range : entry.params) {
    if (!entry.bound.count(range.var)) {
      throw UnboundVariable("form " + entry.id + " needs --param " + std::string(var_name(range.var)));
    }
  }
}

Check transversality_check(const FormEntry& entry, const LocalModel& model) {
  Check check{"transverse", true, std::numeric_limits<double>::infinity(), std::nullopt, ""};
  const CriticalLocus locus = model.known_critical_set();
  std::vector<Eigen::Vector4d> numeric;
  std::vector<Point4> exact;
  if (locus.has_rational_points()) {
    for (std::size_t n = 0; n < kTransversalitySamples; ++n) {
      exact.push_back(locus.rational_point(ratio(static_cast<long>(n) - 50, 9)));
    }
  } else if (locus.kind == CriticalLocus::Kind::Point) {
    numeric.emplace_back(Eigen::Vector4d::Zero());
  } else {
    for (const auto& piece : locus.pieces) {
      for (std::size_t n = 0; n < kTransversalitySamples; ++n) {
        numeric.push_back(piece.point(piece.lo + (piece.hi - piece.lo) * static_cast<double>(n) / kTransversalitySamples));
      }
    }
  }
  if (exact.empty() && numeric.empty()) {
    check.detail = "zero set empty";
    return check;
  }
  auto record = [&](const TransversalityResult& r, const Eigen::Vector4d& at) {
    const double third = r.singular_values.size() > 2 ? r.singular_values(2) : 0.0;
    if (third < check.margin) {
      check.margin = third;
      check.witness = at;
    }
    if (!r.pass) check.pass = false;
  };
  try {
    for (const auto& p : exact) {
      record(verify_transversality(entry.form, entry.bound, p),
             Eigen::Vector4d(p[0].get_d(), p[1].get_d(), p[2].get_d(), p[3].get_d()));
    }
    for (const auto& p : numeric) record(verify_transversality(entry.form, entry.bound, p), p);
  } catch (const NotOnZeroSet& e) {
    check.pass = false;
    check.detail = e.what();
    return check;
  }
  check.detail = std::to_string(exact.size() + numeric.size()) + " locus samples, rank 3 required";
  return check;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double view_x(double x) { return (x + 2.0) * 100.0; }
double view_y(double y) { return (2.0 - y) * 100.0; }

}  // namespace

nlohmann::json to_json(const Assignment& params) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, value] : params) j[std::string(var_name(v))] = format_rational(value);
  return j;
}

nlohmann::json to_json(const Check& check) {
  nlohmann::json j;
  j["name"] = check.name;
  j["pass"] = check.pass;
  j["margin"] = number_json(check.margin);
  j["witness"] = check.witness ? vector_json(*check.witness) : nlohmann::json(nullptr);
  j["detail"] = check.detail;
  return j;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["form"] = report.form;
  j["params"] = to_json(report.params);
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) j["checks"].push_back(to_json(c));
  j["sampling"] = {{"seed", report.sampling.seed},
                   {"count", report.sampling.count},
                   {"radius", report.sampling.radius},
                   {"delta", report.sampling.delta}};
  j["pass"] = report.all_pass();
  return j;
}

VerificationReport verify_form(const FormEntry& entry, const RunConfig& config) {
  require_bound(entry);
  const double delta = to_double(config.delta);
  VerificationReport report;
  report.form = entry.id;
  report.params = entry.bound;
  report.sampling = {config.seed, config.samples, 1.0, delta};
  const LocalModel model = get_model(entry.model_id, entry.bound);

  const auto closed = verify_closed(entry.form);
  report.checks.push_back({"closed", closed.pass, 0.0, std::nullopt, closed.pass ? "d = 0" : to_string(closed.residual)});
  if (entry.claims(ClaimKind::NonnegSquare)) {
    report.checks.push_back(verify_nonneg_square(entry, config.samples, config.seed));
  }
  if (entry.claims(ClaimKind::Transverse)) {
    const CriticalLocus locus = model.known_critical_set();
    Check zero = verify_zero_set(entry, model, 100, config.samples, delta, config.seed);
    if (locus.kind == CriticalLocus::Kind::Empty) zero.detail = "zero set empty; " + zero.detail;
    report.checks.push_back(zero);
    report.checks.push_back(transversality_check(entry, model));
  }
  if (entry.claims(ClaimKind::FiberPositive)) {
    report.checks.push_back(verify_fiber_positivity(entry, model, config.samples, delta, config.seed));
  }
  for (const auto& claim : entry.claim_list) {
    if (claim.kind != ClaimKind::Equals) continue;
    const bool same = get_form(claim.target, entry.bound).form == entry.form;
    report.checks.push_back({"equals " + claim.target, same, 0.0, std::nullopt,
                             same ? "coefficient-wise identical" : "coefficients differ"});
  }
  return report;
}

CritsetPlot critset_svg(const LocalModel& model, std::size_t samples) {
  CritsetPlot plot;
  std::string body;
  const CriticalLocus locus = critical_points(model);
  if (locus.kind == CriticalLocus::Kind::Point) {
    const Eigen::Vector2d v = evaluate_numeric(model, Eigen::Vector4d::Zero());
    body += "<circle class=\"point\" cx=\"" + fmt(view_x(v(0))) + "\" cy=\"" + fmt(view_y(v(1))) + "\" r=\"4\"/>\n";
    plot.points = 1;
  }
  const auto values = critical_values(model, samples);
  plot.points += values.size();
  plot.empty = plot.points == 0;
  for (std::size_t k = 0; k < locus.pieces.size(); ++k) {
    std::string path;
    for (const auto& s : values) {
      if (s.piece != k) continue;
      path += (path.empty() ? "M" : " L") + fmt(view_x(s.value(0))) + "," + fmt(view_y(s.value(1)));
    }
    if (path.empty()) continue;
    if (locus.pieces[k].closed) path += " Z";
    body += "<path class=\"critval\" d=\"" + path + "\"/>\n";
    std::vector<double> cusps;
    try {
      cusps = cusp_parameters(model, locus.pieces[k]);
    } catch (const Degenerate&) {
    }
    for (double u : cusps) {
      const Eigen::Vector2d v = evaluate_numeric(model, locus.pieces[k].point(u));
      body += "<circle class=\"cusp\" cx=\"" + fmt(view_x(v(0))) + "\" cy=\"" + fmt(view_y(v(1))) + "\" r=\"5\"/>\n";
      ++plot.cusps;
    }
  }
  plot.svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 400 400\" width=\"400\" height=\"400\">\n"
             "<style>.critval{fill:none;stroke:#000;stroke-width:1.5}.cusp{fill:#c00}.point{fill:#00c}"
             ".axis{stroke:#bbb;stroke-width:0.5}</style>\n"
             "<rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"#fff\"/>\n"
             "<line class=\"axis\" x1=\"0\" y1=\"200\" x2=\"400\" y2=\"200\"/>\n"
             "<line class=\"axis\" x1=\"200\" y1=\"0\" x2=\"200\" y2=\"400\"/>\n" +
             body + "</svg>\n";
  return plot;
}

nlohmann::json to_json(const SingularityKind& kind) {
  nlohmann::json j;
  j["tag"] = std::string(tag_name(kind.tag));
  j["certificate"] = nlohmann::json::object();
  for (const auto& [name, value] : kind.certificate) j["certificate"][name] = format_rational(value);
  if (kind.declared_chirality) {
    j["chirality"] = *kind.declared_chirality == Chirality::Standard ? "standard" : "achiral";
  }
  return j;
}

}  // namespace wrinkle
