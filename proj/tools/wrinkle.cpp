#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wrinkle/acceptance.hpp"
#include "wrinkle/cover.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/homology.hpp"
#include "wrinkle/jetstab.hpp"
#include "wrinkle/moves.hpp"

namespace {

using namespace wrinkle;
using nlohmann::json;

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> params;
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  std::string delta = "1/20";
  std::string svg;
  std::string report;
};

Assignment parse_params(const std::vector<std::string>& items) {
  Assignment out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Usage("--param expects name=p/q, got " + item);
    const auto var = var_from_name(item.substr(0, eq));
    if (!var) throw Usage("unknown parameter " + item.substr(0, eq));
    out[*var] = parse_rational(item.substr(eq + 1));
  }
  return out;
}

RunConfig run_config(const Options& o) {
  RunConfig c;
  c.seed = o.seed;
  c.samples = o.samples;
  c.delta = parse_rational(o.delta);
  if (c.delta <= 0) throw Usage("--delta must be positive");
  return c;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, sep);) out.push_back(item);
  return out;
}

Eigen::Vector2d parse_pair(const std::string& text) {
  const auto items = split(text, ',');
  if (items.size() != 2) throw Usage("expected two comma-separated rationals, got " + text);
  return {to_double(parse_rational(items[0])), to_double(parse_rational(items[1]))};
}

// Write to a sibling file and rename, so readers never see a partial file.
void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Usage("cannot write " + path);
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

void emit(const json& j, const std::string& report) {
  const std::string text = j.dump(2) + "\n";
  if (report.empty()) std::cout << text;
  else write_atomic(report, text);
}

json point_json(const Eigen::Vector2d& p) { return {p(0), p(1)}; }

int cmd_verify_form(const std::string& id, const Options& o) {
  const auto entry = get_form(id, parse_params(o.params));
  const auto report = verify_form(entry, run_config(o));
  emit(to_json(report), o.report);
  return report.all_pass() ? kPass : kCheckFailure;
}

int cmd_critset(const std::string& id, const Options& o, bool samples_given) {
  const auto model = get_model(id, parse_params(o.params));
  const auto plot = critset_svg(model, samples_given ? o.samples : 720);
  if (plot.empty) std::cerr << "warning: critical set of " << id << " is empty for these parameters\n";
  if (!o.svg.empty()) write_atomic(o.svg, plot.svg);
  emit({{"model", id}, {"params", to_json(model.bound)}, {"cusps", plot.cusps}, {"points", plot.points},
        {"empty", plot.empty}},
       o.report);
  return kPass;
}

int cmd_classify(const std::string& id, const std::string& point, const Options& o) {
  const auto model = get_model(id, parse_params(o.params));
  const auto items = split(point, ',');
  if (items.size() != 4) throw Usage("--point expects t,x,y,z");
  Point4 p;
  for (std::size_t i = 0; i < 4; ++i) p[i] = parse_rational(items[i]);
  try {
    json j = to_json(classify(model, p));
    j["model"] = id;
    j["point"] = items;
    emit(j, o.report);
  } catch (const NotCritical& e) {
    std::cerr << e.what() << "\n";
    return kCheckFailure;
  }
  return kPass;
}

std::function<Eigen::Vector2d(double)> named_path(const std::string& spec) {
  if (spec == "k") return [](double l) { return Eigen::Vector2d(-0.5 - l, 0.0); };
  if (spec == "up") return [](double l) { return Eigen::Vector2d(-0.5, 2.0 * l); };
  if (spec == "down") return [](double l) { return Eigen::Vector2d(-0.5, -2.0 * l); };
  const auto ends = split(spec, ':');
  if (ends.size() != 2) throw Usage("--path expects k, up, down or w1,w2:w1,w2");
  const Eigen::Vector2d from = parse_pair(ends[0]);
  const Eigen::Vector2d to = parse_pair(ends[1]);
  return [from, to](double l) { return Eigen::Vector2d(from + l * (to - from)); };
}

int cmd_cover(const std::string& s_text, const std::string& w, const std::string& path, const Options& o) {
  const double s = to_double(parse_rational(s_text));
  json j;
  j["s"] = s_text;
  if (!w.empty()) {
    const auto b = branch_points(s, parse_pair(w));
    j["w"] = w;
    j["points"] = json::array();
    for (std::size_t i = 0; i < b.points.size(); ++i) {
      j["points"].push_back({{"t", b.points[i](0)}, {"x", b.points[i](1)}, {"double", static_cast<bool>(b.is_double[i])}});
    }
    j["simple_count"] = b.simple_count();
    j["fiber"] = std::string(fiber_type_name(fiber_type(s, parse_pair(w))));
  }
  if (!path.empty()) {
    const auto c = trace_collision(s, named_path(path));
    j["path"] = path;
    j["collision"] = {{"parameter", c.parameter}, {"pair", {c.pair.first, c.pair.second}}};
    j["start"] = json::array();
    for (const auto& p : c.start) j["start"].push_back(point_json(p));
  }
  if (w.empty() && path.empty()) throw Usage("cover needs --w or --path");
  emit(j, o.report);
  return kPass;
}

int cmd_monodromy(const std::string& surface_name, const std::string& word_text, const std::string& apply,
                  const std::string& fold, const Options& o) {
  const auto surface = surface_by_name(surface_name);
  const auto word = parse_word(surface, word_text);
  const auto x = parse_class(surface, apply);
  const auto image = apply_word(surface, word, x);
  std::cout << format_class(surface, image) << "\n";
  if (!o.report.empty()) {
    json j{{"surface", surface_name}, {"word", format_word(surface, word)}, {"apply", format_class(surface, x)},
           {"image", format_class(surface, image)}};
    const auto c = parse_class(surface, fold.empty() ? apply : fold);
    j["parity"] = std::string(monodromy_parity_name(circle_parity_monodromy(surface, word, c)));
    write_atomic(o.report, j.dump(2) + "\n");
  }
  return kPass;
}

int cmd_jet(const std::string& family, const std::string& a_text, const std::string& b_text, const Options& o) {
  const Family f = family_from_name(family);
  const Rational a = parse_rational(a_text);
  const Rational b = parse_rational(b_text);
  const auto space = tangent_space(f, a, b);
  const auto form = classify_family(f, a, b);
  json j{{"family", std::string(family_name(f))},
         {"a", format_rational(a)},
         {"b", format_rational(b)},
         {"rank", space.rank},
         {"verdict", is_11_stable(f, a, b) ? "Stable" : "NotStable"},
         {"normal_form", form ? json(std::string(normal_form_name(*form))) : json(nullptr)},
         {"missing", space.missing}};
  if (form) j["normal_form_polynomial"] = (normal_form_polynomial(*form) + Polynomial::parse("y^2 - z^2")).to_string();
  emit(j, o.report);
  return kPass;
}

MoveScript load_script(const std::string& source) {
  if (source.starts_with("builtin:")) return builtin_script(source.substr(8));
  std::ifstream in(source);
  if (!in) throw Usage("cannot read " + source);
  try {
    return script_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
}

int cmd_moves_run(const std::string& source, const Options& o) {
  const auto script = load_script(source);
  try {
    const auto result = run_script(script);
    emit(to_json(result), o.report);
    return result.pass() ? kPass : kCheckFailure;
  } catch (const MoveRejected& e) {
    std::cerr << e.what() << "\n";
    return kCheckFailure;
  }
}

int cmd_acceptance(const Options& o) {
  const auto config = run_config(o);
  const auto results = run_acceptance(config);
  bool all = true;
  for (const auto& r : results) {
    std::cout << r.line() << "\n";
    all = all && r.pass();
  }
  if (!o.report.empty()) write_atomic(o.report, acceptance_report(results, config).dump(2) + "\n");
  return all ? kPass : kCheckFailure;
}

bool usage_error(const Error& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const UnknownId*>(&e) ||
         dynamic_cast<const ParameterOutOfRange*>(&e) || dynamic_cast<const UnboundVariable*>(&e) ||
         dynamic_cast<const DimensionMismatch*>(&e);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wrinkle: near-symplectic forms and wrinkled fibrations"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--param", o.params, "parameter value name=p/q (repeatable)");
    sub->add_option("--samples", o.samples, "sample count");
    sub->add_option("--seed", o.seed, "sampling seed");
    sub->add_option("--delta", o.delta, "tube radius p/q");
    sub->add_option("--svg", o.svg, "SVG output path");
    sub->add_option("--report", o.report, "JSON output path (stdout when absent)");
  };

  std::string id, point, s_text, w, path, surface = "torus2p", word, apply, fold, family, a_text = "0", b_text = "0";
  std::string source;

  auto* verify = app.add_subcommand("verify-form", "check the claims of a catalog form");
  verify->add_option("form", id, "form id")->required();
  common(verify);

  auto* critset = app.add_subcommand("critset", "critical value curve with cusp markers");
  critset->add_option("model", id, "model id")->required();
  common(critset);

  auto* classify_cmd = app.add_subcommand("classify", "singularity type at a critical point");
  classify_cmd->add_option("model", id, "model id")->required();
  classify_cmd->add_option("--point", point, "t,x,y,z as rationals")->required();
  common(classify_cmd);

  auto* cover = app.add_subcommand("cover", "branch points of the fiber double cover");
  cover->add_option("--s", s_text, "wrinkling parameter")->required();
  cover->add_option("--w", w, "base point w1,w2");
  cover->add_option("--path", path, "k, up, down or w1,w2:w1,w2");
  common(cover);

  auto* mono = app.add_subcommand("monodromy", "apply a word of Dehn twists");
  mono->add_option("--surface", surface, "torus1p or torus2p");
  mono->add_option("--word", word, "e.g. T(a+d),T(b-d),T(a-b)")->required();
  mono->add_option("--apply", apply, "class to transport")->required();
  mono->add_option("--fold", fold, "fold cycle for the parity (defaults to --apply)");
  common(mono);

  auto* jet = app.add_subcommand("jet", "(1,1)-stability of a germ family");
  jet->add_option("--family", family, "cubic, quartic1 or quartic2")->required();
  jet->add_option("--a", a_text, "a as p/q");
  jet->add_option("--b", b_text, "b as p/q");
  common(jet);

  auto* moves = app.add_subcommand("moves", "move scripts");
  moves->require_subcommand(1);
  auto* run = moves->add_subcommand("run", "run a script file or builtin:<name>");
  run->add_option("script", source, "path or builtin:<name>")->required();
  common(run);
  auto* list = moves->add_subcommand("list", "list builtin scripts");

  auto* acceptance = app.add_subcommand("acceptance", "run every acceptance criterion");
  common(acceptance);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify_form(id, o);
    if (*critset) return cmd_critset(id, o, critset->count("--samples") > 0);
    if (*classify_cmd) return cmd_classify(id, point, o);
    if (*cover) return cmd_cover(s_text, w, path, o);
    if (*mono) return cmd_monodromy(surface, word, apply, fold, o);
    if (*jet) return cmd_jet(family, a_text, b_text, o);
    if (*list) {
      for (const auto& name : builtin_script_names()) std::cout << name << "\n";
      return kPass;
    }
    if (*run) return cmd_moves_run(source, o);
    if (*acceptance) return cmd_acceptance(o);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return usage_error(e) ? kUsage : kCheckFailure;
  }
  return kUsage;
}
