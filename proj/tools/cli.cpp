#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "ulrich_kit.hpp"

namespace ulrich_kit::cli {
namespace {

struct Settings {
  std::optional<Window> window;
  std::optional<int> probe_depth;
  SlopeConvention convention = SlopeConvention::paper_literal;
};

struct Outcome {
  std::string status;
  int code = 0;
  Json payload;
  std::optional<VarietyModel> variety;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void apply_setting(Settings& s, const std::string& key, const std::string& value) {
  if (key == "window") {
    s.window = parse_window(value);
  } else if (key == "probe_depth") {
    int depth = 0;
    try {
      depth = std::stoi(value);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "probe_depth must be an integer");
    }
    if (depth < 1) throw Error(ErrorKind::Parse, "probe_depth must be >= 1");
    s.probe_depth = depth;
  } else if (key == "convention") {
    s.convention = parse_convention(value);
  } else {
    throw Error(ErrorKind::Parse, "unknown config key: " + key);
  }
}

void apply_config(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open config " + path);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, "config lines look like key=value");
    apply_setting(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedModel:
    case ErrorKind::UnsupportedQuadricDim:
    case ErrorKind::UnsupportedProduct:
    case ErrorKind::NoOracle:
    case ErrorKind::NoRestrictionRule:
    case ErrorKind::NoDualRule:
    case ErrorKind::UnknownK0Rank:
      return 3;
    case ErrorKind::Parse:
    case ErrorKind::MalformedModel:
    case ErrorKind::MissingConvention:
    case ErrorKind::EmptyGrid:
    case ErrorKind::NonpositiveT:
    case ErrorKind::IncompleteTable:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::ModelMismatch:
      return 2;
    default:
      return 1;
  }
}

void tsv_lines(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) tsv_lines(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) tsv_lines(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out << prefix << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit_tsv(const Json& report, std::ostream& out) {
  const Json& payload = report.at("payload");
  if (payload.is_object() && payload.contains("table") && payload.at("table").contains("rows")) {
    out << "i\tt\th\n";
    for (const auto& row : payload.at("table").at("rows")) out << row.at("i") << '\t' << row.at("t") << '\t' << row.at("h") << '\n';
    return;
  }
  tsv_lines(report, "", out);
}

Json row_json(const ScanRow& row) {
  Json j;
  j["s"] = to_json(row.s);
  j["t"] = to_json(row.t);
  j["best_shift"] = row.heart.best_shift;
  j["verdict"] = heart_verdict_name(row.heart.verdict);
  j["reason"] = row.heart.reason ? Json(heart_reason_name(*row.heart.reason)) : Json();
  j["charge"] = to_json(row.charge);
  j["im_zero"] = row.im_zero;
  j["closed_form"] = row.closed_form ? to_json(*row.closed_form) : Json();
  j["closed_form_im_zero"] = row.closed_form_im_zero ? Json(*row.closed_form_im_zero) : Json();
  j["phase"] = row.phase ? Json(*row.phase) : Json();
  return j;
}

struct Fixture {
  std::string name;
  std::function<std::pair<bool, std::string>()> body;
};

std::vector<Fixture> demo_fixtures() {
  const auto pass_fail = [](bool ok, std::string detail) { return std::pair<bool, std::string>{ok, std::move(detail)}; };
  std::vector<Fixture> fx;
  fx.push_back({"pn-structure-sheaf-sums", [=] {
                  const auto p3 = VarietyModel::parse("pn:3");
                  const FormalComplex e(p3, {{0, line(0)}, {2, line(0)}});
                  const auto m = pn_decompose(e);
                  return pass_fail(is_ulrich_object(e, Mode::both).passed && m.at(0) == 1 && m.at(2) == 1, "O + O[-2] on P^3, m = {0:1, 2:1}");
                }});
  fx.push_back({"pn-twist-fails", [=] {
                  const auto v = is_ulrich_sheaf(line(1), VarietyModel::parse("pn:2"));
                  const auto w = v.criteria.front().witness;
                  return pass_fail(!v.passed && w && *w == Witness{0, -1, 1}, "O(1) on P^2 fails at (i=0, t=-1, h=1)");
                }});
  fx.push_back({"product-spinor-lines", [=] {
                  const auto q = VarietyModel::parse("prod:1x1");
                  return pass_fail(is_ulrich_sheaf(line(1, 0), q).passed && is_ulrich_sheaf(line(0, 1), q).passed,
                                   "O(1,0) and O(0,1) on P^1 x P^1 under O(1,1)");
                }});
  fx.push_back({"q3-spinor", [=] {
                  const auto q3 = VarietyModel::parse("quadric:3");
                  const SheafDescriptor s = Spinor{};
                  return pass_fail(is_ulrich_sheaf(s, q3).passed && sheaf_column(s, q3, 0)[0] == 4, "S on Q^3, h0 = 4 = deg * rank");
                }});
  fx.push_back({"q3-spinor-restriction", [=] {
                  const auto r = restrict_hyperplane(FormalComplex::single(VarietyModel::parse("quadric:3"), Spinor{}));
                  return pass_fail(r.source_vanishes && !r.restricted_witness, "S|_Q2 = S+ + S-, vanishing at j = 1");
                }});
  fx.push_back({"elliptic-witness", [=] {
                  bool ok = true;
                  for (int d = 3; d <= 10; ++d) ok = ok && elliptic_witness(VarietyModel::elliptic(d)).verdict.passed;
                  return pass_fail(ok, "degree-d line bundle with nontrivial L(-1), d = 3..10");
                }});
  fx.push_back({"elliptic-gate", [=] {
                  const auto g = generator_gate(std::vector<SheafDescriptor>{line(1)}, VarietyModel::parse("elliptic:3"));
                  return pass_fail(g.verdict == GateVerdict::DeficientRank && g.rank == 1 && g.needed == 2, "rank 1 < 2 for <O(1)>");
                }});
  fx.push_back({"chern-solve-example", [=] {
                  const auto sol = ulrich_chern_solve(VarietyModel::parse("surface:d=4,i=0,chi=2"), 2);
                  return pass_fail(sol.cls.r() == 2 && sol.cls.e1() == 3 && sol.cls.e2() == 1, "d=4, i=0, chi=2, r=2 gives (2, 3, 1)");
                }});
  fx.push_back({"ulrich-charge-example", [=] {
                  const auto x = VarietyModel::parse("surface:d=4,i=0,chi=2");
                  const ChargeValue z = central_charge(ulrich_chern_solve(x, 2).cls, 0, 1);
                  const ChargeValue cf = ulrich_charge_closed_form(2, 0, 1, x);
                  return pass_fail(z == cf && z == ChargeValue{0, 12}, "r=2, (s,t)=(0,1): Z = 12i");
                }});
  fx.push_back({"pushforward-product-line", [=] {
                  const auto rep = pushforward_finite(FormalComplex::single(VarietyModel::parse("prod:1x1"), line(0, 1)),
                                                      VarietyModel::parse("pn:2"));
                  return pass_fail(rep.trivialized && rep.multiplicities == std::map<int, std::int64_t>{{0, 2}}, "pi_* O(0,1) = O^2");
                }});
  fx.push_back({"yoneda-not-in-heart", [=] {
                  const auto x = VarietyModel::parse("surface:d=4,i=0,chi=2");
                  const auto u = abstract_ulrich_sheaf(x, 1);
                  const auto e = yoneda_build(u, u, 2, ExtWitness::asserted, x);
                  bool ok = true;
                  for (auto c : {SlopeConvention::paper_literal, SlopeConvention::normalized})
                    for (int s = -3; s <= 3; ++s) {
                      const auto h = heart_gate(e, s, c);
                      ok = ok && h.verdict == HeartVerdict::NotInHeart && h.reason == HeartReason::equal_slope;
                    }
                  return pass_fail(ok, "equal-slope Yoneda object, both conventions");
                }});
  fx.push_back({"product-zero-ext", [=] {
                  try {
                    yoneda_build(line(0, 1), line(1, 0), 2, ExtWitness::computed, VarietyModel::parse("prod:1x1"));
                  } catch (const Error& e) {
                    return pass_fail(e.kind() == ErrorKind::ZeroExt, "Ext^2(O(0,1), O(1,0)) = 0");
                  }
                  return pass_fail(false, "expected ZeroExt");
                }});
  fx.push_back({"beilinson-orthogonal", [=] {
                  const auto p2 = VarietyModel::parse("pn:2");
                  const auto in = orthogonal_membership(FormalComplex::single(p2, line(0), -3), {line(1), line(2)});
                  const auto out = orthogonal_membership(FormalComplex::single(p2, line(1)), {line(1), line(2)});
                  return pass_fail(in.member && !out.member, "O[3] in <O(1),O(2)>^perp, O(1) not");
                }});
  return fx;
}

std::optional<VarietyModel> maybe_variety(const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  return VarietyModel::parse(spec);
}

VarietyModel require_variety(const std::string& spec) {
  if (spec.empty()) throw Error(ErrorKind::Parse, "--variety is required");
  return VarietyModel::parse(spec);
}

VarietyModel surface_or_variety(const std::string& surface, const std::string& variety) {
  if (!surface.empty()) return VarietyModel::parse("surface:" + surface);
  return require_variety(variety);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Ulrich, Riemann-Roch and central-charge checks on model varieties", "ulrich-kit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path, window_text;
  std::optional<std::string> convention_text;
  std::optional<int> probe_depth;
  bool tsv = false;
  app.add_option("--config", config_path, "key=value file: window, probe_depth, convention");
  app.add_option("--out", out_path, "also write the report to this path");
  app.add_flag("--tsv", tsv, "tab-separated output");
  app.add_option("--window", window_text, "twist window lo..hi");
  app.add_option("--probe-depth", probe_depth, "initializedness probe depth");
  app.add_option("--convention", convention_text, "slope convention: paper-literal or normalized");

  std::string variety, sheaf, object, mode = "both", surface, s_text, t_text, grid_text;
  int rank = 0;
  std::vector<std::string> bundles;
  bool paper_examples = false;

  auto* table = app.add_subcommand("table", "cohomology table of a sheaf or object");
  table->add_option("--variety", variety);
  table->add_option("--sheaf", sheaf);
  table->add_option("--object", object);

  auto* check = app.add_subcommand("check", "Ulrich verdict for a sheaf or object");
  check->add_option("--variety", variety);
  check->add_option("--sheaf", sheaf);
  check->add_option("--object", object);
  check->add_option("--mode", mode)->check(CLI::IsMember({"direct", "sheafwise", "both"}));

  auto* chern = app.add_subcommand("chern-solve", "Ulrich Chern character of rank r on a surface");
  chern->add_option("--surface", surface, "d=<d>,i=<i>,chi=<c>");
  chern->add_option("--variety", variety);
  chern->add_option("--rank", rank)->required();

  auto* charge = app.add_subcommand("charge", "central charge of the rank-r Ulrich class");
  charge->add_option("--surface", surface, "d=<d>,i=<i>,chi=<c>");
  charge->add_option("--variety", variety);
  charge->add_option("--rank", rank)->required();
  charge->add_option("--s", s_text)->required();
  charge->add_option("--t", t_text)->required();

  auto* gate = app.add_subcommand("gate", "K-lattice rank gate for a list of sheaves");
  gate->add_option("--variety", variety)->required();
  gate->add_option("--bundles", bundles, "descriptors; ';' separates several in one argument")->required();

  auto* scan = app.add_subcommand("scan", "heart gate and charge over an (s,t) grid");
  scan->add_option("--variety", variety);
  scan->add_option("--object", object)->required();
  scan->add_option("--grid", grid_text, "s=<lo>..<hi>:<step>,t=<lo>..<hi>:<step>")->required();

  auto* demo = app.add_subcommand("demo", "built-in example fixtures");
  demo->add_flag("--paper-examples", paper_examples)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Settings settings;
  Outcome outcome;
  try {
    if (!config_path.empty()) apply_config(config_path, settings);
    if (!window_text.empty()) apply_setting(settings, "window", window_text);
    if (probe_depth) apply_setting(settings, "probe_depth", std::to_string(*probe_depth));
    if (convention_text) apply_setting(settings, "convention", *convention_text);

    if (command == "table") {
      outcome.variety = maybe_variety(variety);
      if (!object.empty()) {
        const FormalComplex e = load_object(object, outcome.variety);
        outcome.variety = e.model();
        const HyperTable h = hyper_table(e, settings.window.value_or(default_window(e.model().dim())));
        Json certs = Json::object();
        for (const auto& [t, c] : h.certificates) certs[std::to_string(t)] = certificate_name(c);
        outcome.payload = {{"object", to_json(e)}, {"table", to_json(h.table)}, {"certificates", certs}};
      } else {
        if (sheaf.empty()) throw Error(ErrorKind::Parse, "table needs --sheaf or --object");
        const VarietyModel model = require_variety(variety);
        const SheafDescriptor desc = parse_descriptor(sheaf, model);
        const CohomologyTable t = sheaf_table(desc, model, settings.window.value_or(default_window(model.dim())));
        outcome.payload = {{"sheaf", to_string(desc)}, {"table", to_json(t)}};
      }
      outcome.status = "pass";
    } else if (command == "check") {
      const CheckOptions opts{settings.window, settings.probe_depth};
      UlrichVerdict v;
      if (!object.empty()) {
        const FormalComplex e = load_object(object, maybe_variety(variety));
        outcome.variety = e.model();
        v = is_ulrich_object(e, parse_mode(mode), opts);
        outcome.payload = {{"object", to_json(e)}, {"verdict", to_json(v)}};
      } else {
        if (sheaf.empty()) throw Error(ErrorKind::Parse, "check needs --sheaf or --object");
        const VarietyModel model = require_variety(variety);
        outcome.variety = model;
        const SheafDescriptor desc = parse_descriptor(sheaf, model);
        v = is_ulrich_sheaf(desc, model, opts);
        outcome.payload = {{"sheaf", sheaf_to_json(desc)}, {"verdict", to_json(v)}};
      }
      outcome.status = v.passed ? "pass" : "fail";
      outcome.code = v.passed ? 0 : 1;
    } else if (command == "chern-solve") {
      const VarietyModel model = surface_or_variety(surface, variety);
      outcome.variety = model;
      const auto sol = ulrich_chern_solve(model, rank);
      const bool admissible = chern_admissible(sol.cls);
      const auto mu = slope(sol.cls);
      outcome.payload = {{"rank", rank},
                         {"class", to_json(sol.cls)},
                         {"numeric_only", sol.numeric_only},
                         {"admissible", admissible},
                         {"slope", mu ? to_json(*mu) : Json()}};
      outcome.status = admissible ? "pass" : "fail";
      outcome.code = admissible ? 0 : 1;
    } else if (command == "charge") {
      const VarietyModel model = surface_or_variety(surface, variety);
      outcome.variety = model;
      const Rational s = parse_rational(s_text), t = parse_rational(t_text);
      const NumClass cls = ulrich_chern_solve(model, rank).cls;
      const ChargeValue z = central_charge(cls, s, t);
      const ChargeValue cf = ulrich_charge_closed_form(rank, s, t, model);
      outcome.payload = {{"rank", rank},       {"s", to_json(s)},           {"t", to_json(t)},
                         {"class", to_json(cls)}, {"charge", to_json(z)},      {"closed_form", to_json(cf)},
                         {"closed_form_agrees", z == cf}};
      outcome.status = "pass";
    } else if (command == "gate") {
      const VarietyModel model = require_variety(variety);
      outcome.variety = model;
      std::vector<SheafDescriptor> descs;
      Json names = Json::array();
      for (const auto& arg : bundles)
        for (const auto& piece : split_descriptor_list(arg)) {
          descs.push_back(parse_descriptor(piece, model));
          names.push_back(to_string(descs.back()));
        }
      const GateResult g = generator_gate(descs, model);
      Json classes = Json::array();
      for (const auto& c : g.classes) {
        Json row = Json::array();
        for (const auto& x : c) row.push_back(to_json(x));
        classes.push_back(row);
      }
      outcome.payload = {{"bundles", names}, {"verdict", gate_verdict_name(g.verdict)}, {"rank", g.rank}, {"needed", g.needed}, {"classes", classes}};
      outcome.status = g.verdict == GateVerdict::FullRank ? "pass" : "fail";
      outcome.code = g.verdict == GateVerdict::FullRank ? 0 : 1;
    } else if (command == "scan") {
      const FormalComplex e = load_object(object, maybe_variety(variety));
      outcome.variety = e.model();
      const auto rows = question_scan(e, parse_grid(grid_text), settings.convention);
      Json out_rows = Json::array();
      for (const auto& r : rows) out_rows.push_back(row_json(r));
      outcome.payload = {{"object", to_json(e)},
                         {"note", "exploratory evidence only; no stability verdict"},
                         {"rows", out_rows}};
      outcome.status = "pass";
    } else if (command == "demo") {
      Json results = Json::array();
      bool all = true;
      for (const auto& f : demo_fixtures()) {
        std::pair<bool, std::string> r;
        try {
          r = f.body();
        } catch (const std::exception& ex) {
          r = {false, ex.what()};
        }
        all = all && r.first;
        results.push_back({{"name", f.name}, {"passed", r.first}, {"detail", r.second}});
      }
      outcome.payload = {{"fixtures", results}};
      outcome.status = all ? "pass" : "fail";
      outcome.code = all ? 0 : 1;
    }
  } catch (const Error& e) {
    outcome.status = "error";
    outcome.code = exit_code(e.kind());
    outcome.payload = {{"error", error_name(e.kind())}, {"message", e.what()}};
    err << "ulrich-kit: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    outcome.status = "error";
    outcome.code = 2;
    outcome.payload = {{"error", "Parse"}, {"message", e.what()}};
    err << "ulrich-kit: Parse: " << e.what() << '\n';
  }

  Json conventions;
  conventions["slope"] = convention_name(settings.convention);
  conventions["window"] = settings.window ? to_json(*settings.window) : Json("default");
  conventions["probe_depth"] = settings.probe_depth ? Json(*settings.probe_depth) : Json("default");
  const Json report{{"tool", "ulrich-kit"},
                    {"version", kVersion},
                    {"command", command},
                    {"args", args},
                    {"variety", outcome.variety ? Json(outcome.variety->spec()) : Json()},
                    {"conventions", conventions},
                    {"status", outcome.status},
                    {"payload", outcome.payload}};

  std::ostringstream text;
  if (tsv) emit_tsv(report, text);
  else text << report.dump(2) << '\n';
  out << text.str();
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      err << "ulrich-kit: cannot write " << out_path << '\n';
      return 2;
    }
    file << text.str();
  }
  return outcome.code;
}

}  // namespace ulrich_kit::cli
