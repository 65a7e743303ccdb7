// Command-line front end: integrate, synthesize, classify, period, casimirs,
// gallery, verify.
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elastica/analysis.hpp"
#include "elastica/gallery.hpp"
#include "elastica/io/csv.hpp"
#include "elastica/io/json.hpp"
#include "elastica/io/svg.hpp"
#include "elastica/verify.hpp"

namespace {

using elastica::io::json;
using elastica::io::SchemaError;

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kVerification = 3 };

/// Raw settings shared by the subcommands. Values come from flags or from a
/// JSON config file; flags win.
struct RunConfig {
  std::string config_path;
  int k = 1;
  std::string p, F, q, P, canonical, window;
  double anchor_x = 0.0;
  double anchor_duds = 0.0;
  int sigma = 1;
  double s_span = 10.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  int samples = 1001;
  double step = 0.0;
  std::optional<double> at_x;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 20261017;
  bool figure1 = false;
  int graph = 0;
  double a = 1.0;
  double alpha = 1.0;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string cell;
  std::stringstream ss(text);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    if (b == std::string::npos) throw SchemaError(what + ": empty entry in list '" + text + "'");
    const std::string trimmed = cell.substr(b, e - b + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
    if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size())
      throw SchemaError(what + ": '" + trimmed + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw SchemaError(what + ": empty list");
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + elastica::io::format_double(v[i]);
  return s;
}

/// Fill fields from the config file for every option not given on the command line.
void apply_config(RunConfig& rc, const CLI::App& cmd) {
  if (rc.config_path.empty()) return;
  std::ifstream f(rc.config_path);
  if (!f) throw SchemaError("config: cannot open '" + rc.config_path + "'");
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("config: top level must be an object");
  auto given = [&](const std::string& flag) {
    const auto* opt = cmd.get_option_no_throw("--" + flag);
    return opt && opt->count() > 0;
  };
  auto number = [&](const json& v, const std::string& key) {
    if (!v.is_number()) throw SchemaError("config: '" + key + "' must be a number");
    return v.get<double>();
  };
  auto integer = [&](const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw SchemaError("config: '" + key + "' must be an integer");
    return v.get<long long>();
  };
  auto list = [&](const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (!v.is_array()) throw SchemaError("config: '" + key + "' must be an array of numbers");
    std::vector<double> xs;
    for (const auto& e : v) xs.push_back(number(e, key));
    return join(xs);
  };
  for (const auto& [key, v] : doc.items()) {
    if (key == "k") {
      if (!given("k")) rc.k = static_cast<int>(integer(v, key));
    } else if (key == "p" || key == "F" || key == "q" || key == "P" || key == "canonical" || key == "window") {
      std::map<std::string, std::string*> slots{{"p", &rc.p},         {"F", &rc.F}, {"q", &rc.q}, {"P", &rc.P},
                                                {"canonical", &rc.canonical}, {"window", &rc.window}};
      if (!given(key)) *slots[key] = list(v, key);
    } else if (key == "anchor") {
      if (!v.is_object()) throw SchemaError("config: 'anchor' must be {\"x\": number, \"duds\": number}");
      for (const auto& [ak, av] : v.items()) {
        if (ak == "x") {
          if (!given("anchor-x")) rc.anchor_x = number(av, "anchor.x");
        } else if (ak == "duds") {
          if (!given("anchor-duds")) rc.anchor_duds = number(av, "anchor.duds");
        } else {
          throw SchemaError("config: unknown field 'anchor." + ak + "'");
        }
      }
    } else if (key == "sigma") {
      if (!given("sigma")) rc.sigma = static_cast<int>(integer(v, key));
    } else if (key == "s_span") {
      if (!given("s-span")) rc.s_span = number(v, key);
    } else if (key == "rel_tol") {
      if (!given("rel-tol")) rc.rel_tol = number(v, key);
    } else if (key == "abs_tol") {
      if (!given("abs-tol")) rc.abs_tol = number(v, key);
    } else if (key == "samples") {
      if (!given("samples")) rc.samples = static_cast<int>(integer(v, key));
    } else if (key == "step") {
      if (!given("step")) rc.step = number(v, key);
    } else if (key == "x") {
      if (!given("x")) rc.at_x = number(v, key);
    } else if (key == "out") {
      if (!v.is_string()) throw SchemaError("config: 'out' must be a string");
      if (!given("out")) rc.out = v.get<std::string>();
    } else if (key == "format") {
      if (!v.is_string()) throw SchemaError("config: 'format' must be a string");
      if (!given("format")) rc.format = v.get<std::string>();
    } else if (key == "seed") {
      if (!given("seed")) rc.seed = static_cast<std::uint64_t>(integer(v, key));
    } else if (key == "a") {
      if (!given("a")) rc.a = number(v, key);
    } else if (key == "alpha") {
      if (!given("alpha")) rc.alpha = number(v, key);
    } else {
      throw SchemaError("config: unknown field '" + key + "'");
    }
  }
}

void check_tolerances(const RunConfig& rc) {
  if (!(rc.rel_tol > 0.0) || !(rc.abs_tol > 0.0)) throw SchemaError("tolerances: rel-tol and abs-tol must be > 0");
  if (!(rc.s_span != 0.0) || !std::isfinite(rc.s_span)) throw SchemaError("s-span must be finite and nonzero");
  if (rc.step < 0.0) throw SchemaError("step must be >= 0");
  if (rc.step == 0.0 && rc.samples < 2) throw SchemaError("samples must be >= 2");
}

void check_k(const RunConfig& rc) {
  if (rc.k < 1) throw SchemaError("k must be >= 1");
}

elastica::OutputGrid grid_of(const RunConfig& rc) {
  return rc.step > 0.0 ? elastica::OutputGrid::by_step(rc.step) : elastica::OutputGrid::by_count(rc.samples);
}

/// Write `body` to --out, or to standard output when no path was given.
void emit(const RunConfig& rc, const std::function<void(std::ostream&)>& body) {
  if (rc.out.empty() || rc.out == "-") {
    body(std::cout);
    return;
  }
  std::ofstream f(rc.out);
  if (!f) throw SchemaError("out: cannot write '" + rc.out + "'");
  body(f);
}

json arc_to_json(const elastica::GeodesicArc& arc) {
  json doc;
  doc["k"] = arc.dim().k();
  doc["columns"] = elastica::io::csv_header(arc.dim().k());
  doc["rows"] = json::array();
  for (const auto& a : arc.samples()) doc["rows"].push_back(elastica::io::sample_row(a));
  doc["maxInvariantDrift"] = arc.max_invariant_drift();
  return doc;
}

void emit_arc(const RunConfig& rc, const elastica::GeodesicArc& arc) {
  if (rc.format == "csv") {
    emit(rc, [&](std::ostream& os) { elastica::io::write_csv(os, arc); });
  } else if (rc.format == "json") {
    emit(rc, [&](std::ostream& os) { os << arc_to_json(arc).dump(2) << '\n'; });
  } else if (rc.format == "svg") {
    emit(rc, [&](std::ostream& os) { elastica::io::write_svg(os, arc); });
  } else {
    throw SchemaError("format: expected csv, json or svg");
  }
}

/// Summary lines go to stdout unless the artifact itself is going there.
std::ostream& report_stream(const RunConfig& rc) { return (rc.out.empty() || rc.out == "-") ? std::cerr : std::cout; }

int cmd_integrate(const RunConfig& rc) {
  check_k(rc);
  check_tolerances(rc);
  const elastica::JetDim dim{rc.k};
  elastica::JetPoint q(dim);
  if (!rc.q.empty()) {
    const auto v = parse_list(rc.q, "q");
    if (static_cast<int>(v.size()) != dim.n()) throw SchemaError("q: expected k+2 values (x, u_k..u_1, y)");
    q = elastica::JetPoint::from_flat(v);
  }
  if (rc.P.empty() == rc.canonical.empty()) throw SchemaError("integrate: give exactly one of --P or --canonical");
  elastica::ReducedMomenta P(dim);
  if (!rc.P.empty()) {
    const auto v = parse_list(rc.P, "P");
    if (static_cast<int>(v.size()) != dim.n()) throw SchemaError("P: expected k+2 values P_1..P_{k+2}");
    P = elastica::ReducedMomenta(v);
  } else {
    const auto v = parse_list(rc.canonical, "canonical");
    if (static_cast<int>(v.size()) != dim.n()) throw SchemaError("canonical: expected k+2 values (p_x, p_k..p_1, p_y)");
    elastica::CanonicalMomenta c;
    c.px = v.front();
    c.py = v.back();
    c.p.assign(static_cast<std::size_t>(rc.k), 0.0);
    for (int j = 1; j <= rc.k; ++j) c.p[static_cast<std::size_t>(j - 1)] = v[static_cast<std::size_t>(rc.k + 1 - j)];
    P = elastica::power_functions(q, c);
  }
  const auto arc = elastica::integrate({q, P, 0.0}, rc.s_span, {rc.rel_tol, rc.abs_tol}, grid_of(rc));
  emit_arc(rc, arc);
  report_stream(rc) << "maxInvariantDrift " << elastica::io::format_double(arc.max_invariant_drift()) << '\n';
  return kOk;
}

elastica::CurvatureSpec spec_of(const RunConfig& rc) {
  if (rc.p.empty()) throw SchemaError("synthesize: --p is required");
  if (rc.sigma != 1 && rc.sigma != -1) throw SchemaError("sigma must be 1 or -1");
  if (!(std::abs(rc.anchor_duds) < 1.0)) throw SchemaError("anchor-duds must satisfy |duds| < 1");
  elastica::CurvatureSpec spec{elastica::Polynomial(parse_list(rc.p, "p")), rc.anchor_x, rc.anchor_duds, rc.sigma};
  if (spec.p.degree() > rc.k - 1) throw SchemaError("p: degree exceeds k-1");
  return spec;
}

int cmd_synthesize(const RunConfig& rc) {
  check_k(rc);
  check_tolerances(rc);
  const elastica::JetDim dim{rc.k};
  const auto spec = spec_of(rc);
  elastica::JetPoint q0(dim);
  q0.x = spec.anchor_x;
  const auto arc = elastica::synthesize(spec, dim, q0, rc.s_span, {rc.rel_tol, rc.abs_tol}, grid_of(rc));
  emit_arc(rc, arc);
  auto& rs = report_stream(rc);
  rs << "maxInvariantDrift " << elastica::io::format_double(arc.max_invariant_drift()) << '\n';
  rs << "roundtripResidual "
     << elastica::io::format_double(elastica::roundtrip_residual(arc, elastica::build_profile(spec, dim))) << '\n';
  return kOk;
}

/// Profile from --F directly, or from --p with the anchor.
elastica::FProfile profile_of(const RunConfig& rc) {
  check_k(rc);
  if (!rc.F.empty()) {
    if (!rc.p.empty()) throw SchemaError("give either --F or --p, not both");
    const elastica::Polynomial F(parse_list(rc.F, "F"));
    if (F.degree() > rc.k) throw SchemaError("F: degree exceeds k");
    return elastica::FProfile(F, elastica::JetDim{rc.k});
  }
  return elastica::build_profile(spec_of(rc), elastica::JetDim{rc.k});
}

std::optional<std::pair<double, double>> window_of(const RunConfig& rc) {
  if (rc.window.empty()) return std::nullopt;
  const auto w = parse_list(rc.window, "window");
  if (w.size() != 2 || !(w[0] < w[1])) throw SchemaError("window: expected 'a,b' with a < b");
  return std::make_pair(w[0], w[1]);
}

std::vector<elastica::IntervalReport> reports_of(const elastica::FProfile& prof,
                                                 const std::optional<std::pair<double, double>>& window) {
  const auto band = window ? elastica::decompose_band(prof, *window) : elastica::decompose_band(prof);
  std::vector<elastica::IntervalReport> out;
  for (const auto& iv : band.intervals) {
    elastica::IntervalReport r;
    r.interval = iv;
    r.motion = elastica::classify(iv, prof.p());
    if (r.motion != elastica::MotionClass::Unbounded && r.motion != elastica::MotionClass::DegenerateVerticalLine)
      r.period = elastica::period_shift(prof, iv, 1e-11);
    out.push_back(r);
  }
  return out;
}

int cmd_classify(const RunConfig& rc) {
  if (rc.format != "json" && rc.format != "csv") throw SchemaError("classify: format must be json");
  const auto prof = profile_of(rc);
  const auto window = window_of(rc);
  auto doc = elastica::io::classification_to_json(reports_of(prof, window));
  doc["F"] = std::vector<double>(prof.F().coefficients().begin(), prof.F().coefficients().end());
  doc["k"] = rc.k;
  const auto band = window ? elastica::decompose_band(prof, *window) : elastica::decompose_band(prof);
  doc["window"] = {band.window.first, band.window.second};
  doc["isolated"] = json::array();
  for (const auto& e : band.isolated) doc["isolated"].push_back(e.x);
  emit(rc, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kOk;
}

int cmd_period(const RunConfig& rc) {
  const auto prof = profile_of(rc);
  const double x = rc.at_x.value_or(rc.anchor_x);
  const auto window = window_of(rc);
  const auto band = window ? elastica::decompose_band(prof, *window) : elastica::decompose_band(prof);
  const auto iv = band.containing(x);
  if (!iv) throw SchemaError("period: x = " + elastica::io::format_double(x) + " lies outside the band");
  const auto motion = elastica::classify(*iv, prof.p());
  json doc;
  doc["x0"] = iv->x0.x;
  doc["x1"] = iv->x1.x;
  doc["class"] = elastica::to_string(motion);
  if (motion == elastica::MotionClass::Unbounded || motion == elastica::MotionClass::DegenerateVerticalLine) {
    doc["finite"] = false;
    doc["L"] = "inf";
    doc["tau"] = nullptr;
    doc["action"] = nullptr;
  } else {
    const auto pd = elastica::period_shift(prof, *iv, 1e-12);
    doc["finite"] = pd.finite;
    doc["L"] = pd.finite ? json(pd.L) : json("inf");
    doc["tau"] = pd.tau ? json(*pd.tau) : json(nullptr);
    doc["action"] = pd.action;
    doc["errorEstimate"] = pd.error_estimate;
  }
  emit(rc, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kOk;
}

int cmd_casimirs(const RunConfig& rc) {
  check_k(rc);
  const auto doc = elastica::io::casimirs_to_json(elastica::casimirs(elastica::JetDim{rc.k}));
  emit(rc, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kOk;
}

int cmd_gallery(const RunConfig& rc) {
  namespace fs = std::filesystem;
  const fs::path dir = rc.out.empty() ? fs::path(".") : fs::path(rc.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw SchemaError("out: cannot create directory '" + dir.string() + "'");
  json manifest;
  manifest["curves"] = json::array();
  auto write = [&](const std::string& name, const elastica::GeodesicArc& arc,
                   const std::vector<elastica::IntervalReport>& reports, json extra) {
    const fs::path svg = dir / (name + ".svg");
    std::ofstream f(svg);
    if (!f) throw SchemaError("out: cannot write '" + svg.string() + "'");
    elastica::io::write_svg(f, arc);
    extra["name"] = name;
    extra["svg"] = svg.filename().string();
    extra["classification"] = elastica::io::classification_to_json(reports)["intervals"];
    extra["maxInvariantDrift"] = arc.max_invariant_drift();
    manifest["curves"].push_back(extra);
  };
  int produced = 0;
  if (rc.figure1) {
    for (const auto& c : elastica::figure1_suite({rc.rel_tol, rc.abs_tol})) {
      json extra{{"k", c.params.k},
                 {"a", c.params.a},
                 {"alpha", c.params.alpha},
                 {"class", elastica::to_string(c.motion)},
                 {"selfIntersectionsPerPeriod", c.self_intersections_per_period}};
      write(c.name, c.arc, c.reports, extra);
      ++produced;
    }
  }
  if (rc.graph > 0) {
    check_tolerances(rc);
    const auto prof = elastica::graph_profile(rc.graph);
    elastica::JetPoint q0(prof.dim());
    const auto arc = elastica::synthesize(elastica::spec_from_profile(prof, 0.0, rc.sigma), prof.dim(), q0,
                                          rc.s_span, {rc.rel_tol, rc.abs_tol}, grid_of(rc));
    write("graph_" + std::to_string(rc.graph), arc, elastica::classify_profile(prof), {{"k", rc.graph}});
    ++produced;
  }
  if (!rc.p.empty() || produced == 0) {
    if (produced == 0 && rc.k < 2) throw SchemaError("gallery: give --figure1, --graph M, or a convict curve with --k >= 2");
    check_tolerances(rc);
    const elastica::ConvictParams params{rc.k, rc.a, rc.alpha};
    const auto prof = elastica::convict_profile(params);
    const double x0 = rc.anchor_x;
    elastica::JetPoint q0(prof.dim());
    q0.x = x0;
    const auto arc = elastica::synthesize(elastica::spec_from_profile(prof, x0, rc.sigma), prof.dim(), q0, rc.s_span,
                                          {rc.rel_tol, rc.abs_tol}, grid_of(rc));
    json extra{{"k", rc.k}, {"a", rc.a}, {"alpha", rc.alpha}};
    if (x0 >= 0.0) extra["thetaOdeDefect"] = elastica::theta_ode_defect(arc, params);
    write("convict_k" + std::to_string(rc.k), arc, elastica::classify_profile(prof), extra);
  }
  std::ofstream mf(dir / "manifest.json");
  if (!mf) throw SchemaError("out: cannot write manifest");
  mf << manifest.dump(2) << '\n';
  std::cout << "wrote " << manifest["curves"].size() << " curve(s) and manifest.json to " << dir.string() << '\n';
  return kOk;
}

int cmd_verify(const RunConfig& rc) {
  std::string dir;
  if (!rc.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(rc.out, ec);
    if (ec) throw SchemaError("out: cannot create directory '" + rc.out + "'");
    dir = rc.out;
  }
  elastica::verify::Sampler rng(rc.seed);
  std::printf("seed %llu\n", static_cast<unsigned long long>(rc.seed));
  std::printf("%-16s %-6s %-12s %-10s %s\n", "check", "result", "measured", "bound", "detail");
  int failures = 0;
  for (const auto& s : elastica::verify::all_checks(dir)) {
    elastica::verify::Check c;
    try {
      c = s.run(rng);
    } catch (const std::exception& e) {
      c = {s.name, false, 0.0, 0.0, std::string("exception: ") + e.what()};
    }
    if (!c.passed) ++failures;
    std::printf("%-16s %-6s %-12.3g %-10.3g %s\n", s.name.c_str(), c.passed ? "pass" : "FAIL", c.measured,
                c.threshold, c.detail.c_str());
  }
  std::printf("%s\n", failures ? "verification FAILED" : "all checks passed");
  return failures ? kVerification : kOk;
}

void add_common(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--config", rc.config_path, "JSON config file; flags override its fields");
  cmd->add_option("--k", rc.k, "jet order k >= 1");
  cmd->add_option("--out", rc.out, "output path (directory for gallery/verify); default stdout");
  cmd->add_option("--format", rc.format, "output format")->check(CLI::IsMember({"csv", "json", "svg"}));
}

void add_integration(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--s-span", rc.s_span, "arclength span (negative integrates backward)");
  cmd->add_option("--rel-tol", rc.rel_tol, "relative tolerance");
  cmd->add_option("--abs-tol", rc.abs_tol, "absolute tolerance");
  cmd->add_option("--samples", rc.samples, "number of output samples");
  cmd->add_option("--step", rc.step, "output spacing in s (overrides --samples)");
}

void add_curvature(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--p", rc.p, "curvature polynomial coefficients \"c0,c1,...\"");
  cmd->add_option("--anchor-x", rc.anchor_x, "anchor x*");
  cmd->add_option("--anchor-duds", rc.anchor_duds, "du/ds at the anchor, |duds| < 1");
  cmd->add_option("--sigma", rc.sigma, "initial sign of dx/ds (1 or -1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics on jet spaces: integration, curvature synthesis and band analysis"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* integrate = app.add_subcommand("integrate", "integrate a geodesic and write its trajectory");
  add_common(integrate, rc);
  add_integration(integrate, rc);
  integrate->add_option("--q", rc.q, "initial jet \"x,u_k,...,u_1,y\" (default origin)");
  integrate->add_option("--P", rc.P, "reduced momenta \"P_1,...,P_{k+2}\"");
  integrate->add_option("--canonical", rc.canonical, "canonical momenta \"p_x,p_k,...,p_1,p_y\"");

  auto* synth = app.add_subcommand("synthesize", "geodesic with curvature p(x) from an anchor");
  add_common(synth, rc);
  add_integration(synth, rc);
  add_curvature(synth, rc);

  auto* classify = app.add_subcommand("classify", "band decomposition and motion class of every interval");
  add_common(classify, rc);
  add_curvature(classify, rc);
  classify->add_option("--F", rc.F, "profile coefficients \"f0,f1,...\" instead of --p and the anchor");
  classify->add_option("--window", rc.window, "analysis window \"a,b\"");

  auto* period = app.add_subcommand("period", "period, shift and action of the interval containing x");
  add_common(period, rc);
  add_curvature(period, rc);
  period->add_option("--F", rc.F, "profile coefficients \"f0,f1,...\" instead of --p and the anchor");
  period->add_option("--window", rc.window, "analysis window \"a,b\"");
  period->add_option("--x", rc.at_x, "point selecting the interval (default anchor x)");

  auto* cas = app.add_subcommand("casimirs", "Casimir polynomials as JSON term lists");
  add_common(cas, rc);

  auto* gallery = app.add_subcommand("gallery", "named curves as SVG plus manifest.json");
  add_common(gallery, rc);
  add_integration(gallery, rc);
  add_curvature(gallery, rc);
  gallery->add_flag("--figure1", rc.figure1, "convict, pseudo-sinusoid and pseudo-lemniscate (k = 2)");
  gallery->add_option("--graph", rc.graph, "geodesic graph of order M >= 3");
  gallery->add_option("--a", rc.a, "convict length scale a > 0");
  gallery->add_option("--alpha", rc.alpha, "convict offset alpha");

  auto* verify = app.add_subcommand("verify", "run the invariant suite and print a per-check table");
  add_common(verify, rc);
  verify->add_option("--seed", rc.seed, "seed for the random samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    apply_config(rc, *cmd);
    if (cmd == integrate) return cmd_integrate(rc);
    if (cmd == synth) return cmd_synthesize(rc);
    if (cmd == classify) return cmd_classify(rc);
    if (cmd == period) return cmd_period(rc);
    if (cmd == cas) return cmd_casimirs(rc);
    if (cmd == gallery) return cmd_gallery(rc);
    return cmd_verify(rc);
  } catch (const SchemaError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const elastica::IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const elastica::QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}
