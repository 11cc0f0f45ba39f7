#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polargrass/embedding.hpp"
#include "polargrass/suites.hpp"

using namespace polargrass;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit : int { Ok = 0, CheckFailed = 1, InputError = 2, OverBudget = 3 };

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::BudgetExceeded:
    case Errc::OracleUnavailable:
      return OverBudget;
    case Errc::NotEmbedding:
    case Errc::TheoremContradiction:
      return CheckFailed;
    default:
      return InputError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadDescriptor, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadDescriptor, "cannot write '" + path + "'");
  out << text;
}

/// A JSON argument given inline (starting with '{' or '[') or as a file path.
json load_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
  try {
    return json::parse(inline_json ? arg : read_file(arg));
  } catch (const json::parse_error& ex) {
    throw Error(Errc::BadDescriptor, std::string("malformed JSON: ") + ex.what());
  }
}

/// Polar space arguments may omit "k"; constructors pick it.
PolarGrassmannDescriptor load_polar(const std::string& arg, const Budget& budget) {
  auto j = load_json(arg);
  if (j.is_object() && !j.contains("k")) j["k"] = 0;
  auto d = parse_descriptor(j, budget);
  if (!std::holds_alternative<PolarGrassmannDescriptor>(d)) {
    throw Error(Errc::BadDescriptor, "expected a polar descriptor");
  }
  return std::get<PolarGrassmannDescriptor>(d);
}

Subspace load_rows(const std::string& arg, const PolarSpace& space) {
  return Subspace::from_json({{"m", space.dim()}, {"rows", load_json(arg)}}, space.field()).subspace;
}

struct Globals {
  std::uint64_t max_vertices = Budget{}.max_vertices;
  std::uint64_t max_cliques = Budget{}.max_cliques;
  std::uint64_t max_all_pairs = Budget{}.max_all_pairs_vertices;
  bool no_timings = false;
  std::string report_path;

  Budget budget() const { return {max_vertices, max_cliques, max_all_pairs}; }
};

class Timer {
public:
  void lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    timings_[stage] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  json total() {
    timings_["total"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    return timings_;
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  std::chrono::steady_clock::time_point last_ = start_;
  json timings_ = json::object();
};

struct Run {
  json report = json::object();
  Timer timer;

  void descriptor(const std::string& role, const json& d) {
    report["descriptors"][role] = d;
    report["descriptor_hashes"][role] = json_hash(d);
  }
};

json build_command(const std::string& desc_arg, const std::string& out, const std::string& format, const Globals& g,
                   Run& run) {
  const auto budget = g.budget();
  const auto desc = parse_descriptor(load_json(desc_arg), budget);
  run.descriptor("graph", descriptor_json(desc));
  const auto graph = build_graph(desc, budget);
  run.timer.lap("build");
  json result{{"vertices", graph.size()}, {"edges", graph.graph.edge_count()}, {"format", format}};
  if (static_cast<std::uint64_t>(graph.size()) <= budget.max_all_pairs_vertices) {
    result["diameter"] = diameter(graph.graph, budget);
    run.timer.lap("diameter");
  } else {
    result["diameter"] = nullptr;
  }
  if (!out.empty()) {
    if (format == "graph6") {
      write_file(out, to_graph6(graph.graph) + "\n");
    } else if (format == "dimacs") {
      write_file(out, to_dimacs(graph.graph, {"polargrass " + descriptor_json(desc).dump()}));
    } else {
      write_file(out, to_json(graph).dump(2) + "\n");
    }
    result["out"] = out;
    run.timer.lap("write");
  }
  result["pass"] = true;
  return result;
}

json verify_command(const std::string& suite, const std::string& desc_arg, std::uint64_t sample, const Globals& g,
                    Run& run) {
  const auto budget = g.budget();
  const auto desc = parse_descriptor(load_json(desc_arg), budget);
  run.descriptor("graph", descriptor_json(desc));
  const auto rep = run_suite(suite, desc, {budget, sample});
  run.timer.lap("suite");
  auto j = rep.to_json();
  return j;
}

struct EmbedArgs {
  std::string make;
  std::string load;
  std::string domain;
  std::string codomain;
  std::string u;
  std::string s;
  std::uint32_t q = 2;
  int horizon = 2;
  bool classify = false;
  bool lemmas = false;
  std::string out;
};

json embed_command(const EmbedArgs& a, const Globals& g, Run& run) {
  const auto budget = g.budget();
  EmbeddingMap f;
  json flags = json::object();
  std::optional<Subspace> top_u;
  if (!a.load.empty()) {
    f = EmbeddingMap::from_json(load_json(a.load), budget);
  } else if (a.make == "typeA") {
    if (a.domain.empty() || a.codomain.empty()) throw Error(Errc::BadDescriptor, "typeA needs --domain and --codomain");
    const auto dom = parse_descriptor(load_json(a.domain), budget);
    if (!std::holds_alternative<GrassmannDescriptor>(dom)) {
      throw Error(Errc::BadDescriptor, "typeA needs a grassmann domain");
    }
    const auto cod = load_polar(a.codomain, budget);
    const auto u = a.u.empty() ? cod.space->default_maximal() : load_rows(a.u, *cod.space);
    f = make_type_a_embedding(std::get<GrassmannDescriptor>(dom), cod.space, u);
    top_u = u;
  } else if (a.make == "typeB-klein") {
    auto space = std::make_shared<const PolarSpace>(
        PolarSpace::make(FormKind::OrthogonalPlus, 8, Field::make(a.q, 1), budget));
    const auto s = a.s.empty() ? space->points().front() : load_rows(a.s, *space);
    f = make_type_b_klein_embedding(space, s);
    flags["S"] = s.to_json();
    flags["image_through_S"] =
        std::all_of(f.pairs.begin(), f.pairs.end(), [&](const auto& p) { return p.second.contains(s); });
  } else if (a.make == "dual-polar-top") {
    if (a.domain.empty() || a.codomain.empty()) {
      throw Error(Errc::BadDescriptor, "dual-polar-top needs --domain and --codomain");
    }
    const auto dom = load_polar(a.domain, budget);
    const auto cod = load_polar(a.codomain, budget);
    Subspace u;
    if (!a.u.empty()) {
      u = load_rows(a.u, *cod.space);
    } else {
      // The first dim W rows of a maximal singular subspace.
      const auto top = cod.space->default_maximal();
      auto rows = top.basis();
      if (static_cast<int>(rows.size()) > dom.space->dim()) rows.resize(dom.space->dim());
      u = Subspace::span(cod.space->field(), cod.space->dim(), rows);
    }
    f = make_dual_polar_top_embedding(dom.space, cod.space, u);
    top_u = u;
  } else {
    throw Error(Errc::BadDescriptor, "embed needs --make typeA|typeB-klein|dual-polar-top or --load");
  }
  run.timer.lap("construct");
  run.descriptor("domain", descriptor_json(f.domain));
  run.descriptor("codomain", f.codomain.to_json());
  if (!a.out.empty()) {
    write_file(a.out, f.to_json().dump() + "\n");
    run.timer.lap("write");
  }

  json result{{"map", {{"pairs", f.pairs.size()},
                       {"provenance", f.provenance == Provenance::Constructed ? "constructed" : "user-supplied"}}}};
  if (!a.out.empty()) result["map"]["out"] = a.out;
  if (!a.make.empty()) result["map"]["construction"] = a.make;

  const auto rep = check_embedding(f, a.horizon, budget);
  run.timer.lap("check");
  result["check"] = rep.to_json();
  bool pass = rep.pass();

  const int k = f.codomain.k;
  const int n = f.codomain.space->rank();
  flags["k"] = k;
  flags["n"] = n;
  flags["k_le_n_minus_3"] = k <= n - 3;
  flags["k_le_n_minus_4"] = k <= n - 4;
  if (top_u) {
    flags["U"] = top_u->to_json();
    flags["image_in_U"] =
        std::all_of(f.pairs.begin(), f.pairs.end(), [&](const auto& p) { return top_u->contains(p.second); });
  }
  result["theorem_flags"] = flags;

  if (a.classify) {
    if (!rep.is_embedding()) {
      throw Error(Errc::NotEmbedding, rep.failures.empty() ? "map is not an embedding" : rep.failures.front().dump());
    }
    const auto c = classify_embedding(f, rep);
    run.timer.lap("classify");
    result["classification"] = c.to_json();
  }
  if (a.lemmas) {
    const auto lem = verify_proof_lemmas(f, budget);
    run.timer.lap("lemmas");
    result["lemmas"] = lem.to_json();
    pass = pass && lem.pass();
  }
  result["pass"] = pass;
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmann and polar Grassmann graphs: build, verify, embed"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Globals g;
  app.add_option("--max-vertices", g.max_vertices, "vertex budget for enumeration")->capture_default_str();
  app.add_option("--max-cliques", g.max_cliques, "maximal clique budget")->capture_default_str();
  app.add_option("--max-all-pairs", g.max_all_pairs, "vertex limit for all-pairs sweeps")->capture_default_str();
  app.add_flag("--no-timings", g.no_timings, "omit the timings section");
  app.add_option("--report", g.report_path, "write the run report here instead of stdout");

  auto* build = app.add_subcommand("build", "enumerate a graph and export it");
  std::string build_desc;
  std::string build_out;
  std::string format = "json";
  build->add_option("descriptor", build_desc, "descriptor JSON (inline or file)")->required();
  build->add_option("--out", build_out, "graph output file");
  build->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "graph6", "dimacs"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run a check suite");
  std::string suite;
  std::string verify_desc;
  std::uint64_t sample = SuiteOptions{}.sample_budget;
  verify->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(kSuiteNames.begin(), kSuiteNames.end())));
  verify->add_option("descriptor", verify_desc, "descriptor JSON (inline or file)")->required();
  verify->add_option("--sample", sample, "pair budget of the remark suite")->capture_default_str();

  auto* embed = app.add_subcommand("embed", "construct or load an embedding and check it");
  EmbedArgs ea;
  auto* make_opt = embed->add_option("--make", ea.make, "construction")
                       ->check(CLI::IsMember({"typeA", "typeB-klein", "dual-polar-top"}));
  auto* load_opt = embed->add_option("--load", ea.load, "embedding map JSON file");
  make_opt->excludes(load_opt);
  embed->add_option("--domain", ea.domain, "domain descriptor (typeA, dual-polar-top)");
  embed->add_option("--codomain", ea.codomain, "codomain polar space (typeA, dual-polar-top)");
  embed->add_option("--u", ea.u, "rows of the singular subspace U");
  embed->add_option("--s", ea.s, "rows of the base point S (typeB-klein)");
  embed->add_option("--q", ea.q, "field order for typeB-klein (prime)")->capture_default_str();
  embed->add_option("--horizon", ea.horizon, "distance horizon to confirm")->capture_default_str();
  embed->add_flag("--classify", ea.classify, "classify as type A or B");
  embed->add_flag("--lemmas", ea.lemmas, "verify the proof lemmas");
  embed->add_option("--out", ea.out, "write the map JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Ok : InputError;
  }

  Run run;
  json& rep = run.report;
  rep["tool"] = "polargrass";
  rep["version"] = kVersion;
  rep["command"] = app.get_subcommands().front()->get_name();
  rep["argv"] = std::vector<std::string>(argv + 1, argv + argc);
  rep["parameters"] = {{"max_vertices", g.max_vertices},
                       {"max_cliques", g.max_cliques},
                       {"max_all_pairs", g.max_all_pairs}};
  rep["descriptors"] = json::object();
  rep["descriptor_hashes"] = json::object();

  int code = Ok;
  try {
    json result;
    if (build->parsed()) {
      rep["parameters"]["format"] = format;
      if (!build_out.empty()) rep["parameters"]["out"] = build_out;
      result = build_command(build_desc, build_out, format, g, run);
    } else if (verify->parsed()) {
      rep["parameters"]["suite"] = suite;
      rep["parameters"]["sample"] = sample;
      result = verify_command(suite, verify_desc, sample, g, run);
    } else {
      rep["parameters"]["horizon"] = ea.horizon;
      rep["parameters"]["classify"] = ea.classify;
      rep["parameters"]["lemmas"] = ea.lemmas;
      if (!ea.make.empty()) rep["parameters"]["make"] = ea.make;
      if (!ea.load.empty()) rep["parameters"]["load"] = ea.load;
      if (ea.make == "typeB-klein") rep["parameters"]["q"] = ea.q;
      result = embed_command(ea, g, run);
    }
    rep["pass"] = result.at("pass").get<bool>();
    rep["result"] = std::move(result);
    code = rep["pass"].get<bool>() ? Ok : CheckFailed;
  } catch (const Error& ex) {
    rep["pass"] = false;
    rep["error"] = {{"code", std::string(errc_name(ex.code()))}, {"message", ex.what()}};
    code = exit_code_for(ex.code());
    std::cerr << ex.what() << "\n";
  }
  if (!g.no_timings) rep["timings"] = run.timer.total();
  rep["exit_code"] = code;

  const auto text = rep.dump(2) + "\n";
  try {
    if (g.report_path.empty()) {
      std::cout << text;
    } else {
      write_file(g.report_path, text);
    }
  } catch (const Error& ex) {
    std::cerr << ex.what() << "\n";
    return InputError;
  }
  return code;
}
