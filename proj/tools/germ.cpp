#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "germkit/fixtures.hpp"
#include "germkit/iomdin.hpp"
#include "germkit/local_invariants.hpp"
#include "germkit/parse.hpp"
#include "germkit/report.hpp"
#include "germkit/stratified.hpp"

using json = nlohmann::ordered_json;
using namespace germ;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scenario;
  std::string fixture;
  std::string vars;
  std::string g;
  std::string f;
  std::string l;
  std::string N;
  unsigned trunc = 0;
  std::string caps;
  std::vector<std::string> branches;
  std::vector<std::string> polar_branches;
  std::string format = "text";
  unsigned jobs = 1;
  std::string out;
  bool check = false;
  std::vector<std::string> names;
};

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("scenario", o.scenario, "Scenario JSON file");
  cmd->add_option("--fixture", o.fixture, "Bundled fixture name instead of a file");
  cmd->add_option("--vars", o.vars, "Comma-separated variable names");
  cmd->add_option("--g", o.g, "The germ g");
  cmd->add_option("--f", o.f, "The function f, or GENERIC-LINEAR");
  cmd->add_option("--l", o.l, "Linear form l (same slot as --f)");
  cmd->add_option("--branch", o.branches, "Critical branch NAME=(c1,...,cv), repeatable");
  cmd->add_option("--polar-branch", o.polar_branches, "Polar branch NAME=(c1,...,cv), repeatable");
  cmd->add_option("--trunc", o.trunc, "Series truncation for inexact branches (default: exact)");
  cmd->add_option("--caps", o.caps, "Iteration limits, e.g. max_steps=100000,tau_ladder=8");
  cmd->add_option("--N", o.N, "N or a range a..b (default from the scenario, else 2..8)");
  cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

void apply_caps(const std::string& caps, Limits& limits) {
  std::stringstream ss(caps);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--caps entry '" + item + "' is not key=value");
    std::string key = item.substr(0, eq);
    unsigned long value = 0;
    try {
      value = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--caps value for '" + key + "' is not a positive integer");
    }
    if (value == 0) throw UsageError("--caps value for '" + key + "' must be positive");
    if (key == "max_steps") {
      limits.max_steps = value;
    } else if (key == "tau_ladder") {
      limits.tau_ladder = static_cast<unsigned>(value);
    } else if (key == "linear_ladder") {
      limits.linear_ladder = static_cast<unsigned>(value);
    } else if (key == "power_cap") {
      limits.power_cap = static_cast<unsigned>(value);
    } else if (key == "trunc_cap") {
      limits.trunc_cap = static_cast<unsigned>(value);
    } else {
      throw UsageError("unknown --caps key '" + key + "'");
    }
  }
}

json branch_json(const std::string& arg, const char* host) {
  auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("branch '" + arg + "' is not NAME=(c1,...,cv)");
  return {{"name", arg.substr(0, eq)}, {"param", arg.substr(eq + 1)}, {"host", host}};
}

Scenario build_scenario(const Options& o) {
  bool inline_input = !o.vars.empty() || !o.g.empty() || !o.f.empty() || !o.l.empty() || !o.branches.empty() ||
                      !o.polar_branches.empty() || o.trunc != 0;
  int sources = (!o.scenario.empty()) + (!o.fixture.empty()) + inline_input;
  if (sources == 0) throw UsageError("give a scenario file, --fixture, or inline --vars/--g");
  if (sources > 1) throw UsageError("a scenario file, --fixture and inline flags are mutually exclusive");
  if (!o.f.empty() && !o.l.empty()) throw UsageError("--f and --l name the same function; give one");
  Scenario s;
  if (!o.scenario.empty()) {
    s = load_scenario_file(o.scenario);
  } else if (!o.fixture.empty()) {
    s = load_fixture(o.fixture).scenario;
  } else {
    if (o.vars.empty()) throw UsageError("--vars is required with inline input");
    json doc;
    json vars = json::array();
    std::stringstream ss(o.vars);
    std::string v;
    while (std::getline(ss, v, ',')) vars.push_back(v);
    doc["variables"] = vars;
    if (!o.g.empty()) doc["g"] = o.g;
    if (!o.f.empty()) doc["f"] = o.f;
    if (!o.l.empty()) doc["f"] = o.l;
    if (o.trunc != 0) doc["limits"] = {{"trunc", o.trunc}};
    json bs = json::array();
    for (const auto& b : o.branches) bs.push_back(branch_json(b, "sigma"));
    for (const auto& b : o.polar_branches) bs.push_back(branch_json(b, "polar"));
    if (!bs.empty()) doc["branches"] = bs;
    s = load_scenario(doc);
  }
  if (!o.caps.empty()) apply_caps(o.caps, s.limits);
  if (!o.N.empty()) {
    s.N = parse_n_range(o.N);
    s.N_explicit = true;
  }
  return s;
}

const Poly& need_g(const Scenario& s) {
  if (!s.g) throw UsageError("this command needs a germ g");
  return *s.g;
}

json invocation(const std::string& verb, const Options& o, const Scenario& s) {
  json j;
  j["verb"] = verb;
  j["format"] = o.format;
  j["jobs"] = o.jobs;
  j["N"] = std::to_string(s.N.lo) + ".." + std::to_string(s.N.hi);
  j["trunc"] = s.default_trunc ? json(*s.default_trunc) : json("exact");
  j["limits"] = limits_to_json(s.limits);
  return j;
}

json header(const std::string& report, const std::string& verb, const Options& o, const Scenario& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["report"] = report;
  j["invocation"] = invocation(verb, o, s);
  j["variables"] = s.ring->names();
  if (s.g) j["g"] = print_poly(*s.g);
  return j;
}

// f as given, else rung 0 of the generic ladder.
Poly function_f(const Scenario& s) {
  if (s.f) return *s.f;
  return generic_linear_form(s.ring, 0);
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "empty"; }

int emit(const Options& o, const json& j, const std::string& text, int code = kExitOk) {
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return code;
}

int run_milnor(const Options& o) {
  Scenario s = build_scenario(o);
  std::size_t mu = milnor_number(need_g(s), s.limits);
  json j = header("milnor", "milnor", o, s);
  j["mu"] = mu;
  return emit(o, j, "mu = " + std::to_string(mu) + "\n");
}

int run_critical_locus(const Options& o) {
  Scenario s = build_scenario(o);
  CriticalLocus c = critical_locus(need_g(s), s.f, s.limits);
  json j = header("critical-locus", "critical-locus", o, s);
  j["dim"] = c.dim ? json(*c.dim) : json(nullptr);
  if (s.f) j["f"] = print_poly(*s.f);
  if (c.meets_f_only_at_origin) j["meets_f_only_at_origin"] = *c.meets_f_only_at_origin;
  std::string text = "dim Sigma(g) at 0 = " + (c.dim ? std::to_string(*c.dim) : std::string("none (0 is not critical)")) + "\n";
  if (c.meets_f_only_at_origin) {
    text += std::string("Sigma(g) meets {f = 0} only at 0: ") + (*c.meets_f_only_at_origin ? "yes" : "no") + "\n";
  }
  return emit(o, j, text);
}

int run_polar(const Options& o) {
  Scenario s = build_scenario(o);
  Poly f = function_f(s);
  PolarCurve p = relative_polar_ideal(f, need_g(s), s.branches_on(BranchHost::Polar), s.limits);
  json j = header("polar", "polar", o, s);
  j["f"] = print_poly(f);
  j["dim"] = p.dim ? json(*p.dim) : json(nullptr);
  json gens = json::array();
  for (const auto& q : p.ideal.generators()) gens.push_back(print_poly(q));
  j["generators"] = gens;
  json comps = json::array();
  for (const auto& b : p.components) comps.push_back(b.name);
  j["components"] = comps;
  std::string text = "f = " + print_poly(f) + "\npolar curve dim = " + opt_int(p.dim) + "\n";
  for (const auto& q : p.ideal.generators()) text += "  " + print_poly(q) + "\n";
  return emit(o, j, text);
}

int run_gap(const Options& o) {
  Scenario s = build_scenario(o);
  Poly f = function_f(s);
  const Poly& g = need_g(s);
  PolarCurve p = relative_polar_ideal(f, g, s.branches_on(BranchHost::Polar), s.limits);
  GapReport r = gap_ratios(f, g, p, s.limits);
  unsigned threshold = iomdin_threshold(r);
  json j = header("gap", "gap", o, s);
  j["f"] = print_poly(f);
  j["status"] = std::string(gap_status_name(r.status));
  j["g_intersection"] = r.g_intersection ? json(*r.g_intersection) : json(nullptr);
  j["sound_bound"] = r.sound_bound;
  j["exact_max"] = r.exact_max ? json(r.exact_max->get_str()) : json(nullptr);
  json ratios = json::array();
  std::string text = "f = " + print_poly(f) + "\n";
  for (const auto& c : r.ratios) {
    ratios.push_back({{"name", c.name}, {"ord_g", c.ord_g}, {"ord_f", c.ord_f}, {"multiplicity", c.multiplicity},
                      {"ratio", c.ratio.get_str()}});
    text += "  " + c.name + ": " + std::to_string(c.ord_g) + "/" + std::to_string(c.ord_f) + " = " + c.ratio.get_str() + "\n";
  }
  j["ratios"] = ratios;
  j["threshold"] = threshold;
  text += "threshold = " + std::to_string(threshold) + " (" + std::string(gap_status_name(r.status)) + ")\n";
  return emit(o, j, text);
}

int run_le(const Options& o) {
  Scenario s = build_scenario(o);
  const Poly& g = need_g(s);
  std::vector<BranchParam> sigma = s.branches_on(BranchHost::Sigma);
  Poly l(s.ring);
  LeData le;
  std::vector<std::string> log;
  if (s.f) {
    l = *s.f;
    le = le_numbers(g, l, sigma, s.limits);
  } else {
    unsigned rung = 0;
    le = le_on_ladder(g, sigma, s.limits, l, rung, log);
  }
  for (const auto& line : le.route_log) log.push_back(line);
  long chi = euler_char_fibre(g.nvars(), le);
  json j = header("le", "le", o, s);
  j["l"] = print_poly(l);
  j["lambda0"] = le.lambda0;
  j["lambda1"] = le.lambda1;
  j["isolated"] = le.isolated;
  j["chi"] = chi;
  json terms = json::array();
  for (const auto& t : le.branch_terms) terms.push_back({{"name", t.name}, {"m_l", t.degree}, {"mu", t.mu}});
  j["branch_terms"] = terms;
  j["route_log"] = log;
  std::string text = "l = " + print_poly(l) + "\nlambda0 = " + std::to_string(le.lambda0) +
                     "\nlambda1 = " + std::to_string(le.lambda1) + "\nchi(F_g) = " + std::to_string(chi) + "\n";
  return emit(o, j, text);
}

int run_verify(const Options& o) {
  Scenario s = build_scenario(o);
  need_g(s);
  VerdictTable t = verify_scenario(s, std::nullopt, std::max(1U, o.jobs));
  json j = verdict_table_json(t);
  j["invocation"] = invocation("verify", o, s);
  return emit(o, j, verdict_table_text(t), t.all_pass() ? kExitOk : kExitFailure);
}

int run_brasselet(const Options& o) {
  Scenario s = build_scenario(o);
  if (!s.strata) throw UsageError("brasselet needs a scenario with a \"strata\" section");
  std::optional<unsigned> N;
  if (s.N.lo == s.N.hi) N = s.N.lo;
  std::vector<Verdict> verdicts = verify_stratified_identities(s, N);
  json rep = invariant_report([&] {
    Scenario copy = s;
    copy.g.reset();
    return copy;
  }(), N ? std::optional<NRange>(s.N) : std::nullopt);
  json j = header("brasselet", "brasselet", o, s);
  j["eu_origin"] = rep["eu_origin"];
  j["brasselet"] = rep["brasselet"];
  json vs = json::array();
  bool failed = false;
  std::ostringstream text;
  for (const auto& [space, eu] : rep["eu_origin"].items()) text << "Eu_" << space << "(0) = " << eu.dump() << "\n";
  for (const auto& [space, per] : rep["brasselet"].items()) {
    for (const auto& [kind, b] : per.items()) text << "B[" << kind << "] on " << space << " = " << b.dump() << "\n";
  }
  for (const auto& v : verdicts) {
    vs.push_back(verdict_json(v));
    failed = failed || v.status == VerdictStatus::Fail;
    text << verdict_line(v) << "\n";
  }
  j["verdicts"] = vs;
  j["all_pass"] = !failed;
  text << (failed ? "FAILURES PRESENT" : "NO FAILURES") << "\n";
  return emit(o, j, text.str(), failed ? kExitFailure : kExitOk);
}

int run_export(const Options& o) {
  Scenario s = build_scenario(o);
  need_g(s);
  if (s.N.lo != s.N.hi) throw UsageError("export-dataset needs a single --N");
  json j = save_scenario(export_dataset(s, s.N.lo));
  if (!o.out.empty()) {
    std::ofstream file(o.out);
    if (!file) throw Error(ErrorCode::Schema, "cannot write '" + o.out + "'");
    file << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int run_fixtures(const Options& o) {
  std::vector<std::string> names = o.names.empty() ? list_fixtures() : o.names;
  if (o.check) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["report"] = "fixture-check";
    json results = json::object();
    bool ok = true;
    std::ostringstream text;
    for (const auto& name : names) {
      Fixture f = load_fixture(name);
      auto mm = report_mismatches(f.expected, invariant_report(f.scenario, std::nullopt, std::max(1U, o.jobs)));
      results[name] = mm;
      ok = ok && mm.empty();
      text << (mm.empty() ? "OK    " : "FAIL  ") << name << "\n";
      for (const auto& m : mm) text << "      " << m << "\n";
    }
    j["results"] = results;
    j["all_ok"] = ok;
    return emit(o, j, text.str(), ok ? kExitOk : kExitFailure);
  }
  if (o.names.empty()) {
    std::string text;
    for (const auto& n : names) text += n + "\n";
    return emit(o, json{{"schema_version", kSchemaVersion}, {"report", "fixtures"}, {"fixtures", names}}, text);
  }
  for (const auto& name : names) std::cout << save_scenario(load_fixture(name).scenario).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local invariants of hypersurface germs and Lê-Iomdin identity checks"};
  app.require_subcommand(1);
  Options o;
  struct Verb {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Verb verbs[] = {
      {"milnor", "Milnor number of an isolated germ", run_milnor},
      {"critical-locus", "Dimension of the critical locus and its position against {f = 0}", run_critical_locus},
      {"polar", "Relative polar curve of (f, g)", run_polar},
      {"gap", "Gap ratios and the admissible threshold for N", run_gap},
      {"le", "Lê numbers and the Euler characteristic of the Milnor fibre", run_le},
      {"verify", "Sweep N and check every Lê-Iomdin identity", run_verify},
      {"brasselet", "Brasselet numbers, Euler obstructions and stratified identities of a dataset", run_brasselet},
      {"export-dataset", "Write the stratified dataset implied by a verified deformation", run_export},
  };
  int (*chosen)(const Options&) = nullptr;
  for (const auto& v : verbs) {
    CLI::App* cmd = app.add_subcommand(v.name, v.help);
    add_input_options(cmd, o);
    if (std::string(v.name) == "verify") cmd->add_option("--jobs", o.jobs, "Worker threads for the N sweep");
    if (std::string(v.name) == "export-dataset") cmd->add_option("--out", o.out, "Write to a file instead of stdout");
    cmd->callback([&chosen, run = v.run] { chosen = run; });
  }
  CLI::App* fx = app.add_subcommand("fixtures", "List, print or re-check the bundled fixtures");
  fx->add_option("names", o.names, "Fixture names");
  fx->add_flag("--check", o.check, "Recompute each fixture and compare with its expected values");
  fx->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  fx->add_option("--jobs", o.jobs, "Worker threads for verifier sweeps");
  fx->callback([&chosen] { chosen = run_fixtures; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return chosen(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
