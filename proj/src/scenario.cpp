#include "germkit/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "germkit/parse.hpp"

namespace germ {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kTopKeys{"schema_version", "variables", "g", "f", "N", "branches", "strata", "limits"};
const std::set<std::string> kSpaces{"X", "X^f", "X^g", "X^gt"};
const std::set<std::string> kFunctions{"f", "g", "gt", "l"};
const std::set<std::string> kFibres{"f-fibre", "g-fibre", "gt-fibre", "l-fibre"};

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Schema, (path.empty() ? "/" : path) + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path, "missing key '" + key + "'");
  return *it;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object");
}

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) schema_fail(path, "unknown key '" + k + "'");
  }
}

long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_fail(path, "expected an integer");
  return j.get<long>();
}

unsigned get_positive(const json& j, const std::string& path) {
  long v = get_int(j, path);
  if (v < 1) schema_fail(path, "expected a positive integer");
  return static_cast<unsigned>(v);
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_fail(path, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema_fail(path, "expected a boolean");
  return j.get<bool>();
}

std::vector<std::string> get_string_list(const json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], path + "/" + std::to_string(i)));
  return out;
}

Poly get_poly(const json& j, const RingPtr& ring, const std::string& path) {
  std::string text = get_string(j, path);
  try {
    return parse_poly(text, ring);
  } catch (const ParseError& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.detail());
  }
}

NRange get_n(const json& j, const std::string& path) {
  NRange r;
  if (j.is_number_integer()) {
    long n = j.get<long>();
    r.lo = r.hi = static_cast<unsigned>(std::max(0L, n));
    if (n < static_cast<long>(kMinN) || n > static_cast<long>(kMaxN)) {
      throw Error(ErrorCode::OutOfRange, path + ": N = " + std::to_string(n) + " outside [2, 64]");
    }
    return r;
  }
  if (j.is_array()) {
    if (j.size() != 2) schema_fail(path, "expected [lo, hi]");
    long lo = get_int(j[0], path + "/0");
    long hi = get_int(j[1], path + "/1");
    return parse_n_range(std::to_string(lo) + ".." + std::to_string(hi));
  }
  if (j.is_string()) {
    try {
      return parse_n_range(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.detail());
    }
  }
  schema_fail(path, "expected an integer, [lo, hi] or \"lo..hi\"");
}

std::vector<std::string> split_tuple(const std::string& text, const std::string& path) {
  std::string s = text;
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos || s[first] != '(' || s[last] != ')') {
    schema_fail(path, "expected a tuple like \"(0, 0, t)\"");
  }
  s = s.substr(first + 1, last - first - 1);
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::optional<long> opt_int(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  return get_int(*it, path + "/" + key);
}

BranchData get_branch_data(const json& j, const std::string& path) {
  require_object(j, path);
  only_keys(j, {"m_f", "m_l", "eu_X", "eu_Xg", "B_g_slice", "B_g_l_slice", "eu_g_slice", "eu_f_gt_slice",
               "B_f_gt_slice"},
            path);
  BranchData d;
  d.m_f = opt_int(j, "m_f", path);
  d.m_l = opt_int(j, "m_l", path);
  d.eu_X = opt_int(j, "eu_X", path);
  d.eu_Xg = opt_int(j, "eu_Xg", path);
  d.B_g_slice = opt_int(j, "B_g_slice", path);
  d.B_g_l_slice = opt_int(j, "B_g_l_slice", path);
  d.eu_g_slice = opt_int(j, "eu_g_slice", path);
  d.eu_f_gt_slice = opt_int(j, "eu_f_gt_slice", path);
  d.B_f_gt_slice = opt_int(j, "B_f_gt_slice", path);
  if (d.m_f && *d.m_f < 1) schema_fail(path + "/m_f", "local degree must be positive");
  if (d.m_l && *d.m_l < 1) schema_fail(path + "/m_l", "local degree must be positive");
  return d;
}

StrataDataset get_strata(const json& j, const std::set<std::string>& branch_names, const std::string& path) {
  require_object(j, path);
  only_keys(j, {"dim", "generic_linear_f", "declared", "eu_origin", "records"}, path);
  StrataDataset d;
  d.dim = static_cast<int>(get_int(require(j, "dim", path), path + "/dim"));
  if (d.dim < 0) schema_fail(path + "/dim", "dimension must be non-negative");
  if (auto it = j.find("generic_linear_f"); it != j.end()) {
    d.generic_linear_f = get_bool(*it, path + "/generic_linear_f");
  }
  if (auto it = j.find("declared"); it != j.end()) {
    require_object(*it, path + "/declared");
    for (const auto& [k, v] : it->items()) d.declared[k] = get_bool(v, path + "/declared/" + k);
  }
  if (auto it = j.find("eu_origin"); it != j.end()) {
    require_object(*it, path + "/eu_origin");
    for (const auto& [k, v] : it->items()) {
      if (!kSpaces.count(k)) schema_fail(path + "/eu_origin", "unknown space '" + k + "'");
      d.eu_origin[k] = get_int(v, path + "/eu_origin/" + k);
    }
  }
  const json& recs = require(j, "records", path);
  if (!recs.is_array()) schema_fail(path + "/records", "expected an array");
  std::map<std::string, const StratumRecord*> by_name;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    std::string rp = path + "/records/" + std::to_string(i);
    const json& r = recs[i];
    require_object(r, rp);
    only_keys(r, {"name", "space", "dim", "eu", "inside", "boundary", "branches", "chi"}, rp);
    StratumRecord s;
    s.name = get_string(require(r, "name", rp), rp + "/name");
    if (auto it = r.find("space"); it != r.end()) s.space = get_string(*it, rp + "/space");
    if (!kSpaces.count(s.space)) schema_fail(rp + "/space", "unknown space '" + s.space + "'");
    s.dim = static_cast<int>(get_int(require(r, "dim", rp), rp + "/dim"));
    if (s.dim < 0 || s.dim > d.dim) schema_fail(rp + "/dim", "stratum dimension outside [0, dim]");
    s.eu = get_int(require(r, "eu", rp), rp + "/eu");
    if (auto it = r.find("inside"); it != r.end()) s.inside = get_string_list(*it, rp + "/inside");
    for (const auto& fn : s.inside) {
      if (!kFunctions.count(fn)) schema_fail(rp + "/inside", "unknown function '" + fn + "'");
    }
    if (auto it = r.find("boundary"); it != r.end()) s.boundary = get_string_list(*it, rp + "/boundary");
    if (auto it = r.find("branches"); it != r.end()) s.branches = get_string_list(*it, rp + "/branches");
    for (const auto& b : s.branches) {
      if (!branch_names.count(b)) {
        throw Error(ErrorCode::DanglingReference, rp + "/branches: unknown branch '" + b + "'");
      }
    }
    if (auto it = r.find("chi"); it != r.end()) {
      require_object(*it, rp + "/chi");
      for (const auto& [k, v] : it->items()) {
        if (!kFibres.count(k)) schema_fail(rp + "/chi", "unknown fibre kind '" + k + "'");
        s.chi[k] = get_int(v, rp + "/chi/" + k);
      }
    }
    d.records.push_back(std::move(s));
  }
  for (const auto& s : d.records) {
    if (!by_name.emplace(s.name, &s).second) schema_fail(path + "/records", "duplicate stratum '" + s.name + "'");
  }
  for (const auto& s : d.records) {
    for (const auto& b : s.boundary) {
      auto it = by_name.find(b);
      if (it == by_name.end()) {
        throw Error(ErrorCode::DanglingReference, path + ": stratum '" + s.name + "' has unknown boundary '" + b + "'");
      }
      if (it->second->space != s.space) {
        schema_fail(path, "stratum '" + s.name + "' has boundary '" + b + "' in another space");
      }
      if (it->second->dim >= s.dim) {
        schema_fail(path, "boundary '" + b + "' of '" + s.name + "' must have lower dimension");
      }
    }
  }
  return d;
}

json branch_data_json(const BranchData& d) {
  json j = json::object();
  auto put = [&](const char* k, const std::optional<long>& v) {
    if (v) j[k] = *v;
  };
  put("m_f", d.m_f);
  put("m_l", d.m_l);
  put("eu_X", d.eu_X);
  put("eu_Xg", d.eu_Xg);
  put("B_g_slice", d.B_g_slice);
  put("B_g_l_slice", d.B_g_l_slice);
  put("eu_g_slice", d.eu_g_slice);
  put("eu_f_gt_slice", d.eu_f_gt_slice);
  put("B_f_gt_slice", d.B_f_gt_slice);
  return j;
}

json strata_json(const StrataDataset& d) {
  json j = json::object();
  j["dim"] = d.dim;
  j["generic_linear_f"] = d.generic_linear_f;
  if (!d.declared.empty()) j["declared"] = d.declared;
  if (!d.eu_origin.empty()) j["eu_origin"] = d.eu_origin;
  json recs = json::array();
  for (const auto& s : d.records) {
    json r = json::object();
    r["name"] = s.name;
    r["space"] = s.space;
    r["dim"] = s.dim;
    r["eu"] = s.eu;
    if (!s.inside.empty()) r["inside"] = s.inside;
    if (!s.boundary.empty()) r["boundary"] = s.boundary;
    if (!s.branches.empty()) r["branches"] = s.branches;
    if (!s.chi.empty()) r["chi"] = s.chi;
    recs.push_back(std::move(r));
  }
  j["records"] = std::move(recs);
  return j;
}

}  // namespace

NRange parse_n_range(const std::string& text) {
  auto parse_uint = [&](const std::string& s) -> long {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6) {
      throw Error(ErrorCode::Schema, "bad N range '" + text + "'");
    }
    return std::stol(s);
  };
  long lo = 0;
  long hi = 0;
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    lo = hi = parse_uint(text);
  } else {
    lo = parse_uint(text.substr(0, dots));
    hi = parse_uint(text.substr(dots + 2));
  }
  if (lo > hi) throw Error(ErrorCode::OutOfRange, "N range '" + text + "' is empty");
  if (lo < static_cast<long>(kMinN) || hi > static_cast<long>(kMaxN)) {
    throw Error(ErrorCode::OutOfRange, "N range '" + text + "' outside [2, 64]");
  }
  return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
}

std::vector<BranchParam> Scenario::branches_on(BranchHost host) const {
  std::vector<BranchParam> out;
  for (const auto& b : branches) {
    if (b.host == host) out.push_back(b);
  }
  return out;
}

const BranchParam* Scenario::find_branch(const std::string& name) const {
  for (const auto& b : branches) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

bool operator==(const Scenario& a, const Scenario& b) {
  return same_ring(a.ring, b.ring) && a.g == b.g && a.f_generic == b.f_generic && a.f == b.f && a.N == b.N &&
         a.default_trunc == b.default_trunc && a.branches == b.branches && a.branch_data == b.branch_data &&
         a.strata == b.strata && a.limits == b.limits && a.metadata == b.metadata;
}

Scenario load_scenario(const json& doc) {
  require_object(doc, "");
  Scenario s;
  for (const auto& [k, v] : doc.items()) {
    if (!kTopKeys.count(k)) s.metadata[k] = v;
  }
  if (auto it = doc.find("schema_version"); it != doc.end()) {
    if (get_int(*it, "/schema_version") != kSchemaVersion) {
      schema_fail("/schema_version", "unsupported version");
    }
  }
  auto names = get_string_list(require(doc, "variables", ""), "/variables");
  if (names.empty()) schema_fail("/variables", "at least one variable is required");
  for (const auto& n : names) {
    bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
    for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) schema_fail("/variables", "'" + n + "' is not an identifier");
  }
  try {
    s.ring = make_ring(names);
  } catch (const Error& e) {
    schema_fail("/variables", e.detail());
  }

  if (auto it = doc.find("limits"); it != doc.end()) {
    require_object(*it, "/limits");
    only_keys(*it, {"max_steps", "trunc", "tau_ladder", "linear_ladder", "power_cap", "trunc_cap"}, "/limits");
    const json& l = *it;
    if (l.contains("max_steps")) s.limits.max_steps = get_positive(l["max_steps"], "/limits/max_steps");
    if (l.contains("tau_ladder")) s.limits.tau_ladder = get_positive(l["tau_ladder"], "/limits/tau_ladder");
    if (l.contains("linear_ladder")) s.limits.linear_ladder = get_positive(l["linear_ladder"], "/limits/linear_ladder");
    if (l.contains("power_cap")) s.limits.power_cap = get_positive(l["power_cap"], "/limits/power_cap");
    if (l.contains("trunc_cap")) s.limits.trunc_cap = get_positive(l["trunc_cap"], "/limits/trunc_cap");
    if (l.contains("trunc") && !l["trunc"].is_null()) s.default_trunc = get_positive(l["trunc"], "/limits/trunc");
  }

  if (auto it = doc.find("g"); it != doc.end()) {
    s.g = get_poly(*it, s.ring, "/g");
    if (s.g->constant_term() != 0) schema_fail("/g", "g must vanish at the origin");
  }
  if (auto it = doc.find("f"); it != doc.end()) {
    std::string text = get_string(*it, "/f");
    if (text == "GENERIC-LINEAR") {
      s.f_generic = true;
    } else {
      s.f = get_poly(*it, s.ring, "/f");
      if (s.f->constant_term() != 0) schema_fail("/f", "f must vanish at the origin");
    }
  } else if (s.g) {
    s.f_generic = true;
  }
  if (auto it = doc.find("N"); it != doc.end()) {
    s.N = get_n(*it, "/N");
    s.N_explicit = true;
  }

  std::set<std::string> branch_names;
  if (auto it = doc.find("branches"); it != doc.end()) {
    if (!it->is_array()) schema_fail("/branches", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string bp = "/branches/" + std::to_string(i);
      const json& b = (*it)[i];
      require_object(b, bp);
      only_keys(b, {"name", "param", "trunc", "exact", "host", "multiplicity", "data"}, bp);
      std::string name = get_string(require(b, "name", bp), bp + "/name");
      if (!branch_names.insert(name).second) schema_fail(bp + "/name", "duplicate branch '" + name + "'");
      const json& param = require(b, "param", bp);
      std::vector<std::string> comps = param.is_string() ? split_tuple(param.get<std::string>(), bp + "/param")
                                                         : get_string_list(param, bp + "/param");
      if (comps.size() != names.size()) {
        schema_fail(bp + "/param", "expected " + std::to_string(names.size()) + " components");
      }
      std::optional<unsigned> trunc = s.default_trunc;
      if (b.contains("trunc")) trunc = get_positive(b["trunc"], bp + "/trunc");
      bool exact = b.contains("exact") ? get_bool(b["exact"], bp + "/exact") : true;
      BranchParam branch;
      try {
        branch = make_branch(name, comps, trunc, exact);
      } catch (const Error& e) {
        throw Error(e.code(), bp + ": " + e.detail());
      }
      if (b.contains("host")) {
        std::string host = get_string(b["host"], bp + "/host");
        if (host == "sigma") {
          branch.host = BranchHost::Sigma;
        } else if (host == "polar") {
          branch.host = BranchHost::Polar;
        } else {
          schema_fail(bp + "/host", "expected \"sigma\" or \"polar\"");
        }
      }
      if (b.contains("multiplicity")) branch.multiplicity = get_positive(b["multiplicity"], bp + "/multiplicity");
      if (b.contains("data")) s.branch_data[name] = get_branch_data(b["data"], bp + "/data");
      s.branches.push_back(std::move(branch));
    }
  }
  if (auto it = doc.find("strata"); it != doc.end()) s.strata = get_strata(*it, branch_names, "/strata");
  if (!s.g && !s.strata) schema_fail("", "a scenario needs \"g\" or \"strata\"");
  return s;
}

Scenario load_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("malformed JSON: ") + e.what());
  }
  return load_scenario(doc);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Schema, "cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenario_text(ss.str());
}

json limits_to_json(const Limits& l) {
  json j = json::object();
  j["max_steps"] = l.max_steps;
  j["tau_ladder"] = l.tau_ladder;
  j["linear_ladder"] = l.linear_ladder;
  j["power_cap"] = l.power_cap;
  j["trunc_cap"] = l.trunc_cap;
  return j;
}

std::string limits_summary(const Limits& l) { return limits_to_json(l).dump(); }

json save_scenario(const Scenario& s) {
  json j = json::object();
  j["schema_version"] = kSchemaVersion;
  for (const auto& [k, v] : s.metadata.items()) j[k] = v;
  j["variables"] = s.ring->names();
  if (s.g) j["g"] = print_poly(*s.g);
  if (s.f_generic) {
    j["f"] = "GENERIC-LINEAR";
  } else if (s.f) {
    j["f"] = print_poly(*s.f);
  }
  j["N"] = std::to_string(s.N.lo) + ".." + std::to_string(s.N.hi);
  if (!s.branches.empty()) {
    json bs = json::array();
    for (const auto& b : s.branches) {
      json o = json::object();
      o["name"] = b.name;
      o["param"] = branch_component_strings(b);
      o["trunc"] = b.trunc;
      o["exact"] = b.exact;
      o["host"] = b.host == BranchHost::Sigma ? "sigma" : "polar";
      o["multiplicity"] = b.multiplicity;
      if (auto it = s.branch_data.find(b.name); it != s.branch_data.end()) o["data"] = branch_data_json(it->second);
      bs.push_back(std::move(o));
    }
    j["branches"] = std::move(bs);
  }
  if (s.strata) j["strata"] = strata_json(*s.strata);
  json l = limits_to_json(s.limits);
  if (s.default_trunc) l["trunc"] = *s.default_trunc;
  j["limits"] = std::move(l);
  return j;
}

}  // namespace germ
