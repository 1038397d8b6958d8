#include "germkit/report.hpp"

#include <algorithm>

#include "germkit/iomdin.hpp"
#include "germkit/local_invariants.hpp"
#include "germkit/parse.hpp"
#include "germkit/stratified.hpp"

namespace germ {

using json = nlohmann::ordered_json;

namespace {

const char* const kKinds[] = {"f-fibre", "g-fibre", "gt-fibre", "l-fibre"};

std::vector<std::string> spaces_of(const StrataDataset& ds) {
  std::vector<std::string> out;
  for (const auto& r : ds.records) {
    if (std::find(out.begin(), out.end(), r.space) == out.end()) out.push_back(r.space);
  }
  return out;
}

void mismatches(const json& e, const json& a, const std::string& path, std::vector<std::string>& out) {
  if (e.is_object()) {
    if (!a.is_object()) {
      out.push_back(path + ": expected an object");
      return;
    }
    for (const auto& [k, v] : e.items()) {
      auto it = a.find(k);
      if (it == a.end()) {
        out.push_back(path + "/" + k + ": missing");
        continue;
      }
      mismatches(v, *it, path + "/" + k, out);
    }
    return;
  }
  if (e != a) out.push_back(path + ": expected " + e.dump() + ", got " + a.dump());
}

}  // namespace

json invariant_report(const Scenario& s, std::optional<NRange> range, unsigned jobs) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["report"] = "invariant-report";
  j["limits"] = limits_to_json(s.limits);
  json prov;
  if (s.g) {
    try {
      j["mu"] = milnor_number(*s.g, s.limits);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Nonisolated) throw;
      j["mu"] = nullptr;
    }
    prov["mu"] = "dim O/Jac(g) from a local standard basis";
    VerdictTable t = verify_scenario(s, range, jobs);
    const VerifierContext& c = t.context;
    j["sigma_dim"] = c.hypotheses.sigma_dim ? json(*c.hypotheses.sigma_dim) : json(nullptr);
    j["f"] = print_poly(c.f);
    j["lambda0"] = c.le.lambda0;
    j["lambda1"] = c.le.lambda1;
    j["chi_g"] = c.chi_g;
    j["threshold"] = c.threshold;
    j["gap_status"] = std::string(gap_status_name(c.gap.status));
    json branches = json::object();
    for (const auto& b : c.branch_terms) branches[b.name] = {{"m_f", b.m_f}, {"mu", b.mu}};
    j["branches"] = branches;
    json mu_gt = json::object();
    for (const auto& r : t.rows) mu_gt[std::to_string(r.N)] = r.mu_gt ? json(*r.mu_gt) : json(nullptr);
    j["mu_gt"] = mu_gt;
    j["all_pass"] = t.all_pass();
    if (c.le.isolated) {
      prov["lambda0"] = "isolated germ: lambda0 = mu";
      prov["lambda1"] = "isolated germ: lambda1 = 0";
    } else {
      prov["lambda0"] = "intersection of the relative polar curve with the first partial";
      prov["lambda1"] = c.le.lambda1_branches ? "branch formula sum m_l mu(slice)" : "Lambda1 cycle";
    }
    prov["chi_g"] = "1 + (-1)^(v-1) lambda0 + (-1)^(v-2) lambda1";
    prov["threshold"] = "gap ratios of the polar curve";
    prov["mu_gt"] = "dim O/Jac(g + f^N) from a local standard basis";
  }
  if (s.strata) {
    const StrataDataset& ds = *s.strata;
    json eu = json::object();
    json bras = json::object();
    for (const auto& space : spaces_of(ds)) {
      try {
        eu[space] = euler_obstruction(ds, space);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MissingSlice) throw;
      }
      json per = json::object();
      for (const char* kind : kKinds) {
        try {
          per[kind] = brasselet_number(ds, kind, space);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::MissingSlice) throw;
        }
      }
      bras[space] = per;
    }
    j["eu_origin"] = eu;
    j["brasselet"] = bras;
    std::optional<unsigned> N;
    if (range && range->lo == range->hi) N = range->lo;
    json ver = json::object();
    for (const auto& v : verify_stratified_identities(s, N)) {
      ver[v.identity] = {{"status", std::string(verdict_status_name(v.status))}, {"left", v.left}, {"right", v.right}};
    }
    j["stratified"] = ver;
    prov["eu_origin"] = "declared value, else the l-fibre Brasselet number";
    prov["brasselet"] = "Eu-weighted chi of the fibre slices over strata not in the zero set";
  }
  j["provenance"] = prov;
  return j;
}

std::vector<std::string> report_mismatches(const json& expected, const json& actual) {
  std::vector<std::string> out;
  mismatches(expected, actual, "", out);
  return out;
}

}  // namespace germ
