#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "germkit/branch.hpp"
#include <json.hpp>

namespace germ {

inline constexpr unsigned kMinN = 2;
inline constexpr unsigned kMaxN = 64;
inline constexpr int kSchemaVersion = 1;

struct NRange {
  unsigned lo = 2;
  unsigned hi = 8;
  friend bool operator==(const NRange&, const NRange&) = default;
};

/// Parses "5", "2..8" into a range inside [2, 64].
NRange parse_n_range(const std::string& text);

/// Per-branch stratified quantities; every field is optional data.
struct BranchData {
  std::optional<long> m_f;
  std::optional<long> m_l;
  std::optional<long> eu_X;
  std::optional<long> eu_Xg;
  std::optional<long> B_g_slice;
  std::optional<long> B_g_l_slice;
  std::optional<long> eu_g_slice;
  std::optional<long> eu_f_gt_slice;
  std::optional<long> B_f_gt_slice;
  friend bool operator==(const BranchData&, const BranchData&) = default;
};

/// One stratum of a Whitney stratification of a space ("X", "X^f",
/// "X^g", "X^gt"). `inside` lists the functions whose zero set contains
/// the stratum; `boundary` lists strata in its closure, all of lower
/// dimension; `chi` maps a fibre kind to χ of the stratum's slice.
struct StratumRecord {
  std::string name;
  std::string space = "X";
  int dim = 0;
  long eu = 1;
  std::vector<std::string> inside;
  std::vector<std::string> boundary;
  std::vector<std::string> branches;
  std::map<std::string, long> chi;
  friend bool operator==(const StratumRecord&, const StratumRecord&) = default;
};

struct StrataDataset {
  int dim = 0;
  bool generic_linear_f = false;
  std::map<std::string, bool> declared;
  std::map<std::string, long> eu_origin;
  std::vector<StratumRecord> records;
  friend bool operator==(const StrataDataset&, const StrataDataset&) = default;
};

struct Scenario {
  RingPtr ring;
  std::optional<Poly> g;
  bool f_generic = false;
  std::optional<Poly> f;
  NRange N;
  bool N_explicit = false;
  std::optional<unsigned> default_trunc;
  std::vector<BranchParam> branches;
  std::map<std::string, BranchData> branch_data;
  std::optional<StrataDataset> strata;
  Limits limits;
  /// Free-form keys carried through untouched ("name", "expected", "oracles", ...).
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  std::vector<BranchParam> branches_on(BranchHost host) const;
  const BranchParam* find_branch(const std::string& name) const;
};

bool operator==(const Scenario& a, const Scenario& b);

Scenario load_scenario(const nlohmann::ordered_json& doc);
Scenario load_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);
nlohmann::ordered_json save_scenario(const Scenario& s);

std::string limits_summary(const Limits& l);
nlohmann::ordered_json limits_to_json(const Limits& l);

}  // namespace germ
