#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "germkit/scenario.hpp"

namespace germ {

/// Every number the pipeline computes for a scenario, keyed for subset
/// comparison against a fixture's "expected" block:
///   mu, sigma_dim, lambda0, lambda1, chi_g, threshold, gap_status,
///   branches {name: {m_f, mu}}, mu_gt {N: mu}, all_pass  (when g is set)
///   eu_origin {space: Eu}, brasselet {space: {kind: B}},
///   stratified {identity: {status, left, right}}          (when strata are set)
/// plus "provenance", naming the route behind each number.
nlohmann::ordered_json invariant_report(const Scenario& s, std::optional<NRange> range = std::nullopt,
                                        unsigned jobs = 1);

/// Paths at which `actual` differs from `expected`, where every key of an
/// expected object must be present in the actual one and other values
/// compare by equality.
std::vector<std::string> report_mismatches(const nlohmann::ordered_json& expected,
                                           const nlohmann::ordered_json& actual);

}  // namespace germ
