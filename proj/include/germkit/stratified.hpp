#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germkit/scenario.hpp"
#include "germkit/verdict.hpp"

namespace germ {

/// The function whose zero set a fibre kind is taken in: "f-fibre" -> "f",
/// "g-fibre" -> "g", "gt-fibre" -> "gt", "l-fibre" -> "l".
std::string fibre_function(const std::string& kind);

/// Σ χ(V ∩ fibre)·Eu(V) over the strata of `space` not contained in the
/// zero set of the fibre's function. Throws MISSING-SLICE naming the first
/// stratum without the entry, or when `space` has no strata.
long brasselet_number(const StrataDataset& ds, const std::string& kind, const std::string& space = "X");

/// Eu of `space` at 0 by the hyperplane formula: the l-fibre Brasselet number.
long bls_euler_obstruction(const StrataDataset& ds, const std::string& space = "X");

/// The declared eu_origin of `space` when present, the BLS value otherwise.
long euler_obstruction(const StrataDataset& ds, const std::string& space = "X");

/// Eu_{h,X}(0) = Eu_X(0) - B_{h,X}(0) for the fibre kind's function h.
long euler_obstruction_of_function(const StrataDataset& ds, const std::string& kind,
                                   const std::string& space = "X");

/// Every identity relating the datasets of X, X^f, X^g and X^gt and the
/// branch table. Identities with incomplete inputs are SKIPPED. N defaults
/// to the scenario's N when it is a single value.
std::vector<Verdict> verify_stratified_identities(const Scenario& s, std::optional<unsigned> N = std::nullopt);

/// Writes the stratified dataset of X = C^v implied by the verified
/// deformation at N: strata of X, X^f, X^g (v >= 3 or isolated g), X^gt and
/// the per-branch table. Throws OUT-OF-RANGE below the threshold.
Scenario export_dataset(const Scenario& s, unsigned N);

}  // namespace germ
