#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germkit/branch.hpp"

namespace germ {

struct LeData {
  std::size_t lambda0 = 0;
  std::size_t lambda1 = 0;
  bool isolated = false;
  /// Variable order of the adapted coordinates; coords[0] is the variable
  /// replaced by l (or l itself when l is a coordinate).
  std::vector<std::size_t> coords;
  /// λ¹ from the branch formula, when branches were supplied.
  std::optional<std::size_t> lambda1_branches;
  /// λ¹ from the Λ¹ cycle, when that intersection is proper.
  std::optional<std::size_t> lambda1_cycle;
  /// Per-branch (name, m_{l,b}, μ of the slice germ).
  struct BranchTerm {
    std::string name;
    unsigned degree = 0;
    std::size_t mu = 0;
  };
  std::vector<BranchTerm> branch_terms;
  std::vector<std::string> route_log;
};

/// The deterministic generic linear form of rung r: coefficients
/// (r+1)^i + i, so rung 0 is z_0 + 2 z_1 + 3 z_2 + ...
Poly generic_linear_form(const RingPtr& ring, unsigned rung);

/// Lê numbers of g (critical locus of dimension at most 1) with respect
/// to coordinates whose first member is the linear form l.
LeData le_numbers(const Poly& g, const Poly& l, const std::vector<BranchParam>& branches,
                  const Limits& limits = {});

/// χ of the Milnor fibre: 1 + (-1)^{v-1} λ⁰ + (-1)^{v-2} λ¹ with v variables.
long euler_char_fibre(std::size_t v, const LeData& le);

}  // namespace germ
