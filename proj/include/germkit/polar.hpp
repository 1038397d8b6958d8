#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germkit/branch.hpp"

namespace germ {

/// Closure of the critical locus of (f, g) off the critical locus of g and
/// off {f g = 0}, presented by an ideal with optional supplied components.
struct PolarCurve {
  Ideal ideal;
  /// nullopt when the curve germ is empty.
  std::optional<int> dim;
  std::vector<BranchParam> components;

  bool empty() const { return !dim.has_value(); }
};

/// 2x2 minors of the Jacobian rows of f and g, saturated by Jac(g) and by
/// f*g. Supplied components are validated against the result.
PolarCurve relative_polar_ideal(const Poly& f, const Poly& g, std::vector<BranchParam> components = {},
                                const Limits& limits = {});

/// ([C].[V(h)]) at the origin as a local quotient dimension. Throws
/// IMPROPER when C and V(h) share a positive-dimensional piece.
std::size_t intersection_number(const Ideal& C, const Poly& h, const Limits& limits = {});

struct ComponentRatio {
  std::string name;
  unsigned ord_g = 0;
  unsigned ord_f = 0;
  unsigned multiplicity = 1;
  Rational ratio;
};

enum class GapStatus {
  Empty,     // no polar curve; threshold 2
  Exact,     // supplied components account for the whole intersection
  Mismatch,  // supplied components do not add up; sound bound used
  Bound,     // no components supplied; sound bound used
};

std::string_view gap_status_name(GapStatus s);

struct GapReport {
  std::vector<ComponentRatio> ratios;
  /// ([Γ].[V(g)]) at 0, absent for an empty curve.
  std::optional<std::size_t> g_intersection;
  unsigned sound_bound = 2;
  std::optional<Rational> exact_max;
  GapStatus status = GapStatus::Empty;
};

GapReport gap_ratios(const Poly& f, const Poly& g, const PolarCurve& C, const Limits& limits = {});

/// Smallest admissible N: one more than the floor of the exact maximum
/// ratio when that is certified, the sound bound otherwise, at least 2.
unsigned iomdin_threshold(const GapReport& report);

struct PolarDecomposition {
  bool pass = false;
  unsigned N = 0;
  std::string witness;  // first failing generator or component
  unsigned max_power = 0;
  PolarCurve deformed;  // polar curve of (f, g + f^N)
};

/// Compares the polar curve of (f, g + f^N) with Jac(g) times the polar
/// curve of (f, g) by two-sided local radical membership, and checks each
/// supplied polar component and Σ-branch against the deformed curve.
PolarDecomposition verify_polar_decomposition(const Poly& f, const Poly& g, unsigned N,
                                              const PolarCurve& undeformed,
                                              const std::vector<BranchParam>& sigma_branches = {},
                                              const Limits& limits = {});

}  // namespace germ
