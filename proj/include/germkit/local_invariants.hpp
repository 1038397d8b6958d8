#pragma once

#include <optional>
#include <vector>

#include "germkit/branch.hpp"

namespace germ {

/// Milnor number of an isolated singularity at the origin. Throws
/// NONISOLATED when the Jacobian ideal has positive local dimension.
std::size_t milnor_number(const Poly& g, const Limits& limits = {});

struct CriticalLocus {
  Ideal jacobian;
  /// Local dimension of the critical locus; nullopt when 0 is not critical.
  std::optional<int> dim;
  /// Whether the critical locus meets {f = 0} only at the origin; set
  /// when an f was supplied.
  std::optional<bool> meets_f_only_at_origin;
};

CriticalLocus critical_locus(const Poly& g, const std::optional<Poly>& f = std::nullopt,
                             const Limits& limits = {});

/// The polynomials restricted to the linear subspace {l = 0 for every form},
/// written in the remaining variables (one variable is solved per form).
std::vector<Poly> restrict_to_subspace(std::vector<Poly> polys, std::vector<Poly> forms);

/// Milnor number at p of g restricted to the hyperplane {l = l(p)}, by
/// translating p to 0 and eliminating one variable. l must be a linear form.
std::size_t slice_milnor_linear(const Poly& g, const Poly& l, const std::vector<Rational>& p,
                                const Limits& limits = {});


/// Milnor number at p of g restricted to the affine subspace through p cut
/// out by the given linear forms. Throws DEGENERATE when the forms are
/// dependent.
std::size_t restricted_milnor(const Poly& g, std::vector<Poly> forms, const std::vector<Rational>& p,
                              const Limits& limits = {});

/// Same quantity for any f smooth at p: dim O_p / (f - f(p), 2x2 minors of
/// the Jacobian of (f, g)).
std::size_t slice_milnor_minors(const Poly& g, const Poly& f, const std::vector<Rational>& p,
                                const Limits& limits = {});

struct SliceMilnor {
  std::size_t mu = 0;
  Rational tau;    // the rung that was accepted
  Rational delta;  // f at the branch point
};

/// Milnor number of g on the slice {f = f(b(tau))} at the branch point
/// b(tau), for tau on the ladder 1/2, 1/4, ... and confirmed at tau/2.
/// Linear f goes through elimination, other f through the minors route.
SliceMilnor branch_slice_milnor(const Poly& g, const Poly& f, const BranchParam& b,
                                const Ideal& host, const Limits& limits = {});

}  // namespace germ
