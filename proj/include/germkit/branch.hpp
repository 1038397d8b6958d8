#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germkit/ideal.hpp"

namespace germ {

/// Dense coefficients c_0, c_1, ... of a polynomial in one parameter t.
using UniPoly = std::vector<Rational>;

/// Lowest index with nonzero coefficient, nullopt for the zero series.
std::optional<unsigned> series_order(const UniPoly& s);
/// Product truncated below t^K.
UniPoly series_mul(const UniPoly& a, const UniPoly& b, unsigned K);
/// a(b(t)) truncated below t^K; b must have zero constant term.
UniPoly series_compose(const UniPoly& a, const UniPoly& b, unsigned K);

enum class BranchHost { Sigma, Polar };

/// A curve germ through the origin given by polynomial components in t.
/// Exact branches are parametrizations to all orders; inexact ones are
/// trusted only modulo t^trunc.
struct BranchParam {
  std::string name;
  std::vector<UniPoly> components;
  unsigned trunc = 0;
  bool exact = true;
  BranchHost host = BranchHost::Sigma;
  unsigned multiplicity = 1;

  std::size_t nvars() const { return components.size(); }
  unsigned max_degree() const;

  friend bool operator==(const BranchParam&, const BranchParam&) = default;
};

/// Builds a branch from one polynomial-in-t string per variable.
/// Rejects nonzero constant terms and the constant map.
BranchParam make_branch(std::string name, const std::vector<std::string>& components,
                        std::optional<unsigned> trunc = std::nullopt, bool exact = true);
std::vector<std::string> branch_component_strings(const BranchParam& b);

/// p(b(t)) modulo t^K.
UniPoly compose(const Poly& p, const BranchParam& b, unsigned K);
/// p(b(t)) to all orders (the branch is polynomial).
UniPoly compose_exact(const Poly& p, const BranchParam& b);
/// b(tau).
std::vector<Rational> branch_point(const BranchParam& b, const Rational& tau);

struct BranchValidation {
  /// Lowest order at which some generator composed with b is nonzero, if
  /// any; always at least the truncation order on success.
  std::optional<unsigned> margin;
};

/// Throws VIOLATION naming the order and the generator when some
/// generator composed with b has a term below t^K.
BranchValidation validate_branch(const BranchParam& b, const Ideal& host);

/// Order in t of f along b, i.e. the local degree of f restricted to b.
unsigned local_degree(const Poly& f, const BranchParam& b, const Limits& limits = {});

}  // namespace germ
