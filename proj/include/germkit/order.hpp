#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "germkit/monomial.hpp"

namespace germ {

enum class OrderKind {
  GlobalDegRevLex,    // well-ordering; Buchberger
  LocalNegDegRevLex,  // 1 above every variable; Mora, computes in the local ring at 0
  Elimination,        // degrevlex on a leading block, then degrevlex on the rest
};

/// A monomial order plus a permutation of the variables. Position k of the
/// permuted exponent vector is variable perm[k].
class MonomialOrder {
 public:
  MonomialOrder(OrderKind kind, std::vector<std::size_t> perm, std::size_t block = 0);

  static MonomialOrder global(std::size_t nvars);
  static MonomialOrder local(std::size_t nvars);
  /// Eliminates the first `block` variables.
  static MonomialOrder elimination(std::size_t nvars, std::size_t block);

  OrderKind kind() const noexcept { return kind_; }
  bool is_local() const noexcept { return kind_ == OrderKind::LocalNegDegRevLex; }
  std::size_t nvars() const noexcept { return perm_.size(); }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }

  /// Negative when a < b, zero when equal, positive when a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string describe() const;

  friend auto operator<=>(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  int revlex_tail(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) const;

  OrderKind kind_;
  std::vector<std::size_t> perm_;
  std::size_t block_ = 0;
};

}  // namespace germ
