#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace germ {

/// Exact coefficients. GMP keeps every value in lowest terms with a positive
/// denominator once canonicalized; all library code canonicalizes on entry.
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

inline constexpr std::size_t kMaxVars = 16;
inline constexpr unsigned kMaxExponent = 0xFFFF;

/// Exponent vector of fixed capacity. Unused slots stay zero so the defaulted
/// comparison is a plain lexicographic order, which is what term maps key on.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<unsigned> exps);
  explicit Monomial(const std::vector<unsigned>& exps);

  std::size_t size() const noexcept { return n_; }
  unsigned operator[](std::size_t i) const noexcept { return exp_[i]; }
  void set(std::size_t i, unsigned e);

  unsigned degree() const noexcept;
  bool is_one() const noexcept { return degree() == 0; }

  bool divides(const Monomial& other) const noexcept;
  bool coprime(const Monomial& other) const noexcept;

  Monomial operator*(const Monomial& other) const;
  /// Precondition: other.divides(*this).
  Monomial operator/(const Monomial& other) const;

  static Monomial lcm(const Monomial& a, const Monomial& b);

  /// Variable indices with nonzero exponent.
  std::vector<std::size_t> support() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint8_t n_ = 0;
};

}  // namespace germ
