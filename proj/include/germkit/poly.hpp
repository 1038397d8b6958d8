#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "germkit/error.hpp"
#include "germkit/monomial.hpp"

namespace germ {

/// Variable-name table z_0..z_{v-1}. Rings compare by their names.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view where);

/// Sparse multivariate polynomial with rational coefficients. Zero
/// coefficients are never stored.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  explicit Poly(RingPtr ring);

  static Poly constant(RingPtr ring, const Rational& c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly term(RingPtr ring, const Monomial& m, const Rational& c);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return ring_ ? ring_->size() : 0; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;

  Rational coeff(const Monomial& m) const;
  Rational constant_term() const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  int lowest_degree() const;
  /// True when every term has degree exactly one.
  bool is_linear_form() const;

  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;

  Poly scaled(const Rational& c) const;
  Poly pow(unsigned e) const;
  Poly derivative(std::size_t var) const;

  Rational evaluate(std::span<const Rational> point) const;
  /// Replace variable i by images[i]; all images share one target ring.
  Poly substitute(std::span<const Poly> images) const;
  /// p(z + shift).
  Poly translate(std::span<const Rational> shift) const;
  /// Same terms over a ring with the same variable count (renaming).
  Poly with_ring(RingPtr ring) const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  RingPtr ring_;
  TermMap terms_;
};

/// The 2x2 minors of the Jacobian matrix with rows df and dg, in the
/// deterministic order (i, j), i < j.
std::vector<Poly> jacobian_minors(const Poly& f, const Poly& g);
std::vector<Poly> gradient(const Poly& g);

}  // namespace germ
