#include "germkit/poly.hpp"

#include <algorithm>
#include <set>

namespace germ {

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVars) {
    throw Error(ErrorCode::OutOfRange, "at most " + std::to_string(kMaxVars) + " variables");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw Error(ErrorCode::Schema, "duplicate variable '" + n + "'");
  }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view where) {
  if (!same_ring(a, b)) {
    throw Error(ErrorCode::RingMismatch, std::string(where) + ": operands live in different rings");
  }
}

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {}

Poly Poly::constant(RingPtr ring, const Rational& c) {
  Poly p(ring);
  p.add_term(Monomial(ring->size()), c);
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  Monomial m(ring->size());
  m.set(index, 1);
  return term(std::move(ring), m, 1);
}

Poly Poly::term(RingPtr ring, const Monomial& m, const Rational& c) {
  Poly p(std::move(ring));
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const { return coeff(Monomial(nvars())); }

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

int Poly::lowest_degree() const {
  if (terms_.empty()) return -1;
  int d = static_cast<int>(terms_.begin()->first.degree());
  for (const auto& [m, c] : terms_) d = std::min(d, static_cast<int>(m.degree()));
  return d;
}

bool Poly::is_linear_form() const {
  if (terms_.empty()) return false;
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.degree() == 1; });
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  if (!ring_) ring_ = other.ring_;
  require_same_ring(ring_, other.ring_, "add");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (!ring_) ring_ = other.ring_;
  require_same_ring(ring_, other.ring_, "subtract");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ring(a.ring_, b.ring_, "multiply");
  Poly r(a.ring_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const Rational& c) const {
  Poly r(ring_);
  if (c == 0) return r;
  Rational k = c;
  k.canonicalize();
  for (const auto& [m, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, a * k);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Poly Poly::derivative(std::size_t var) const {
  if (var >= nvars()) throw Error(ErrorCode::OutOfRange, "derivative variable out of range");
  Poly r(ring_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m[var];
    if (e == 0) continue;
    Monomial d = m;
    d.set(var, e - 1);
    r.add_term(d, c * e);
  }
  return r;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw Error(ErrorCode::RingMismatch, "evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

Poly Poly::substitute(std::span<const Poly> images) const {
  if (images.size() != nvars()) throw Error(ErrorCode::RingMismatch, "substitution has wrong arity");
  RingPtr target = images.empty() ? ring_ : images.front().ring();
  for (const auto& img : images) require_same_ring(target, img.ring(), "substitute");
  // Powers are cached per variable since terms share them heavily.
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Poly r(target);
  for (const auto& [m, c] : terms_) {
    Poly t = constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0) t *= power(i, m[i]);
    }
    r += t;
  }
  return r;
}

Poly Poly::translate(std::span<const Rational> shift) const {
  if (shift.size() != nvars()) throw Error(ErrorCode::RingMismatch, "translation has wrong length");
  std::vector<Poly> images;
  images.reserve(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    images.push_back(variable(ring_, i) + constant(ring_, shift[i]));
  }
  return substitute(images);
}

Poly Poly::with_ring(RingPtr ring) const {
  if (ring->size() != nvars()) throw Error(ErrorCode::RingMismatch, "renaming needs equal variable count");
  Poly r(std::move(ring));
  r.terms_ = terms_;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.terms_ == b.terms_ && (a.terms_.empty() || same_ring(a.ring_, b.ring_));
}

std::vector<Poly> gradient(const Poly& g) {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < g.nvars(); ++i) out.push_back(g.derivative(i));
  return out;
}

std::vector<Poly> jacobian_minors(const Poly& f, const Poly& g) {
  require_same_ring(f.ring(), g.ring(), "jacobian_minors");
  auto df = gradient(f);
  auto dg = gradient(g);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < df.size(); ++i) {
    for (std::size_t j = i + 1; j < df.size(); ++j) {
      out.push_back(df[i] * dg[j] - df[j] * dg[i]);
    }
  }
  return out;
}

}  // namespace germ
