#include "germkit/monomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "germkit/error.hpp"

namespace germ {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw Error(ErrorCode::Parse, "not a rational literal: '" + text + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Monomial::Monomial(std::size_t nvars) {
  if (nvars > kMaxVars) {
    throw Error(ErrorCode::OutOfRange, "at most " + std::to_string(kMaxVars) + " variables");
  }
  n_ = static_cast<std::uint8_t>(nvars);
}

Monomial::Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size()) {
  std::size_t i = 0;
  for (unsigned e : exps) set(i++, e);
}

Monomial::Monomial(const std::vector<unsigned>& exps) : Monomial(exps.size()) {
  for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
}

void Monomial::set(std::size_t i, unsigned e) {
  if (i >= n_) throw Error(ErrorCode::OutOfRange, "monomial slot out of range");
  if (e > kMaxExponent) throw Error(ErrorCode::OutOfRange, "exponent overflow");
  exp_[i] = static_cast<std::uint16_t>(e);
}

unsigned Monomial::degree() const noexcept {
  unsigned d = 0;
  for (std::size_t i = 0; i < n_; ++i) d += exp_[i];
  return d;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    if (exp_[i] > other.exp_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    if (exp_[i] != 0 && other.exp_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    r.set(i, static_cast<unsigned>(exp_[i]) + other.exp_[i]);
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(n_);
  for (std::size_t i = 0; i < n_; ++i) r.exp_[i] = static_cast<std::uint16_t>(exp_[i] - other.exp_[i]);
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
  return r;
}

std::vector<std::size_t> Monomial::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < n_; ++i) {
    if (exp_[i] != 0) s.push_back(i);
  }
  return s;
}

}  // namespace germ
