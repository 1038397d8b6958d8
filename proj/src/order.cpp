#include "germkit/order.hpp"

#include <algorithm>
#include <numeric>

#include "germkit/error.hpp"

namespace germ {

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> perm, std::size_t block)
    : kind_(kind), perm_(std::move(perm)), block_(block) {
  std::vector<std::size_t> sorted = perm_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) throw Error(ErrorCode::OutOfRange, "order permutation is not a permutation");
  }
  if (block_ > perm_.size()) throw Error(ErrorCode::OutOfRange, "elimination block too large");
}

static std::vector<std::size_t> identity_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

MonomialOrder MonomialOrder::global(std::size_t nvars) {
  return {OrderKind::GlobalDegRevLex, identity_perm(nvars)};
}

MonomialOrder MonomialOrder::local(std::size_t nvars) {
  return {OrderKind::LocalNegDegRevLex, identity_perm(nvars)};
}

MonomialOrder MonomialOrder::elimination(std::size_t nvars, std::size_t block) {
  return {OrderKind::Elimination, identity_perm(nvars), block};
}

int MonomialOrder::revlex_tail(const Monomial& a, const Monomial& b, std::size_t lo,
                               std::size_t hi) const {
  unsigned da = 0;
  unsigned db = 0;
  for (std::size_t k = lo; k < hi; ++k) {
    da += a[perm_[k]];
    db += b[perm_[k]];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t k = hi; k-- > lo;) {
    unsigned ea = a[perm_[k]];
    unsigned eb = b[perm_[k]];
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case OrderKind::GlobalDegRevLex:
      return revlex_tail(a, b, 0, perm_.size());
    case OrderKind::LocalNegDegRevLex: {
      unsigned da = a.degree();
      unsigned db = b.degree();
      if (da != db) return da < db ? 1 : -1;
      return revlex_tail(a, b, 0, perm_.size());
    }
    case OrderKind::Elimination: {
      int c = revlex_tail(a, b, 0, block_);
      return c != 0 ? c : revlex_tail(a, b, block_, perm_.size());
    }
  }
  return 0;
}

std::string MonomialOrder::describe() const {
  std::string s;
  switch (kind_) {
    case OrderKind::GlobalDegRevLex: s = "global-degrevlex"; break;
    case OrderKind::LocalNegDegRevLex: s = "local-negdegrevlex"; break;
    case OrderKind::Elimination: s = "elimination(" + std::to_string(block_) + ")"; break;
  }
  s += "[";
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(perm_[i]);
  }
  return s + "]";
}

}  // namespace germ
