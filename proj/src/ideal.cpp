#include "germkit/ideal.hpp"

#include <algorithm>

namespace germ {
namespace {

RingPtr with_leading_variable(const RingPtr& ring) {
  std::string name = "_t";
  while (ring->index_of(name)) name += "_";
  std::vector<std::string> names{name};
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  return make_ring(std::move(names));
}

Poly embed_shifted(const Poly& p, const RingPtr& extended) {
  Poly r(extended);
  for (const auto& [m, c] : p.terms()) {
    Monomial e(extended->size());
    for (std::size_t i = 0; i < m.size(); ++i) e.set(i + 1, m[i]);
    r.add_term(e, c);
  }
  return r;
}

Poly drop_leading(const Poly& p, const RingPtr& base) {
  Poly r(base);
  for (const auto& [m, c] : p.terms()) {
    Monomial e(base->size());
    for (std::size_t i = 0; i < e.size(); ++i) e.set(i, m[i + 1]);
    r.add_term(e, c);
  }
  return r;
}

// Generators of the extended ideal that do not involve the auxiliary
// variable, read back in the base ring.
Ideal eliminate_leading(const std::vector<Poly>& gens, const RingPtr& base, const Limits& limits) {
  const RingPtr& ext = gens.front().ring();
  auto basis = compute_standard_basis(gens, MonomialOrder::elimination(ext->size(), 1), limits);
  std::vector<Poly> kept;
  for (const auto& b : basis) {
    bool free_of_t = std::all_of(b.terms().begin(), b.terms().end(),
                                 [](const auto& t) { return t.first[0] == 0; });
    if (free_of_t) kept.push_back(drop_leading(b, base));
  }
  return Ideal(base, std::move(kept));
}

std::vector<Poly> nonzero(const std::vector<Poly>& v) {
  std::vector<Poly> out;
  for (const auto& p : v) {
    if (!p.is_zero()) out.push_back(p);
  }
  return out;
}

// I : h^∞ via I + ⟨1 - t h⟩ with t eliminated.
Ideal saturate_by(const Ideal& I, const Poly& h, const Limits& limits) {
  RingPtr ext = with_leading_variable(I.ring());
  std::vector<Poly> gens;
  for (const auto& g : I.generators()) gens.push_back(embed_shifted(g, ext));
  Poly t = Poly::variable(ext, 0);
  gens.push_back(Poly::constant(ext, 1) - t * embed_shifted(h, ext));
  return eliminate_leading(gens, I.ring(), limits);
}

Poly exact_quotient(const Poly& p, const Poly& h, const Limits& limits) {
  // Division by a single polynomial with zero remainder, done by repeated
  // leading-term cancellation in the global order.
  MonomialOrder ord = MonomialOrder::global(p.nvars());
  Monomial lh = leading_monomial(h, ord);
  Rational ch = h.coeff(lh);
  Poly rest = p;
  Poly q(p.ring());
  StepBudget budget(limits.max_steps);
  while (!rest.is_zero()) {
    budget.tick();
    Monomial lr = leading_monomial(rest, ord);
    if (!lh.divides(lr)) throw Error(ErrorCode::Violation, "colon: inexact division");
    Poly t = Poly::term(p.ring(), lr / lh, rest.coeff(lr) / ch);
    q += t;
    rest -= t * h;
  }
  return q;
}

Ideal colon_by(const Ideal& I, const Poly& h, const Limits& limits) {
  Ideal meet = ideal_intersection(I, Ideal(I.ring(), {h}), limits);
  std::vector<Poly> gens;
  for (const auto& g : meet.generators()) {
    if (!g.is_zero()) gens.push_back(exact_quotient(g, h, limits));
  }
  return Ideal(I.ring(), std::move(gens));
}

}  // namespace

Ideal::Ideal(RingPtr ring, std::vector<Poly> generators)
    : ring_(std::move(ring)), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : generators_) require_same_ring(ring_, g.ring(), "ideal");
  if (generators_.empty()) generators_.push_back(Poly(ring_));
}

Ideal::Ideal() : Ideal(make_ring({}), {}) {}

Ideal Ideal::zero(RingPtr ring) { return Ideal(ring, {Poly(ring)}); }

Ideal Ideal::unit(RingPtr ring) { return Ideal(ring, {Poly::constant(ring, 1)}); }

const std::vector<Poly>& Ideal::standard_basis(const MonomialOrder& ord, const Limits& limits) const {
  if (ord.nvars() != nvars()) throw Error(ErrorCode::RingMismatch, "order has wrong variable count");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->bases.find(ord);
  if (it == cache_->bases.end()) {
    it = cache_->bases.emplace(ord, compute_standard_basis(generators_, ord, limits)).first;
  }
  return it->second;
}

const std::vector<Poly>& Ideal::global_basis(const Limits& limits) const {
  return standard_basis(MonomialOrder::global(nvars()), limits);
}

const std::vector<Poly>& Ideal::local_basis(const Limits& limits) const {
  return standard_basis(MonomialOrder::local(nvars()), limits);
}

bool Ideal::is_zero() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool Ideal::contains(const Poly& p, const Limits& limits) const {
  require_same_ring(ring_, p.ring(), "contains");
  return reduce(p, global_basis(limits), MonomialOrder::global(nvars()), limits).is_zero();
}

bool Ideal::contains_locally(const Poly& p, const Limits& limits) const {
  require_same_ring(ring_, p.ring(), "contains_locally");
  return reduce(p, local_basis(limits), MonomialOrder::local(nvars()), limits).is_zero();
}

bool Ideal::is_unit(const Limits& limits) const {
  const auto& b = global_basis(limits);
  return b.size() == 1 && b.front().is_constant() && !b.front().is_zero();
}

bool Ideal::is_unit_locally(const Limits& limits) const {
  const auto& b = local_basis(limits);
  MonomialOrder ord = MonomialOrder::local(nvars());
  return std::any_of(b.begin(), b.end(), [&](const Poly& p) { return leading_monomial(p, ord).is_one(); });
}

Poly normal_form(const Poly& p, const std::vector<Poly>& basis, const MonomialOrder& ord,
                 const Limits& limits) {
  for (const auto& b : basis) require_same_ring(p.ring(), b.ring(), "normal_form");
  if (basis.empty()) return p;
  return reduce(p, compute_standard_basis(basis, ord, limits), ord, limits);
}

std::optional<std::size_t> quotient_dim_local(const Ideal& I, const Limits& limits) {
  MonomialOrder ord = MonomialOrder::local(I.nvars());
  std::vector<Monomial> leads;
  for (const auto& p : I.local_basis(limits)) leads.push_back(leading_monomial(p, ord));
  auto in_leading = [&](const Monomial& m) {
    return std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  const std::size_t n = I.nvars();
  for (std::size_t i = 0; i < n; ++i) {
    bool pure = std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) {
      auto s = l.support();
      return s.empty() || s == std::vector<std::size_t>{i};
    });
    if (!pure) return std::nullopt;
  }
  Monomial one(n);
  if (in_leading(one)) return 0;
  std::size_t count = 0;
  std::vector<std::pair<Monomial, std::size_t>> stack{{one, 0}};
  while (!stack.empty()) {
    auto [m, from] = stack.back();
    stack.pop_back();
    ++count;
    for (std::size_t i = from; i < n; ++i) {
      Monomial next = m;
      next.set(i, m[i] + 1);
      if (!in_leading(next)) stack.push_back({next, i});
    }
  }
  return count;
}

std::optional<int> dim_at_origin(const Ideal& I, const Limits& limits) {
  MonomialOrder ord = MonomialOrder::local(I.nvars());
  std::vector<Monomial> leads;
  for (const auto& p : I.local_basis(limits)) leads.push_back(leading_monomial(p, ord));
  for (const auto& l : leads) {
    if (l.is_one()) return std::nullopt;
  }
  const std::size_t n = I.nvars();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool independent = std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) {
      for (std::size_t i : l.support()) {
        if (!(mask & (1U << i))) return false;
      }
      return true;
    });
    if (independent) best = size;
  }
  return best;
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_sum");
  std::vector<Poly> gens = nonzero(a.generators());
  for (const auto& g : nonzero(b.generators())) gens.push_back(g);
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_product");
  std::vector<Poly> gens;
  for (const auto& x : nonzero(a.generators())) {
    for (const auto& y : nonzero(b.generators())) gens.push_back(x * y);
  }
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_intersection(const Ideal& a, const Ideal& b, const Limits& limits) {
  require_same_ring(a.ring(), b.ring(), "ideal_intersection");
  if (a.is_zero() || b.is_zero()) return Ideal::zero(a.ring());
  RingPtr ext = with_leading_variable(a.ring());
  Poly t = Poly::variable(ext, 0);
  Poly one_minus_t = Poly::constant(ext, 1) - t;
  std::vector<Poly> gens;
  for (const auto& g : nonzero(a.generators())) gens.push_back(t * embed_shifted(g, ext));
  for (const auto& g : nonzero(b.generators())) gens.push_back(one_minus_t * embed_shifted(g, ext));
  return eliminate_leading(gens, a.ring(), limits);
}

Ideal ideal_colon(const Ideal& I, const Ideal& J, const Limits& limits) {
  require_same_ring(I.ring(), J.ring(), "ideal_colon");
  std::vector<Poly> hs = nonzero(J.generators());
  if (hs.empty()) return Ideal::unit(I.ring());
  Ideal acc = colon_by(I, hs.front(), limits);
  for (std::size_t k = 1; k < hs.size(); ++k) acc = ideal_intersection(acc, colon_by(I, hs[k], limits), limits);
  return Ideal(I.ring(), acc.global_basis(limits));
}

Ideal saturate(const Ideal& I, const Ideal& J, const Limits& limits) {
  require_same_ring(I.ring(), J.ring(), "saturate");
  std::vector<Poly> hs = nonzero(J.generators());
  if (hs.empty()) return Ideal::unit(I.ring());
  Ideal acc = saturate_by(I, hs.front(), limits);
  for (std::size_t k = 1; k < hs.size(); ++k) {
    acc = ideal_intersection(acc, saturate_by(I, hs[k], limits), limits);
  }
  return Ideal(I.ring(), acc.global_basis(limits));
}

bool ideals_equal(const Ideal& a, const Ideal& b, const Limits& limits) {
  require_same_ring(a.ring(), b.ring(), "ideals_equal");
  return a.global_basis(limits) == b.global_basis(limits);
}

bool ideals_equal_locally(const Ideal& a, const Ideal& b, const Limits& limits) {
  require_same_ring(a.ring(), b.ring(), "ideals_equal_locally");
  auto all_in = [&](const Ideal& x, const Ideal& y) {
    return std::all_of(x.generators().begin(), x.generators().end(),
                       [&](const Poly& p) { return y.contains_locally(p, limits); });
  };
  return all_in(a, b) && all_in(b, a);
}

Ideal jacobian_ideal(const Poly& g) { return Ideal(g.ring(), gradient(g)); }

}  // namespace germ
