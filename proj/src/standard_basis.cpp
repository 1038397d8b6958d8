#include <algorithm>
#include <set>
#include <tuple>

#include "germkit/ideal.hpp"

namespace germ {
namespace {

struct Term {
  Monomial m;
  Rational c;
};

// Terms sorted by the active order, largest first. Multiplying by a
// monomial preserves the sort because every order here is multiplicative.
using TermVec = std::vector<Term>;

TermVec to_terms(const Poly& p, const MonomialOrder& ord) {
  TermVec v;
  v.reserve(p.size());
  for (const auto& [m, c] : p.terms()) v.push_back({m, c});
  std::sort(v.begin(), v.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.m, b.m) > 0; });
  return v;
}

Poly to_poly(const RingPtr& ring, const TermVec& v) {
  Poly p(ring);
  for (const auto& t : v) p.add_term(t.m, t.c);
  return p;
}

void make_monic(TermVec& v) {
  if (v.empty() || v.front().c == 1) return;
  Rational inv = 1 / v.front().c;
  for (auto& t : v) t.c *= inv;
}

unsigned max_degree(const TermVec& v) {
  unsigned d = 0;
  for (const auto& t : v) d = std::max(d, t.m.degree());
  return d;
}

unsigned ecart(const TermVec& v) { return max_degree(v) - v.front().m.degree(); }

// h - coef * mono * g, merging two sorted term lists.
TermVec sub_mul(const TermVec& h, const Rational& coef, const Monomial& mono, const TermVec& g,
                const MonomialOrder& ord) {
  TermVec out;
  out.reserve(h.size() + g.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < h.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(h[i++]);
      continue;
    }
    Monomial gm = g[j].m * mono;
    if (i == h.size()) {
      out.push_back({gm, -coef * g[j].c});
      ++j;
      continue;
    }
    int c = ord.compare(h[i].m, gm);
    if (c > 0) {
      out.push_back(h[i++]);
    } else if (c < 0) {
      out.push_back({gm, -coef * g[j].c});
      ++j;
    } else {
      Rational s = h[i].c - coef * g[j].c;
      if (s != 0) out.push_back({h[i].m, s});
      ++i;
      ++j;
    }
  }
  return out;
}

TermVec s_poly(const TermVec& a, const TermVec& b, const MonomialOrder& ord) {
  Monomial l = Monomial::lcm(a.front().m, b.front().m);
  TermVec left = sub_mul(TermVec{}, -1 / a.front().c, l / a.front().m, a, ord);
  return sub_mul(left, 1 / b.front().c, l / b.front().m, b, ord);
}

const TermVec* find_reducer(const Monomial& m, const std::vector<TermVec>& basis) {
  for (const auto& g : basis) {
    if (g.front().m.divides(m)) return &g;
  }
  return nullptr;
}

// Full reduction for well-orders.
TermVec reduce_global(TermVec h, const std::vector<TermVec>& basis, const MonomialOrder& ord,
                      StepBudget& budget) {
  TermVec rem;
  while (!h.empty()) {
    const TermVec* g = find_reducer(h.front().m, basis);
    if (g == nullptr) {
      rem.push_back(h.front());
      h.erase(h.begin());
      continue;
    }
    budget.tick();
    h = sub_mul(h, h.front().c / g->front().c, h.front().m / g->front().m, *g, ord);
  }
  return rem;
}

// Mora's weak normal form with ecart control.
TermVec reduce_mora(TermVec h, const std::vector<TermVec>& basis, const MonomialOrder& ord,
                    StepBudget& budget) {
  std::vector<TermVec> extra;
  std::vector<unsigned> basis_ecart;
  basis_ecart.reserve(basis.size());
  for (const auto& g : basis) basis_ecart.push_back(ecart(g));
  std::vector<unsigned> extra_ecart;
  while (!h.empty()) {
    const Monomial& lm = h.front().m;
    const TermVec* best = nullptr;
    unsigned best_ecart = 0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].front().m.divides(lm) && (best == nullptr || basis_ecart[k] < best_ecart)) {
        best = &basis[k];
        best_ecart = basis_ecart[k];
      }
    }
    for (std::size_t k = 0; k < extra.size(); ++k) {
      if (extra[k].front().m.divides(lm) && (best == nullptr || extra_ecart[k] < best_ecart)) {
        best = &extra[k];
        best_ecart = extra_ecart[k];
      }
    }
    if (best == nullptr) break;
    budget.tick();
    unsigned eh = ecart(h);
    TermVec g = *best;
    if (best_ecart > eh) {
      extra.push_back(h);
      extra_ecart.push_back(eh);
    }
    h = sub_mul(h, h.front().c / g.front().c, lm / g.front().m, g, ord);
  }
  return h;
}

// Full reduction in the local ring when every monomial of degree above
// `cutoff` lies in the ideal; such terms are dropped as they appear.
TermVec reduce_truncated(TermVec h, const std::vector<TermVec>& basis, const MonomialOrder& ord,
                         unsigned cutoff, StepBudget& budget) {
  auto drop_high = [cutoff](TermVec& v) {
    v.erase(std::remove_if(v.begin(), v.end(), [cutoff](const Term& t) { return t.m.degree() > cutoff; }),
            v.end());
  };
  drop_high(h);
  TermVec rem;
  while (!h.empty()) {
    const TermVec* g = find_reducer(h.front().m, basis);
    if (g == nullptr) {
      rem.push_back(h.front());
      h.erase(h.begin());
      continue;
    }
    budget.tick();
    h = sub_mul(h, h.front().c / g->front().c, h.front().m / g->front().m, *g, ord);
    drop_high(h);
  }
  return rem;
}

// Largest degree of a monomial outside the leading ideal, when the
// leading ideal has finite colength.
std::optional<unsigned> highest_standard_degree(const std::vector<TermVec>& basis, std::size_t n) {
  std::vector<Monomial> leads;
  for (const auto& g : basis) leads.push_back(g.front().m);
  for (const auto& m : leads) {
    if (m.is_one()) return 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (const auto& m : leads) {
      if (m.support() == std::vector<std::size_t>{i}) found = true;
    }
    if (!found) return std::nullopt;
  }
  unsigned best = 0;
  Monomial cur(n);
  // Standard monomials are closed under division, so a depth-first walk
  // that stops at leading-ideal members visits exactly them.
  auto in_leading = [&](const Monomial& m) {
    return std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  std::vector<std::pair<Monomial, std::size_t>> stack{{cur, 0}};
  while (!stack.empty()) {
    auto [m, from] = stack.back();
    stack.pop_back();
    best = std::max(best, m.degree());
    for (std::size_t i = from; i < n; ++i) {
      Monomial next = m;
      next.set(i, m[i] + 1);
      if (!in_leading(next)) stack.push_back({next, i});
    }
  }
  return best;
}

std::vector<TermVec> minimalize(std::vector<TermVec> g, const MonomialOrder& ord) {
  std::sort(g.begin(), g.end(), [&](const TermVec& a, const TermVec& b) {
    return ord.compare(a.front().m, b.front().m) < 0;
  });
  std::vector<TermVec> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Monomial& m = g[i].front().m;
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (j == i || !g[j].front().m.divides(m)) continue;
      redundant = g[j].front().m != m || j < i;
    }
    if (!redundant) out.push_back(g[i]);
  }
  return out;
}

std::vector<TermVec> buchberger(std::vector<TermVec> basis, const MonomialOrder& ord,
                                StepBudget& budget) {
  using Pair = std::pair<std::size_t, std::size_t>;
  std::set<Pair> pending;
  auto pair_key = [&](const Pair& p) {
    Monomial l = Monomial::lcm(basis[p.first].front().m, basis[p.second].front().m);
    return std::make_tuple(l.degree(), p.second, p.first);
  };
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});
  }
  while (!pending.empty()) {
    auto it = std::min_element(pending.begin(), pending.end(),
                               [&](const Pair& a, const Pair& b) { return pair_key(a) < pair_key(b); });
    Pair p = *it;
    pending.erase(it);
    const Monomial& mi = basis[p.first].front().m;
    const Monomial& mj = basis[p.second].front().m;
    if (mi.coprime(mj)) continue;
    Monomial l = Monomial::lcm(mi, mj);
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == p.first || k == p.second) continue;
      if (!basis[k].front().m.divides(l)) continue;
      Pair a{std::min(k, p.first), std::max(k, p.first)};
      Pair b{std::min(k, p.second), std::max(k, p.second)};
      chain = pending.count(a) == 0 && pending.count(b) == 0;
    }
    if (chain) continue;
    budget.tick();
    TermVec h = reduce_global(s_poly(basis[p.first], basis[p.second], ord), basis, ord, budget);
    if (h.empty()) continue;
    make_monic(h);
    basis.push_back(std::move(h));
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) pending.insert({i, basis.size() - 1});
  }
  std::vector<TermVec> minimal = minimalize(std::move(basis), ord);
  std::vector<TermVec> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<TermVec> others;
    for (std::size_t q = 0; q < minimal.size(); ++q) {
      if (q != k) others.push_back(minimal[q]);
    }
    TermVec tail(minimal[k].begin() + 1, minimal[k].end());
    TermVec r = reduce_global(std::move(tail), others, ord, budget);
    r.insert(r.begin(), minimal[k].front());
    reduced.push_back(std::move(r));
  }
  return reduced;
}

std::vector<TermVec> mora(std::vector<TermVec> basis, const MonomialOrder& ord, StepBudget& budget) {
  using Pair = std::pair<std::size_t, std::size_t>;
  std::set<Pair> pending;
  auto pair_key = [&](const Pair& p) {
    Monomial l = Monomial::lcm(basis[p.first].front().m, basis[p.second].front().m);
    return std::make_tuple(l.degree(), p.second, p.first);
  };
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});
  }
  while (!pending.empty()) {
    auto it = std::min_element(pending.begin(), pending.end(),
                               [&](const Pair& a, const Pair& b) { return pair_key(a) < pair_key(b); });
    Pair p = *it;
    pending.erase(it);
    budget.tick();
    TermVec h = reduce_mora(s_poly(basis[p.first], basis[p.second], ord), basis, ord, budget);
    if (h.empty()) continue;
    make_monic(h);
    bool unit = h.front().m.is_one();
    basis.push_back(std::move(h));
    if (unit) break;
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) pending.insert({i, basis.size() - 1});
  }
  return minimalize(std::move(basis), ord);
}

// Standard basis of I + m^cutoff+1 with every term above `cutoff` dropped.
std::vector<TermVec> truncated_basis(std::vector<TermVec> basis, const MonomialOrder& ord,
                                     unsigned cutoff, StepBudget& budget) {
  std::vector<TermVec> kept;
  for (auto& g : basis) {
    TermVec r = reduce_truncated(std::move(g), kept, ord, cutoff, budget);
    if (r.empty()) continue;
    make_monic(r);
    kept.push_back(std::move(r));
  }
  basis = std::move(kept);
  std::vector<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pending.emplace_back(i, j);
  }
  while (!pending.empty()) {
    auto [i, j] = pending.back();
    pending.pop_back();
    budget.tick();
    TermVec s = s_poly(basis[i], basis[j], ord);
    TermVec h = reduce_truncated(std::move(s), basis, ord, cutoff, budget);
    if (h.empty()) continue;
    make_monic(h);
    bool unit = h.front().m.is_one();
    basis.push_back(std::move(h));
    if (unit) break;
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pending.emplace_back(k, basis.size() - 1);
  }
  return minimalize(std::move(basis), ord);
}

std::size_t monomials_below(std::size_t n, unsigned degree) {
  // C(n + degree, n), saturating.
  std::size_t c = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    c = c * (degree + i) / i;
    if (c > (std::size_t{1} << 40)) return c;
  }
  return c;
}

bool covers_degree(const std::vector<TermVec>& basis, std::size_t n, unsigned degree) {
  if (n == 0) return true;
  bool ok = true;
  Monomial cur(n);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (!ok) return;
    if (i + 1 == n) {
      cur.set(i, left);
      ok = std::any_of(basis.begin(), basis.end(), [&](const TermVec& g) { return g.front().m.divides(cur); });
      return;
    }
    for (unsigned e = 0; e <= left && ok; ++e) {
      cur.set(i, e);
      self(self, i + 1, left - e);
    }
    cur.set(i, 0);
  };
  rec(rec, 0, degree);
  return ok;
}

// Finite colength route: when every monomial of degree k lies in the
// leading ideal of I + m^(k+1), Nakayama gives m^k in I and the truncated
// basis is a standard basis of I.
std::optional<std::vector<TermVec>> finite_colength_basis(const std::vector<TermVec>& start,
                                                          const MonomialOrder& ord, std::size_t n,
                                                          StepBudget& budget) {
  constexpr std::size_t kMonomialCap = 6000;
  for (unsigned k = 2; monomials_below(n, k) <= kMonomialCap; k *= 2) {
    std::vector<TermVec> b = truncated_basis(start, ord, k, budget);
    if (std::any_of(b.begin(), b.end(), [](const TermVec& g) { return g.front().m.is_one(); })) return b;
    if (covers_degree(b, n, k)) return b;
  }
  return std::nullopt;
}

}  // namespace

Monomial leading_monomial(const Poly& p, const MonomialOrder& ord) {
  if (p.is_zero()) throw Error(ErrorCode::OutOfRange, "leading monomial of zero");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : p.terms()) {
    if (best == nullptr || ord.compare(m, *best) > 0) best = &m;
  }
  return *best;
}

std::vector<std::pair<Monomial, Rational>> ordered_terms(const Poly& p, const MonomialOrder& ord) {
  std::vector<std::pair<Monomial, Rational>> out;
  for (const auto& t : to_terms(p, ord)) out.emplace_back(t.m, t.c);
  return out;
}

std::vector<Poly> compute_standard_basis(const std::vector<Poly>& generators,
                                         const MonomialOrder& ord, const Limits& limits) {
  if (generators.empty()) return {};
  RingPtr ring = generators.front().ring();
  std::vector<TermVec> start;
  for (const auto& g : generators) {
    require_same_ring(ring, g.ring(), "standard_basis");
    if (g.is_zero()) continue;
    TermVec v = to_terms(g, ord);
    make_monic(v);
    start.push_back(std::move(v));
  }
  StepBudget budget(limits.max_steps);
  std::vector<TermVec> result;
  if (!ord.is_local()) {
    result = buchberger(std::move(start), ord, budget);
  } else if (auto fin = finite_colength_basis(start, ord, ring->size(), budget)) {
    result = std::move(*fin);
  } else {
    result = mora(std::move(start), ord, budget);
  }
  std::vector<Poly> out;
  for (auto& v : result) {
    make_monic(v);
    out.push_back(to_poly(ring, v));
  }
  return out;
}

std::vector<Poly> mora_standard_basis(const std::vector<Poly>& generators, const Limits& limits) {
  if (generators.empty()) return {};
  RingPtr ring = generators.front().ring();
  MonomialOrder ord = MonomialOrder::local(ring->size());
  std::vector<TermVec> start;
  for (const auto& g : generators) {
    require_same_ring(ring, g.ring(), "standard_basis");
    if (g.is_zero()) continue;
    TermVec v = to_terms(g, ord);
    make_monic(v);
    start.push_back(std::move(v));
  }
  StepBudget budget(limits.max_steps);
  std::vector<Poly> out;
  for (auto& v : mora(std::move(start), ord, budget)) {
    make_monic(v);
    out.push_back(to_poly(ring, v));
  }
  return out;
}

Poly reduce(const Poly& p, const std::vector<Poly>& standard, const MonomialOrder& ord,
            const Limits& limits) {
  std::vector<TermVec> basis;
  for (const auto& g : standard) {
    require_same_ring(p.ring(), g.ring(), "normal_form");
    if (!g.is_zero()) basis.push_back(to_terms(g, ord));
  }
  StepBudget budget(limits.max_steps);
  TermVec h = to_terms(p, ord);
  TermVec r;
  if (!ord.is_local()) {
    r = reduce_global(std::move(h), basis, ord, budget);
  } else if (auto cutoff = highest_standard_degree(basis, p.nvars())) {
    r = reduce_truncated(std::move(h), basis, ord, *cutoff, budget);
  } else {
    r = reduce_mora(std::move(h), basis, ord, budget);
  }
  return to_poly(p.ring(), r);
}

}  // namespace germ
