#include "germkit/branch.hpp"

#include <algorithm>

#include "germkit/parse.hpp"

namespace germ {

std::optional<unsigned> series_order(const UniPoly& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0) return static_cast<unsigned>(i);
  }
  return std::nullopt;
}

UniPoly series_mul(const UniPoly& a, const UniPoly& b, unsigned K) {
  UniPoly out(std::min<std::size_t>(K, a.size() + b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size() && i < K; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < K; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

UniPoly series_compose(const UniPoly& a, const UniPoly& b, unsigned K) {
  UniPoly out(K, Rational(0));
  UniPoly power{Rational(1)};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) power = series_mul(power, b, K);
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < power.size() && j < K; ++j) out[j] += a[i] * power[j];
  }
  return out;
}

unsigned BranchParam::max_degree() const {
  unsigned d = 0;
  for (const auto& c : components) d = std::max<unsigned>(d, c.empty() ? 0 : c.size() - 1);
  return d;
}

BranchParam make_branch(std::string name, const std::vector<std::string>& components,
                        std::optional<unsigned> trunc, bool exact) {
  static const RingPtr t_ring = make_ring({"t"});
  BranchParam b;
  b.name = std::move(name);
  b.exact = exact;
  bool nonconstant = false;
  for (const auto& text : components) {
    Poly p = parse_poly(text, t_ring);
    if (p.constant_term() != 0) {
      throw Error(ErrorCode::Schema, "branch '" + b.name + "': component '" + text +
                                         "' does not vanish at t = 0");
    }
    UniPoly c(static_cast<std::size_t>(std::max(p.total_degree(), 0)) + 1, Rational(0));
    for (const auto& [m, q] : p.terms()) c[m[0]] = q;
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (!p.is_zero()) nonconstant = true;
    b.components.push_back(std::move(c));
  }
  if (!nonconstant) throw Error(ErrorCode::Schema, "branch '" + b.name + "' is the constant map to 0");
  b.trunc = trunc.value_or(b.max_degree() + 1);
  if (b.trunc == 0) throw Error(ErrorCode::Schema, "branch '" + b.name + "': truncation order must be positive");
  return b;
}

std::vector<std::string> branch_component_strings(const BranchParam& b) {
  static const RingPtr t_ring = make_ring({"t"});
  std::vector<std::string> out;
  for (const auto& c : b.components) {
    Poly p(t_ring);
    for (std::size_t i = 0; i < c.size(); ++i) p.add_term(Monomial{static_cast<unsigned>(i)}, c[i]);
    out.push_back(print_poly(p));
  }
  return out;
}

UniPoly compose(const Poly& p, const BranchParam& b, unsigned K) {
  if (p.nvars() != b.nvars()) {
    throw Error(ErrorCode::RingMismatch, "branch '" + b.name + "' has the wrong number of components");
  }
  std::vector<std::vector<UniPoly>> powers(b.nvars());
  auto power = [&](std::size_t i, unsigned e) -> const UniPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(UniPoly{Rational(1)});
    while (cache.size() <= e) cache.push_back(series_mul(cache.back(), b.components[i], K));
    return cache[e];
  };
  UniPoly out(K, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    UniPoly term{c};
    for (std::size_t i = 0; i < m.size() && !term.empty(); ++i) {
      if (m[i] != 0) term = series_mul(term, power(i, m[i]), K);
    }
    for (std::size_t j = 0; j < term.size() && j < K; ++j) out[j] += term[j];
  }
  return out;
}

UniPoly compose_exact(const Poly& p, const BranchParam& b) {
  unsigned bound = static_cast<unsigned>(std::max(p.total_degree(), 0)) * std::max(b.max_degree(), 1U) + 1;
  return compose(p, b, bound);
}

std::vector<Rational> branch_point(const BranchParam& b, const Rational& tau) {
  std::vector<Rational> p;
  for (const auto& c : b.components) {
    Rational v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * tau + c[i];
    p.push_back(v);
  }
  return p;
}

BranchValidation validate_branch(const BranchParam& b, const Ideal& host) {
  BranchValidation report;
  const auto& gens = host.generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    UniPoly s = compose_exact(gens[k], b);
    auto ord = series_order(s);
    if (!ord) continue;
    if (b.exact || *ord < b.trunc) {
      throw Error(ErrorCode::Violation, "branch '" + b.name + "': generator " + std::to_string(k) + " (" +
                                            print_poly(gens[k]) + ") is nonzero at order t^" +
                                            std::to_string(*ord));
    }
    report.margin = report.margin ? std::min(*report.margin, *ord) : *ord;
  }
  return report;
}

unsigned local_degree(const Poly& f, const BranchParam& b, const Limits& limits) {
  unsigned K = b.trunc;
  for (;;) {
    auto ord = series_order(compose(f, b, K));
    if (ord) return *ord;
    if (!b.exact || K >= limits.trunc_cap) break;
    K = std::min(2 * K, limits.trunc_cap);
  }
  throw Error(ErrorCode::Degenerate, "f vanishes on branch '" + b.name + "' to order at least t^" +
                                         std::to_string(b.exact ? limits.trunc_cap : b.trunc));
}

}  // namespace germ
