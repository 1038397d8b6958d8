// Independent reference computations used only by the tests. None of
// these route through the standard-basis kernel.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "germkit/poly.hpp"

namespace oracle {

using Exps = std::vector<unsigned>;

inline bool divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

// Number of monomials inside the box [0, bound) outside the monomial ideal
// generated by `gens`. Callers pick the box large enough to contain the
// whole staircase.
inline std::size_t monomial_quotient_size(const std::vector<Exps>& gens, const Exps& bound) {
  std::size_t count = 0;
  Exps cur(bound.size(), 0);
  for (;;) {
    bool inside = std::any_of(gens.begin(), gens.end(), [&](const Exps& g) { return divides(g, cur); });
    if (!inside) ++count;
    std::size_t i = 0;
    while (i < cur.size() && ++cur[i] == bound[i]) cur[i++] = 0;
    if (i == cur.size()) return count;
  }
}

inline long brieskorn_mu(std::initializer_list<long> exps) {
  long mu = 1;
  for (long a : exps) mu *= (a - 1);
  return mu;
}

// Milnor number of a reduced homogeneous plane curve of degree d.
inline long homogeneous_plane_mu(long d) { return (d - 1) * (d - 1); }

inline long thom_sebastiani(long mu_h, long n) { return mu_h * (n - 1); }

// All monomials in nvars variables of degree < D.
inline std::vector<Exps> monomials_below(std::size_t nvars, unsigned D) {
  std::vector<Exps> out;
  Exps cur(nvars, 0);
  for (;;) {
    unsigned deg = 0;
    for (unsigned e : cur) deg += e;
    if (deg < D) out.push_back(cur);
    std::size_t i = 0;
    while (i < nvars && ++cur[i] == D) cur[i++] = 0;
    if (i == nvars) return out;
  }
}

inline std::size_t rank_rational(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rank = 0;
  std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      mpq_class f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

// dim of k[z] / (I + m^D) by linear algebra on monomials of degree < D.
// For an ideal of finite colength at the origin this equals the local
// colength once D is large enough.
inline std::size_t truncated_colength(const std::vector<germ::Poly>& gens, std::size_t nvars, unsigned D) {
  auto basis = monomials_below(nvars, D);
  auto index_of = [&](const Exps& e) -> long {
    auto it = std::find(basis.begin(), basis.end(), e);
    return it == basis.end() ? -1 : static_cast<long>(it - basis.begin());
  };
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& g : gens) {
    for (const auto& mult : basis) {
      std::vector<mpq_class> row(basis.size());
      bool any = false;
      for (const auto& [m, c] : g.terms()) {
        Exps e(nvars);
        unsigned deg = 0;
        for (std::size_t i = 0; i < nvars; ++i) {
          e[i] = m[i] + mult[i];
          deg += e[i];
        }
        if (deg >= D) continue;
        row[static_cast<std::size_t>(index_of(e))] += c;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  return basis.size() - rank_rational(std::move(rows));
}

// Small random polynomials for property tests.
class PolyGen {
 public:
  PolyGen(germ::RingPtr ring, std::uint32_t seed) : ring_(std::move(ring)), rng_(seed) {}

  germ::Poly next(unsigned max_terms = 4, unsigned max_exp = 3, int coeff_span = 5) {
    std::uniform_int_distribution<unsigned> nterms(1, max_terms);
    std::uniform_int_distribution<unsigned> ex(0, max_exp);
    std::uniform_int_distribution<int> co(-coeff_span, coeff_span);
    germ::Poly p(ring_);
    unsigned n = nterms(rng_);
    for (unsigned k = 0; k < n; ++k) {
      germ::Monomial m(ring_->size());
      for (std::size_t i = 0; i < ring_->size(); ++i) m.set(i, ex(rng_));
      p.add_term(m, co(rng_));
    }
    return p;
  }

  germ::Poly next_at_origin(unsigned max_terms = 4, unsigned max_exp = 3) {
    germ::Poly p = next(max_terms, max_exp);
    return p - germ::Poly::constant(ring_, p.constant_term());
  }

  std::mt19937& rng() { return rng_; }

 private:
  germ::RingPtr ring_;
  std::mt19937 rng_;
};

}  // namespace oracle

#include "germkit/parse.hpp"

namespace oracle {

// Order in t of f(b(t)) by substituting polynomials in t and reading off
// the lowest degree; -1 when the composition vanishes.
inline int order_by_substitution(const germ::Poly& f, const std::vector<std::string>& comps) {
  auto t = germ::make_ring({"t"});
  std::vector<germ::Poly> images;
  for (const auto& c : comps) images.push_back(germ::parse_poly(c, t));
  return f.substitute(images).lowest_degree();
}

}  // namespace oracle
