#include "germkit/le_engine.hpp"

#include <algorithm>
#include <numeric>

#include "germkit/local_invariants.hpp"
#include "germkit/parse.hpp"

namespace germ {
namespace {

long sign(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

// g in coordinates w with w_0 = l and w_j the remaining variables, in the
// given order.
struct Adapted {
  Poly G;
  std::vector<std::size_t> coords;
};

Adapted adapt(const Poly& g, const Poly& l, const std::vector<std::size_t>& rest, std::size_t k) {
  const RingPtr& ring = g.ring();
  const std::size_t v = g.nvars();
  std::vector<std::string> names;
  Monomial mk(v);
  mk.set(k, 1);
  bool l_is_coordinate = l.size() == 1;
  names.push_back(l_is_coordinate ? ring->name(k) : "_l");
  for (std::size_t i : rest) names.push_back(ring->name(i));
  RingPtr w = make_ring(names);
  std::vector<Poly> images(v, Poly(w));
  Rational ck = l.coeff(mk);
  Poly zk = Poly::variable(w, 0).scaled(1 / ck);
  for (std::size_t j = 0; j < rest.size(); ++j) {
    Monomial mi(v);
    mi.set(rest[j], 1);
    images[rest[j]] = Poly::variable(w, j + 1);
    zk -= Poly::variable(w, j + 1).scaled(l.coeff(mi) / ck);
  }
  images[k] = zk;
  std::vector<std::size_t> coords{k};
  coords.insert(coords.end(), rest.begin(), rest.end());
  return {g.substitute(images), coords};
}

Ideal partials_from(const Poly& G, std::size_t first) {
  std::vector<Poly> gens;
  for (std::size_t i = first; i < G.nvars(); ++i) gens.push_back(G.derivative(i));
  return Ideal(G.ring(), gens);
}

std::optional<std::size_t> cycle_lambda1(const Poly& G, const Ideal& gamma1, const Ideal& jac,
                                         const Limits& limits) {
  const RingPtr& w = G.ring();
  Ideal gamma2 = G.nvars() > 2 ? saturate(partials_from(G, 2), jac, limits) : Ideal::zero(w);
  Ideal meet = ideal_sum(gamma2, Ideal(w, {G.derivative(1)}));
  Ideal off_gamma1 = saturate(meet, gamma1, limits);
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < G.nvars(); ++i) vars.push_back(Poly::variable(w, i));
  Ideal lambda1 = saturate(off_gamma1, Ideal(w, vars), limits);
  Ideal cut = ideal_sum(lambda1, Ideal(w, {Poly::variable(w, 0)}));
  auto dim = dim_at_origin(cut, limits);
  if (dim && *dim > 0) return std::nullopt;
  return quotient_dim_local(cut, limits).value_or(0);
}

}  // namespace

Poly generic_linear_form(const RingPtr& ring, unsigned rung) {
  Poly l(ring);
  mpz_class base = rung + 1;
  mpz_class power = 1;
  for (std::size_t i = 0; i < ring->size(); ++i) {
    l += Poly::variable(ring, i).scaled(Rational(power + static_cast<unsigned long>(i)));
    power *= base;
  }
  return l;
}

LeData le_numbers(const Poly& g, const Poly& l, const std::vector<BranchParam>& branches,
                  const Limits& limits) {
  require_same_ring(g.ring(), l.ring(), "le_numbers");
  if (!l.is_linear_form()) throw Error(ErrorCode::NonlinearSlice, "l = " + print_poly(l) + " is not linear");
  LeData out;
  Ideal jac = jacobian_ideal(g);
  auto sigma_dim = dim_at_origin(jac, limits);
  if (sigma_dim && *sigma_dim > 1) {
    throw Error(ErrorCode::UndefinedLe, "critical locus has dimension " + std::to_string(*sigma_dim) +
                                            "; only dimension at most 1 is supported");
  }
  const std::size_t v = g.nvars();
  std::size_t k = 0;
  for (; k < v; ++k) {
    Monomial m(v);
    m.set(k, 1);
    if (l.coeff(m) != 0) break;
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < v; ++i) {
    if (i != k) rest.push_back(i);
  }
  Adapted a = adapt(g, l, rest, k);
  out.coords = a.coords;

  if (!sigma_dim || *sigma_dim == 0) {
    out.isolated = true;
    out.lambda0 = sigma_dim ? milnor_number(g, limits) : 0;
    out.lambda1 = 0;
    out.route_log.push_back("isolated: lambda0 = mu = dim O/Jac(g), lambda1 = 0");
    return out;
  }

  Ideal jacG = jacobian_ideal(a.G);
  Ideal gamma1 = saturate(partials_from(a.G, 1), jacG, limits);
  Ideal cut0 = ideal_sum(gamma1, Ideal(a.G.ring(), {a.G.derivative(0)}));
  auto d0 = dim_at_origin(cut0, limits);
  if (d0 && *d0 > 0) {
    throw Error(ErrorCode::UndefinedLe, "polar curve meets V(dg/dl) in dimension " + std::to_string(*d0) +
                                            " for l = " + print_poly(l));
  }
  out.lambda0 = quotient_dim_local(cut0, limits).value_or(0);
  out.route_log.push_back("lambda0 = ([Gamma1].[V(dg/dz0)]) with Gamma1 = (dg/dz1..) : Jac(g)^inf");

  // The Λ¹ cycle depends on which complementary coordinate comes first;
  // try them in order until the intersection with V(z0) is proper.
  std::vector<std::size_t> order = rest;
  do {
    Adapted b = order == rest ? a : adapt(g, l, order, k);
    Ideal g1 = order == rest ? gamma1 : saturate(partials_from(b.G, 1), jacobian_ideal(b.G), limits);
    out.lambda1_cycle = cycle_lambda1(b.G, g1, jacobian_ideal(b.G), limits);
  } while (!out.lambda1_cycle && std::next_permutation(order.begin(), order.end()));

  if (!branches.empty()) {
    std::size_t sum = 0;
    for (const auto& b : branches) {
      validate_branch(b, jac);
      unsigned m = local_degree(l, b, limits);
      std::size_t mu = branch_slice_milnor(g, l, b, jac, limits).mu;
      out.branch_terms.push_back({b.name, m, mu});
      sum += static_cast<std::size_t>(m) * mu;
    }
    out.lambda1_branches = sum;
    out.lambda1 = sum;
    out.route_log.push_back("lambda1 = sum over branches of m_{l,b} * mu(slice germ)");
    if (out.lambda1_cycle && *out.lambda1_cycle != sum) {
      throw Error(ErrorCode::Violation, "branch formula gives lambda1 = " + std::to_string(sum) +
                                            " but the Lambda1 cycle gives " + std::to_string(*out.lambda1_cycle) +
                                            "; the branch table is incomplete or wrong");
    }
    if (out.lambda1_cycle) out.route_log.push_back("lambda1 cross-checked against the Lambda1 cycle");
  } else if (out.lambda1_cycle) {
    out.lambda1 = *out.lambda1_cycle;
    out.route_log.push_back("lambda1 = ([Lambda1].[V(z0)]), no branches supplied");
  } else {
    throw Error(ErrorCode::UndefinedLe, "no branches supplied and the Lambda1 cycle meets V(l) improperly");
  }
  return out;
}

long euler_char_fibre(std::size_t v, const LeData& le) {
  return 1 + sign(v - 1) * static_cast<long>(le.lambda0) + sign(v - 2) * static_cast<long>(le.lambda1);
}

}  // namespace germ
