#include "germkit/local_invariants.hpp"

#include "germkit/parse.hpp"

namespace germ {

std::size_t milnor_number(const Poly& g, const Limits& limits) {
  Ideal jac = jacobian_ideal(g);
  auto dim = dim_at_origin(jac, limits);
  if (dim && *dim > 0) {
    throw Error(ErrorCode::Nonisolated, "critical locus of " + print_poly(g) + " has dimension " +
                                            std::to_string(*dim) + " at the origin");
  }
  auto mu = quotient_dim_local(jac, limits);
  if (!mu) throw Error(ErrorCode::Nonisolated, "Jacobian quotient of " + print_poly(g) + " is infinite");
  return *mu;
}

CriticalLocus critical_locus(const Poly& g, const std::optional<Poly>& f, const Limits& limits) {
  CriticalLocus out{jacobian_ideal(g), std::nullopt, std::nullopt};
  out.dim = dim_at_origin(out.jacobian, limits);
  if (f) {
    auto d = dim_at_origin(ideal_sum(out.jacobian, Ideal(g.ring(), {*f})), limits);
    out.meets_f_only_at_origin = !d || *d == 0;
  }
  return out;
}

std::vector<Poly> restrict_to_subspace(std::vector<Poly> polys, std::vector<Poly> forms) {
  if (polys.empty()) return polys;
  for (const auto& l : forms) {
    require_same_ring(polys.front().ring(), l.ring(), "restrict_to_subspace");
    if (!l.is_linear_form()) {
      throw Error(ErrorCode::NonlinearSlice, "slice form " + print_poly(l) + " is not a linear form");
    }
  }
  for (std::size_t f = 0; f < forms.size(); ++f) {
    const Poly& l = forms[f];
    const RingPtr& ring = polys.front().ring();
    const std::size_t v = ring->size();
    auto coeff_of = [&](std::size_t i) {
      Monomial m(v);
      m.set(i, 1);
      return l.coeff(m);
    };
    std::size_t k = 0;
    while (k < v && coeff_of(k) == 0) ++k;
    if (k == v) throw Error(ErrorCode::Degenerate, "slice forms are linearly dependent");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < v; ++i) {
      if (i != k) names.push_back(ring->name(i));
    }
    RingPtr sub = make_ring(names);
    Rational ck = coeff_of(k);
    std::vector<Poly> images;
    Poly zk(sub);
    for (std::size_t i = 0, j = 0; i < v; ++i) {
      if (i == k) {
        images.push_back(Poly(sub));
        continue;
      }
      zk -= Poly::variable(sub, j).scaled(coeff_of(i) / ck);
      images.push_back(Poly::variable(sub, j++));
    }
    images[k] = zk;
    for (auto& p : polys) p = p.substitute(images);
    for (std::size_t r = f + 1; r < forms.size(); ++r) forms[r] = forms[r].substitute(images);
  }
  return polys;
}

std::size_t restricted_milnor(const Poly& g, std::vector<Poly> forms, const std::vector<Rational>& p,
                              const Limits& limits) {
  // Translated, each slice is l(z) = 0.
  Poly h = g.translate(p);
  h -= Poly::constant(h.ring(), h.constant_term());
  return milnor_number(restrict_to_subspace({h}, std::move(forms)).front(), limits);
}

std::size_t slice_milnor_linear(const Poly& g, const Poly& l, const std::vector<Rational>& p,
                                const Limits& limits) {
  require_same_ring(g.ring(), l.ring(), "slice_milnor_linear");
  return restricted_milnor(g, {l}, p, limits);
}

std::size_t slice_milnor_minors(const Poly& g, const Poly& f, const std::vector<Rational>& p,
                                const Limits& limits) {
  Poly gp = g.translate(p);
  Poly fp = f.translate(p);
  fp -= Poly::constant(fp.ring(), fp.constant_term());
  bool smooth = false;
  for (const auto& d : gradient(fp)) smooth = smooth || d.constant_term() != 0;
  if (!smooth) throw Error(ErrorCode::Degenerate, "slice form is singular at the branch point");
  std::vector<Poly> gens{fp};
  for (auto& m : jacobian_minors(fp, gp)) gens.push_back(std::move(m));
  Ideal J(g.ring(), gens);
  auto dim = dim_at_origin(J, limits);
  if (dim && *dim > 0) throw Error(ErrorCode::Nonisolated, "slice germ has a non-isolated singularity");
  auto mu = quotient_dim_local(J, limits);
  if (!mu) throw Error(ErrorCode::Nonisolated, "slice Jacobian quotient is infinite");
  return *mu;
}

namespace {

bool on_host(const Ideal& host, const std::vector<Rational>& p) {
  for (const auto& gen : host.generators()) {
    if (gen.evaluate(p) != 0) return false;
  }
  return true;
}

}  // namespace

SliceMilnor branch_slice_milnor(const Poly& g, const Poly& f, const BranchParam& b, const Ideal& host,
                                const Limits& limits) {
  require_same_ring(g.ring(), f.ring(), "branch_slice_milnor");
  validate_branch(b, host);
  const bool linear = f.is_linear_form();
  // Returns nullopt when the rung gives delta = 0.
  auto at = [&](const Rational& tau) -> std::optional<SliceMilnor> {
    std::vector<Rational> p = branch_point(b, tau);
    if (!on_host(host, p)) {
      throw Error(ErrorCode::InexactBranchPoint,
                  "branch '" + b.name + "' at t = " + to_string(tau) + " is not on its host ideal");
    }
    Rational delta = f.evaluate(p);
    if (delta == 0) return std::nullopt;
    std::size_t mu = linear ? slice_milnor_linear(g, f, p, limits) : slice_milnor_minors(g, f, p, limits);
    return SliceMilnor{mu, tau, delta};
  };
  Rational tau(1, 2);
  bool saw_nonzero_delta = false;
  for (unsigned rung = 0; rung < limits.tau_ladder; ++rung, tau /= 2) {
    auto here = at(tau);
    if (!here) continue;
    saw_nonzero_delta = true;
    auto half = at(tau / 2);
    if (half && half->mu == here->mu) return *here;
  }
  if (!saw_nonzero_delta) {
    throw Error(ErrorCode::Degenerate, "slice value f(b(tau)) is 0 on every rung for branch '" + b.name + "'");
  }
  throw Error(ErrorCode::Instability,
              "slice Milnor number along branch '" + b.name + "' did not stabilize on the tau ladder");
}

}  // namespace germ
