#include "germkit/polar.hpp"

#include <algorithm>

#include "germkit/parse.hpp"

namespace germ {

PolarCurve relative_polar_ideal(const Poly& f, const Poly& g, std::vector<BranchParam> components,
                                const Limits& limits) {
  require_same_ring(f.ring(), g.ring(), "relative_polar_ideal");
  Ideal minors(g.ring(), jacobian_minors(f, g));
  Ideal off_sigma = saturate(minors, jacobian_ideal(g), limits);
  Ideal curve = saturate(off_sigma, Ideal(g.ring(), {f * g}), limits);
  PolarCurve out{curve, dim_at_origin(curve, limits), std::move(components)};
  for (const auto& b : out.components) validate_branch(b, out.ideal);
  return out;
}

std::size_t intersection_number(const Ideal& C, const Poly& h, const Limits& limits) {
  Ideal J = ideal_sum(C, Ideal(C.ring(), {h}));
  auto dim = dim_at_origin(J, limits);
  if (dim && *dim > 0) {
    throw Error(ErrorCode::Improper, "intersection with V(" + print_poly(h) + ") has dimension " +
                                         std::to_string(*dim));
  }
  return quotient_dim_local(J, limits).value_or(0);
}

std::string_view gap_status_name(GapStatus s) {
  switch (s) {
    case GapStatus::Empty: return "EMPTY";
    case GapStatus::Exact: return "EXACT";
    case GapStatus::Mismatch: return "MISMATCH";
    case GapStatus::Bound: return "BOUND";
  }
  return "UNKNOWN";
}

GapReport gap_ratios(const Poly& f, const Poly& g, const PolarCurve& C, const Limits& limits) {
  GapReport report;
  if (C.empty()) return report;
  std::size_t weighted = 0;
  for (const auto& b : C.components) {
    ComponentRatio r{b.name, local_degree(g, b, limits), local_degree(f, b, limits), b.multiplicity, 0};
    r.ratio = Rational(r.ord_g, r.ord_f);
    weighted += static_cast<std::size_t>(r.multiplicity) * r.ord_g;
    if (!report.exact_max || r.ratio > *report.exact_max) report.exact_max = r.ratio;
    report.ratios.push_back(std::move(r));
  }
  report.g_intersection = intersection_number(C.ideal, g, limits);
  report.sound_bound = static_cast<unsigned>(*report.g_intersection) + 1;
  if (C.components.empty()) {
    report.status = GapStatus::Bound;
  } else if (weighted == *report.g_intersection) {
    report.status = GapStatus::Exact;
  } else {
    report.status = GapStatus::Mismatch;
  }
  report.sound_bound = std::max(report.sound_bound, 2U);
  return report;
}

unsigned iomdin_threshold(const GapReport& report) {
  unsigned n = report.sound_bound;
  if (report.status == GapStatus::Exact && report.exact_max) {
    mpz_class fl = report.exact_max->get_num() / report.exact_max->get_den();
    n = static_cast<unsigned>(fl.get_ui()) + 1;
  } else if (report.status == GapStatus::Empty) {
    n = 2;
  }
  return std::max(n, 2U);
}

namespace {

// Smallest k <= cap with p^k in I locally, or 0 if none.
unsigned local_power_membership(const Poly& p, const Ideal& I, unsigned cap, const Limits& limits) {
  Poly power = p;
  for (unsigned k = 1; k <= cap; ++k) {
    if (I.contains_locally(power, limits)) return k;
    power *= p;
  }
  return 0;
}

}  // namespace

PolarDecomposition verify_polar_decomposition(const Poly& f, const Poly& g, unsigned N,
                                              const PolarCurve& undeformed,
                                              const std::vector<BranchParam>& sigma_branches,
                                              const Limits& limits) {
  if (N < 2) throw Error(ErrorCode::OutOfRange, "N must be at least 2");
  Poly gt = g + f.pow(N);
  PolarDecomposition out{false, N, "", 0, relative_polar_ideal(f, gt, {}, limits)};
  Ideal product = ideal_product(jacobian_ideal(g), undeformed.ideal);
  out.pass = true;
  auto check = [&](const Ideal& from, const Ideal& into, const char* label) {
    for (const auto& p : from.generators()) {
      if (p.is_zero()) continue;
      unsigned k = local_power_membership(p, into, limits.power_cap, limits);
      if (k == 0) {
        out.pass = false;
        out.witness = std::string(label) + ": no power up to " + std::to_string(limits.power_cap) + " of " +
                      print_poly(p) + " lies in the other side";
        return false;
      }
      out.max_power = std::max(out.max_power, k);
    }
    return true;
  };
  if (!check(product, out.deformed.ideal, "Jac(g)*polar(f,g) -> polar(f,g~)")) return out;
  if (!check(out.deformed.ideal, product, "polar(f,g~) -> Jac(g)*polar(f,g)")) return out;
  auto components = undeformed.components;
  components.insert(components.end(), sigma_branches.begin(), sigma_branches.end());
  for (const auto& b : components) {
    try {
      validate_branch(b, out.deformed.ideal);
    } catch (const Error& e) {
      out.pass = false;
      out.witness = "component '" + b.name + "' is not on polar(f,g~): " + e.detail();
      return out;
    }
  }
  return out;
}

}  // namespace germ
