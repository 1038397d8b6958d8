#include "germkit/stratified.hpp"

#include <algorithm>
#include <functional>

#include "germkit/iomdin.hpp"
#include "germkit/local_invariants.hpp"
#include "germkit/parse.hpp"

namespace germ {

namespace {

long sign(long k) { return k % 2 == 0 ? 1 : -1; }

bool is_inside(const StratumRecord& r, const std::string& fn) {
  return r.dim == 0 || std::find(r.inside.begin(), r.inside.end(), fn) != r.inside.end();
}

// Runs an identity; a missing input becomes a SKIPPED verdict.
struct Missing {
  std::string what;
};

Verdict guarded(const std::string& name, const std::function<Verdict()>& body) {
  try {
    return body();
  } catch (const Missing& m) {
    return skipped(name, m.what);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MissingSlice) return skipped(name, e.what());
    throw;
  }
}

long need(const std::optional<long>& v, const std::string& branch, const char* field) {
  if (!v) throw Missing{"branch '" + branch + "' has no " + field};
  return *v;
}

// Σ_j weight(b_j) over the Σ-branches; throws Missing when the table is empty
// or a field is absent.
long branch_sum(const Scenario& s, const std::function<long(const std::string&, const BranchData&)>& term) {
  auto sigma = s.branches_on(BranchHost::Sigma);
  long sum = 0;
  for (const auto& b : sigma) {
    auto it = s.branch_data.find(b.name);
    if (it == s.branch_data.end()) throw Missing{"branch '" + b.name + "' has no data"};
    sum += term(b.name, it->second);
  }
  return sum;
}

// dim O / (a, minors(a, b)) - μ(a): the Milnor number of the complete
// intersection {a = b = 0}.
long icis_mu(const Poly& a, const Poly& b, const Limits& limits) {
  std::vector<Poly> gens{a};
  for (auto& m : jacobian_minors(a, b)) gens.push_back(std::move(m));
  Ideal J(a.ring(), gens);
  auto dim = dim_at_origin(J, limits);
  if (dim && *dim > 0) {
    throw Error(ErrorCode::Nonisolated, "{" + print_poly(a) + " = " + print_poly(b) + " = 0} is not an isolated complete intersection");
  }
  long total = static_cast<long>(quotient_dim_local(J, limits).value_or(0));
  return total - static_cast<long>(milnor_number(a, limits));
}

// Iomdin threshold of the pair (f, g); in one variable the polar curve
// degenerates and the threshold is one more than floor(ord g / ord f).
unsigned deformation_threshold(const Poly& g, const Poly& f, const Limits& limits) {
  if (f.is_zero()) throw Error(ErrorCode::Degenerate, "f vanishes on the section");
  if (g.nvars() == 1) {
    if (g.is_zero()) throw Error(ErrorCode::Degenerate, "g vanishes on the section");
    return std::max(2U, static_cast<unsigned>(g.lowest_degree() / f.lowest_degree()) + 1);
  }
  PolarCurve polar = relative_polar_ideal(f, g, {}, limits);
  return iomdin_threshold(gap_ratios(f, g, polar, limits));
}

}  // namespace

std::string fibre_function(const std::string& kind) {
  if (kind == "f-fibre") return "f";
  if (kind == "g-fibre") return "g";
  if (kind == "gt-fibre") return "gt";
  if (kind == "l-fibre") return "l";
  throw Error(ErrorCode::Schema, "unknown fibre kind '" + kind + "'");
}

long brasselet_number(const StrataDataset& ds, const std::string& kind, const std::string& space) {
  const std::string fn = fibre_function(kind);
  bool any = false;
  long sum = 0;
  for (const auto& r : ds.records) {
    if (r.space != space) continue;
    any = true;
    if (is_inside(r, fn)) continue;
    auto it = r.chi.find(kind);
    if (it == r.chi.end()) {
      throw Error(ErrorCode::MissingSlice, "stratum '" + r.name + "' of " + space + " has no " + kind + " entry");
    }
    sum += it->second * r.eu;
  }
  if (!any) throw Error(ErrorCode::MissingSlice, "no strata of " + space + " in the dataset");
  return sum;
}

long bls_euler_obstruction(const StrataDataset& ds, const std::string& space) {
  return brasselet_number(ds, "l-fibre", space);
}

long euler_obstruction(const StrataDataset& ds, const std::string& space) {
  if (auto it = ds.eu_origin.find(space); it != ds.eu_origin.end()) return it->second;
  return bls_euler_obstruction(ds, space);
}

long euler_obstruction_of_function(const StrataDataset& ds, const std::string& kind, const std::string& space) {
  return euler_obstruction(ds, space) - brasselet_number(ds, kind, space);
}

std::vector<Verdict> verify_stratified_identities(const Scenario& s, std::optional<unsigned> N) {
  std::vector<Verdict> out;
  if (!s.strata) {
    out.push_back(skipped("all", "scenario has no stratified dataset"));
    return out;
  }
  const StrataDataset& ds = *s.strata;
  const long d = ds.dim;
  if (!N && s.N.lo == s.N.hi) N = s.N.lo;

  auto B = [&](const char* kind, const char* space) { return brasselet_number(ds, kind, space); };

  out.push_back(guarded("b-equality-g-gt", [&] {
    return make_verdict("b-equality-g-gt", B("g-fibre", "X^f"), B("gt-fibre", "X^f"), "B_{g,X^f}(0) vs B_{gt,X^f}(0)");
  }));
  out.push_back(guarded("b-equality-exchange", [&] {
    return make_verdict("b-equality-exchange", B("gt-fibre", "X^f"), B("f-fibre", "X^gt"),
                        "B_{gt,X^f}(0) vs B_{f,X^gt}(0)");
  }));
  out.push_back(guarded("eu-parity", [&] {
    long gt = euler_obstruction(ds, "X^gt");
    long g = euler_obstruction(ds, "X^g");
    bool ok = d % 2 == 0 ? gt >= g : gt <= g;
    std::string note = std::string("d = ") + std::to_string(d) + (d % 2 == 0 ? " even: expects Eu_{X^gt}(0) >= Eu_{X^g}(0)"
                                                                              : " odd: expects Eu_{X^gt}(0) <= Eu_{X^g}(0)");
    return Verdict{"eu-parity", ok ? VerdictStatus::Pass : VerdictStatus::Fail, gt, g, note};
  }));
  out.push_back(guarded("branch-difference", [&] {
    long left = B("f-fibre", "X^g") - B("f-fibre", "X^gt");
    long right = branch_sum(s, [](const std::string& n, const BranchData& b) {
      return need(b.m_f, n, "m_f") * (need(b.eu_Xg, n, "eu_Xg") - need(b.B_g_slice, n, "B_g_slice"));
    });
    return make_verdict("branch-difference", left, right, "B_{f,X^g}(0) - B_{f,X^gt}(0) vs sum m_f (Eu_{X^g}(b) - B_{g,slice}(b))");
  }));
  out.push_back(guarded("eu-difference", [&] {
    long left = euler_obstruction(ds, "X^g") - euler_obstruction(ds, "X^gt");
    long right = branch_sum(s, [](const std::string& n, const BranchData& b) {
      return need(b.m_l, n, "m_l") * (need(b.eu_Xg, n, "eu_Xg") - need(b.B_g_l_slice, n, "B_g_l_slice"));
    });
    return make_verdict("eu-difference", left, right, "Eu_{X^g}(0) - Eu_{X^gt}(0) vs sum m_l (Eu_{X^g}(b) - B_{g,l-slice}(b))");
  }));
  out.push_back(guarded("morse-count", [&] {
    long bf = B("f-fibre", "X");
    long m_tilde = sign(d - 1) * (bf - B("f-fibre", "X^gt"));
    long eu_sum = branch_sum(s, [](const std::string& n, const BranchData& b) {
      return need(b.m_f, n, "m_f") * (need(b.eu_X, n, "eu_X") - need(b.eu_Xg, n, "eu_Xg"));
    });
    long m = sign(d - 1) * (bf - B("f-fibre", "X^g") - eu_sum);
    long right = sign(d - 1) * branch_sum(s, [](const std::string& n, const BranchData& b) {
                   return need(b.m_f, n, "m_f") * need(b.eu_g_slice, n, "eu_g_slice");
                 }) + m;
    return make_verdict("morse-count", m_tilde, right,
                        "m~ vs (-1)^(d-1) sum m_f Eu_{g,slice}(b) + m, with m = " + std::to_string(m));
  }));
  for (const auto& b : s.branches_on(BranchHost::Sigma)) {
    auto it = s.branch_data.find(b.name);
    const BranchData* data = it == s.branch_data.end() ? nullptr : &it->second;
    auto per_branch = [&](const std::string& id, const std::function<Verdict(const BranchData&)>& body) {
      std::string name = id + "[" + b.name + "]";
      out.push_back(guarded(name, [&] {
        if (!data) throw Missing{"branch '" + b.name + "' has no data"};
        Verdict v = body(*data);
        v.identity = name;
        return v;
      }));
    };
    per_branch("branch-relation", [&](const BranchData& x) {
      return make_verdict("", need(x.eu_g_slice, b.name, "eu_g_slice"),
                          need(x.eu_X, b.name, "eu_X") - need(x.B_g_slice, b.name, "B_g_slice"),
                          "Eu_{g,slice}(b) vs Eu_X(b) - B_{g,slice}(b)");
    });
    per_branch("slice-exchange", [&](const BranchData& x) {
      return make_verdict("", need(x.B_g_slice, b.name, "B_g_slice"), need(x.B_f_gt_slice, b.name, "B_f_gt_slice"),
                          "B_{g,X∩f^-1}(b) vs B_{f,X∩gt^-1}(b)");
    });
    per_branch("slice-exchange-eu", [&](const BranchData& x) {
      return make_verdict("", need(x.eu_g_slice, b.name, "eu_g_slice"),
                          need(x.eu_f_gt_slice, b.name, "eu_f_gt_slice"), "Eu_{g,X∩f^-1}(b) vs Eu_{f,X∩gt^-1}(b)");
    });
  }
  out.push_back(guarded("main-theorem", [&] {
    if (!N) throw Missing{"N is a range; pass a single N"};
    long left = B("gt-fibre", "X");
    long g = B("g-fibre", "X");
    long sum = branch_sum(s, [](const std::string& n, const BranchData& b) {
      return need(b.m_f, n, "m_f") * need(b.eu_f_gt_slice, n, "eu_f_gt_slice");
    });
    return make_verdict("main-theorem", left, g + static_cast<long>(*N) * sum,
                        "B_{gt,X}(0) vs B_{g,X}(0) + N sum m_f Eu_{f,X∩gt^-1}(b) with B_{g,X}(0) = " + std::to_string(g) +
                            ", N = " + std::to_string(*N) + ", sum = " + std::to_string(sum));
  }));
  for (const auto& [space, declared] : ds.eu_origin) {
    std::string name = "eu-origin[" + space + "]";
    out.push_back(guarded(name, [&, space = space, declared = declared] {
      return make_verdict(name, declared, bls_euler_obstruction(ds, space), "declared Eu vs hyperplane formula");
    }));
  }
  return out;
}

Scenario export_dataset(const Scenario& s, unsigned N) {
  VerifierContext c = prepare_verifier(s);
  const Limits& limits = s.limits;
  if (N < c.threshold) {
    throw Error(ErrorCode::OutOfRange,
                "N = " + std::to_string(N) + " is below the threshold " + std::to_string(c.threshold));
  }
  for (const auto& t : c.branch_terms) {
    if (t.name == "Lambda1-cycle") {
      throw Error(ErrorCode::MissingBranches, "exporting a dataset needs the branches of the critical locus");
    }
  }
  DeformationCase dc = build_deformation(c.g, c.f, N, c.threshold, limits);
  const Poly& g = c.g;
  const Poly& f = c.f;
  const Poly& gt = dc.gt;
  const long v = static_cast<long>(c.v);
  const long s1 = sign(v - 1);
  const long s2 = sign(v - 2);
  const long mu_gt = static_cast<long>(*dc.certificate);
  const long mu_f = static_cast<long>(milnor_number(f, limits));
  const bool isolated = c.sigma_branches.empty();
  const bool with_xg = isolated || v >= 3;
  Ideal jac = jacobian_ideal(g);

  struct Row {
    const BranchParam* b;
    BranchData data;
    long mu = 0;
    long mu_l = 0;
  };

  // Complete intersections with f; absent when g or g~ vanishes on {f = 0}.
  auto optional_icis = [&](const Poly& a, const Poly& b) -> std::optional<long> {
    try {
      return icis_mu(a, b, limits);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Nonisolated) throw;
      return std::nullopt;
    }
  };
  const std::optional<long> icis_fg = optional_icis(f, g);
  const std::optional<long> icis_fgt = optional_icis(f, gt);
  const std::optional<long> icis_gtf = optional_icis(gt, f);

  // Generic hyperplane sections; advance the ladder until every slice
  // computation is admissible.
  std::string last;
  const unsigned first_rung = c.f_generic ? c.linear_rung + 1 : 0;
  for (unsigned rung = first_rung; rung < first_rung + limits.linear_ladder; ++rung) {
    Poly l = generic_linear_form(s.ring, rung);
    Poly l2 = generic_linear_form(s.ring, rung + 1);
    try {
      std::vector<Poly> section = restrict_to_subspace({g, f, gt}, {l});
      const unsigned section_threshold = deformation_threshold(section[0], section[1], limits);
      if (N < section_threshold) {
        throw Error(ErrorCode::OutOfRange, "N = " + std::to_string(N) + " is below the threshold " +
                                               std::to_string(section_threshold) + " of the section by " +
                                               print_poly(l) + " = 0");
      }
      const long mu_lg = static_cast<long>(milnor_number(section[0], limits));
      const long mu_lgt = static_cast<long>(milnor_number(section[2], limits));
      std::vector<Row> rows;
      for (std::size_t k = 0; k < c.sigma_branches.size(); ++k) {
        const BranchParam& b = c.sigma_branches[k];
        const BranchTerm& t = c.branch_terms[k];
        Row row{&b, {}, static_cast<long>(t.mu), 0};
        BranchData& x = row.data;
        x.m_f = t.m_f;
        x.eu_X = 1;
        x.B_g_slice = 1 + s2 * static_cast<long>(t.mu);
        x.eu_g_slice = s1 * static_cast<long>(t.mu);
        x.m_l = local_degree(l, b, limits);
        SliceMilnor sl = branch_slice_milnor(g, l, b, jac, limits);
        row.mu_l = static_cast<long>(sl.mu);
        x.B_g_l_slice = 1 + s2 * row.mu_l;
        auto exchanged = [&](const Rational& tau) {
          return static_cast<long>(slice_milnor_minors(f, gt, branch_point(b, tau), limits));
        };
        long mu_prime = exchanged(t.tau);
        if (exchanged(t.tau / 2) != mu_prime) {
          throw Error(ErrorCode::Instability, "exchanged slice Milnor number along '" + b.name + "' is not stable");
        }
        x.eu_f_gt_slice = s1 * mu_prime;
        x.B_f_gt_slice = 1 + s2 * mu_prime;
        if (with_xg) {
          auto transversal = [&](const Rational& tau) {
            return static_cast<long>(restricted_milnor(g, {l, l2}, branch_point(b, tau), limits));
          };
          long mu_t = transversal(sl.tau);
          if (transversal(sl.tau / 2) != mu_t) {
            throw Error(ErrorCode::Instability, "transversal Milnor number along '" + b.name + "' is not stable");
          }
          x.eu_Xg = 1 + s1 * mu_t;
        }
        rows.push_back(std::move(row));
      }

      StrataDataset ds;
      ds.dim = static_cast<int>(v);
      ds.generic_linear_f = c.f_generic;
      ds.declared["hypotheses_checked"] = true;
      ds.eu_origin["X"] = 1;
      std::vector<std::string> branch_names;
      for (const auto& b : c.sigma_branches) branch_names.push_back(b.name);
      const std::vector<std::string> all{"f", "g", "gt", "l"};

      StratumRecord x_reg{"X_reg", "X", static_cast<int>(v), 1, {}, {"origin"}, branch_names, {}};
      x_reg.chi["f-fibre"] = 1 + s1 * mu_f;
      x_reg.chi["g-fibre"] = c.chi_g;
      x_reg.chi["gt-fibre"] = 1 + s1 * mu_gt;
      x_reg.chi["l-fibre"] = 1;
      ds.records.push_back(x_reg);
      ds.records.push_back({"origin", "X", 0, 1, all, {}, {}, {}});

      StratumRecord xf{"Xf_reg", "X^f", static_cast<int>(v - 1), 1, {"f"}, {"Xf_origin"}, {}, {}};
      if (icis_fg) xf.chi["g-fibre"] = 1 + s2 * *icis_fg;
      if (icis_fgt) xf.chi["gt-fibre"] = 1 + s2 * *icis_fgt;
      if (mu_f == 0) xf.chi["l-fibre"] = 1;
      ds.records.push_back(xf);
      ds.records.push_back({"Xf_origin", "X^f", 0, 1, all, {}, {}, {}});

      if (with_xg) {
        long fib_f = 1 + s2 * icis_fg.value_or(0);
        long fib_l = 1 + s2 * mu_lg;
        long points_f = 0;
        long points_l = 0;
        std::vector<StratumRecord> curves;
        for (const auto& row : rows) {
          long mf = *row.data.m_f;
          long ml = *row.data.m_l;
          fib_f -= mf * s2 * row.mu;
          fib_l -= ml * s2 * row.mu_l;
          points_f += mf;
          points_l += ml;
          StratumRecord curve{"Xg_" + row.b->name, "X^g", 1, *row.data.eu_Xg, {"g"}, {"Xg_origin"}, {row.b->name}, {}};
          curve.chi["f-fibre"] = mf;
          curve.chi["l-fibre"] = ml;
          curves.push_back(std::move(curve));
        }
        StratumRecord xg{"Xg_reg", "X^g", static_cast<int>(v - 1), 1, {"g"}, {}, {}, {}};
        for (const auto& cv : curves) xg.boundary.push_back(cv.name);
        xg.boundary.push_back("Xg_origin");
        if (icis_fg) xg.chi["f-fibre"] = fib_f - points_f;
        xg.chi["l-fibre"] = fib_l - points_l;
        ds.records.push_back(xg);
        for (auto& cv : curves) ds.records.push_back(std::move(cv));
        ds.records.push_back({"Xg_origin", "X^g", 0, 1, all, {}, {}, {}});
      }

      StratumRecord xgt{"Xgt_reg", "X^gt", static_cast<int>(v - 1), 1, {"gt"}, {"Xgt_origin"}, {}, {}};
      if (icis_gtf) xgt.chi["f-fibre"] = 1 + s2 * *icis_gtf;
      xgt.chi["l-fibre"] = 1 + s2 * mu_lgt;
      ds.records.push_back(xgt);
      ds.records.push_back({"Xgt_origin", "X^gt", 0, 1, all, {}, {}, {}});

      Scenario out;
      out.ring = s.ring;
      out.g = g;
      out.f = f;
      out.N = {N, N};
      out.N_explicit = true;
      out.default_trunc = s.default_trunc;
      out.branches = s.branches;
      for (const auto& row : rows) out.branch_data[row.b->name] = row.data;
      out.strata = std::move(ds);
      out.limits = s.limits;
      out.metadata = s.metadata;
      if (out.metadata.contains("name") && out.metadata["name"].is_string()) {
        out.metadata["name"] = out.metadata["name"].get<std::string>() + "-stratified";
      }
      out.metadata.erase("expected");
      out.metadata.erase("oracles");
      out.metadata.erase("description");
      out.metadata["exported_at_N"] = N;
      out.metadata["hyperplane_forms"] = {print_poly(l), print_poly(l2)};
      out.metadata["section_threshold"] = section_threshold;
      if (!with_xg) out.metadata["note"] = "X^g strata omitted: g is not reduced along its critical curve";
      return out;
    } catch (const Error& e) {
      bool recoverable = e.code() == ErrorCode::Degenerate || e.code() == ErrorCode::Improper || e.code() == ErrorCode::Nonisolated ||
                         e.code() == ErrorCode::Instability;
      if (!recoverable) throw;
      last = e.what();
    }
  }
  throw Error(ErrorCode::UndefinedLe, "no admissible hyperplane sections for the export; last: " + last);
}

}  // namespace germ
