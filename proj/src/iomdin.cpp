#include "germkit/iomdin.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "germkit/local_invariants.hpp"
#include "germkit/parse.hpp"

namespace germ {

using json = nlohmann::ordered_json;

namespace {

long sign(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

bool ladder_recoverable(ErrorCode c) {
  switch (c) {
    case ErrorCode::UndefinedLe:
    case ErrorCode::HypothesisFail:
    case ErrorCode::Degenerate:
    case ErrorCode::Improper:
    case ErrorCode::Instability:
    case ErrorCode::Nonisolated:
      return true;
    default:
      return false;
  }
}

std::string rational_text(const Rational& r) { return r.get_str(); }

VerifierContext prepare_with(const Scenario& s, const Poly& f, bool generic, unsigned rung) {
  const Limits& limits = s.limits;
  VerifierContext c;
  c.g = *s.g;
  c.f = f;
  c.f_linear = f.is_linear_form();
  c.f_generic = generic;
  c.linear_rung = rung;
  c.v = c.g.nvars();
  c.limits = limits;
  c.sigma_branches = s.branches_on(BranchHost::Sigma);
  c.hypotheses = check_hypotheses(c.g, f, limits);

  if (c.f_linear) {
    c.l = f;
    c.le = le_numbers(c.g, f, c.sigma_branches, limits);
  } else {
    unsigned l_rung = 0;
    c.le = le_on_ladder(c.g, c.sigma_branches, limits, c.l, l_rung, c.log);
    c.log.push_back("Le numbers taken with l = " + print_poly(c.l));
  }
  for (const auto& line : c.le.route_log) c.log.push_back(line);
  c.chi_g = euler_char_fibre(c.v, c.le);

  Ideal jac = jacobian_ideal(c.g);
  bool one_dimensional = c.hypotheses.sigma_dim && *c.hypotheses.sigma_dim == 1;
  if (!c.sigma_branches.empty()) {
    for (const auto& b : c.sigma_branches) {
      unsigned m = local_degree(f, b, limits);
      SliceMilnor sm = branch_slice_milnor(c.g, f, b, jac, limits);
      c.branch_terms.push_back({b.name, m, sm.mu, sm.tau});
    }
  } else if (one_dimensional) {
    if (!c.f_linear || !c.le.lambda1_cycle) {
      throw Error(ErrorCode::MissingBranches,
                  "the critical locus is a curve; supply its branches to evaluate the branch sums");
    }
    c.branch_terms.push_back({"Lambda1-cycle", 1, *c.le.lambda1_cycle, Rational(0)});
    c.log.push_back("no branches supplied: branch sum taken as the Lambda1 cycle intersection");
  }

  c.polar = relative_polar_ideal(f, c.g, s.branches_on(BranchHost::Polar), limits);
  c.gap = gap_ratios(f, c.g, c.polar, limits);
  c.threshold = iomdin_threshold(c.gap);
  c.log.push_back("threshold " + std::to_string(c.threshold) + " from gap status " +
                  std::string(gap_status_name(c.gap.status)));
  return c;
}

void informational(Verdict& v) {
  if (v.status == VerdictStatus::Skipped) return;
  std::string was(verdict_status_name(v.status));
  v.status = VerdictStatus::OutOfRange;
  v.note = "informational, would be " + was + (v.note.empty() ? "" : "; " + v.note);
}

}  // namespace

LeData le_on_ladder(const Poly& g, const std::vector<BranchParam>& sigma, const Limits& limits, Poly& l,
                    unsigned& rung, std::vector<std::string>& log) {
  std::string last;
  for (unsigned r = 0; r < limits.linear_ladder; ++r) {
    Poly candidate = generic_linear_form(g.ring(), r);
    try {
      LeData le = le_numbers(g, candidate, sigma, limits);
      l = candidate;
      rung = r;
      return le;
    } catch (const Error& e) {
      if (!ladder_recoverable(e.code())) throw;
      last = e.what();
      log.push_back("linear form rung " + std::to_string(r) + " (" + print_poly(candidate) + ") rejected: " + last);
    }
  }
  throw Error(ErrorCode::UndefinedLe,
              "no admissible linear form in " + std::to_string(limits.linear_ladder) + " rungs; last: " + last);
}

Hypotheses check_hypotheses(const Poly& g, const Poly& f, const Limits& limits) {
  require_same_ring(g.ring(), f.ring(), "check_hypotheses");
  Hypotheses h;
  CriticalLocus cl = critical_locus(g, f, limits);
  h.sigma_dim = cl.dim;
  if (cl.dim && *cl.dim > 1) {
    throw Error(ErrorCode::HypothesisFail, "dim Sigma(g) <= 1 fails: the critical locus of " + print_poly(g) +
                                               " has dimension " + std::to_string(*cl.dim));
  }
  h.sigma_meets_f_only_at_origin = cl.meets_f_only_at_origin.value_or(false);
  if (!h.sigma_meets_f_only_at_origin) {
    throw Error(ErrorCode::HypothesisFail, "Sigma(g) ∩ {f = 0} = {0} fails for f = " + print_poly(f));
  }
  h.f_critical_dim = dim_at_origin(jacobian_ideal(f), limits);
  if (h.f_critical_dim && *h.f_critical_dim > 0) {
    throw Error(ErrorCode::HypothesisFail, "isolated singularity of f fails: Sigma(f) has dimension " +
                                               std::to_string(*h.f_critical_dim));
  }
  return h;
}

DeformationCase build_deformation(const Poly& g, const Poly& f, unsigned N, unsigned threshold,
                                  const Limits& limits) {
  require_same_ring(g.ring(), f.ring(), "build_deformation");
  if (N < kMinN) throw Error(ErrorCode::OutOfRange, "N = " + std::to_string(N) + " is below 2");
  DeformationCase d{g, f, N, g + f.pow(N), std::nullopt, threshold};
  Ideal jac = jacobian_ideal(d.gt);
  auto dim = dim_at_origin(jac, limits);
  if (!dim || *dim == 0) d.certificate = quotient_dim_local(jac, limits);
  if (!d.certificate && N >= threshold) {
    throw Error(ErrorCode::NonisolatedAtThreshold,
                "g + f^" + std::to_string(N) + " = " + print_poly(d.gt) + " is not isolated although N >= " +
                    std::to_string(threshold));
  }
  return d;
}

long VerifierContext::branch_sum() const {
  long sum = 0;
  for (const auto& t : branch_terms) sum += static_cast<long>(t.m_f) * static_cast<long>(t.mu);
  return sum;
}

Verdict verify_le_number_identity(const VerifierContext& c, const DeformationCase& d) {
  const char* name = "le-number";
  if (!c.f_linear) return skipped(name, "f is not a linear form");
  if (!d.certificate) return skipped(name, "g~ is not isolated");
  long left = static_cast<long>(*d.certificate);
  long right = static_cast<long>(c.le.lambda0) + static_cast<long>(d.N - 1) * static_cast<long>(c.le.lambda1);
  return make_verdict(name, left, right, "mu(g~) vs lambda0 + (N-1) lambda1");
}

Verdict verify_chi_identity(const VerifierContext& c, const DeformationCase& d) {
  const char* name = "chi";
  if (!d.certificate) return skipped(name, "g~ is not isolated");
  long left = 1 + sign(c.v - 1) * static_cast<long>(*d.certificate);
  long right = c.chi_g + sign(c.v - 1) * static_cast<long>(d.N) * c.branch_sum();
  return make_verdict(name, left, right, "chi(F_g~) vs chi(F_g) + (-1)^(v-1) N sum m mu");
}

Verdict verify_tibar_identity(const VerifierContext& c, const DeformationCase& d) {
  const char* name = "tibar";
  if (!c.f_linear) return skipped(name, "f is not a linear form");
  if (!d.certificate) return skipped(name, "g~ is not isolated");
  long left = 1 + sign(c.v - 1) * static_cast<long>(*d.certificate) - c.chi_g;
  long right = 0;
  for (const auto& t : c.branch_terms) {
    long chi_j = 1 + sign(c.v - 2) * static_cast<long>(t.mu);
    right += static_cast<long>(d.N) * static_cast<long>(t.m_f) * (1 - chi_j);
  }
  return make_verdict(name, left, right, "chi(F_g~) - chi(F_g) vs N sum m (1 - chi(F_j))");
}

Verdict morse_defect(const VerifierContext& c, const DeformationCase& d) {
  const char* name = "morse-defect";
  if (!d.certificate) return skipped(name, "g~ is not isolated");
  const std::size_t dim = c.v;
  long chi_gt = 1 + sign(c.v - 1) * static_cast<long>(*d.certificate);
  long left = sign(dim - 1) * (chi_gt - c.chi_g);
  long right = 0;
  for (const auto& t : c.branch_terms) {
    long eu = sign(c.v - 1) * static_cast<long>(t.mu);
    right += static_cast<long>(t.m_f) * eu;
  }
  right *= sign(dim - 1) * static_cast<long>(d.N);
  return make_verdict(name, left, right, "n~ - n from the chi defect vs from the branch expansion");
}

Verdict verify_gap_lemma(const VerifierContext& c, const DeformationCase& d) {
  const char* name = "gap-lemma";
  long left = static_cast<long>(intersection_number(c.polar.ideal, d.g, c.limits));
  long right = static_cast<long>(intersection_number(c.polar.ideal, d.gt, c.limits));
  return make_verdict(name, left, right, c.polar.empty() ? "empty polar curve" : "([polar].[V(g)]) vs ([polar].[V(g~)])");
}

Verdict verify_polar_remark(const VerifierContext& c, const DeformationCase& d) {
  PolarDecomposition pd = verify_polar_decomposition(d.f, d.g, d.N, c.polar, c.sigma_branches, c.limits);
  std::string note = pd.pass ? "radicals agree, largest power " + std::to_string(pd.max_power) : pd.witness;
  return make_verdict("polar-decomposition", pd.pass ? 1 : 0, 1, note);
}

VerifierContext prepare_verifier(const Scenario& s) {
  if (!s.g) throw Error(ErrorCode::Schema, "verification needs a function g");
  if (!s.f_generic) return prepare_with(s, *s.f, false, 0);
  std::vector<std::string> tried;
  std::string last;
  for (unsigned r = 0; r < s.limits.linear_ladder; ++r) {
    Poly l = generic_linear_form(s.ring, r);
    try {
      VerifierContext c = prepare_with(s, l, true, r);
      c.log.insert(c.log.begin(), tried.begin(), tried.end());
      c.log.insert(c.log.begin() + static_cast<long>(tried.size()), "f = generic linear form " + print_poly(l));
      return c;
    } catch (const Error& e) {
      if (!ladder_recoverable(e.code())) throw;
      last = e.what();
      tried.push_back("linear form rung " + std::to_string(r) + " (" + print_poly(l) + ") rejected: " + last);
    }
  }
  throw Error(ErrorCode::UndefinedLe,
              "no admissible generic linear form in " + std::to_string(s.limits.linear_ladder) + " rungs; last: " + last);
}

VerdictRow verify_row(const VerifierContext& c, unsigned N) {
  VerdictRow row;
  row.N = N;
  row.in_range = N >= c.threshold;
  try {
    DeformationCase d = build_deformation(c.g, c.f, N, c.threshold, c.limits);
    row.mu_gt = d.certificate;
    if (!d.certificate) {
      row.error = "g + f^" + std::to_string(N) + " is not isolated (below the threshold, reported only)";
      return row;
    }
    row.chi_gt = 1 + sign(c.v - 1) * static_cast<long>(*d.certificate);
    Verdict chi = verify_chi_identity(c, d);
    Verdict tibar = verify_tibar_identity(c, d);
    Verdict morse = morse_defect(c, d);
    row.defect = -morse.left;
    row.chi_defect = chi.right - c.chi_g;
    if (tibar.status != VerdictStatus::Skipped) row.tibar_defect = tibar.right;
    row.verdicts.push_back(verify_le_number_identity(c, d));
    row.verdicts.push_back(chi);
    row.verdicts.push_back(tibar);
    if (row.tibar_defect) {
      row.verdicts.push_back(make_verdict("chi-tibar-coherence", *row.chi_defect, *row.tibar_defect,
                                          "predicted defects of the two identities"));
    } else {
      row.verdicts.push_back(skipped("chi-tibar-coherence", "f is not a linear form"));
    }
    row.verdicts.push_back(morse);
    row.verdicts.push_back(verify_gap_lemma(c, d));
    row.verdicts.push_back(verify_polar_remark(c, d));
    if (!row.in_range) {
      for (auto& v : row.verdicts) informational(v);
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

bool VerdictTable::all_pass() const {
  for (const auto& row : rows) {
    if (!row.in_range) continue;
    if (!row.error.empty()) return false;
    for (const auto& v : row.verdicts) {
      if (v.status == VerdictStatus::Fail) return false;
    }
  }
  return true;
}

VerdictTable verify_context(VerifierContext c, NRange range, unsigned jobs) {
  VerdictTable t{std::move(c), range, {}};
  const std::size_t n = range.hi - range.lo + 1;
  t.rows.resize(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) t.rows[i] = verify_row(t.context, range.lo + static_cast<unsigned>(i));
  };
  unsigned threads = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return t;
}

VerdictTable verify_scenario(const Scenario& s, std::optional<NRange> range, unsigned jobs) {
  return verify_context(prepare_verifier(s), range.value_or(s.N), jobs);
}

json context_json(const VerifierContext& c) {
  json j;
  j["g"] = print_poly(c.g);
  j["f"] = print_poly(c.f);
  j["f_linear"] = c.f_linear;
  j["f_generic"] = c.f_generic;
  if (c.f_generic) j["linear_rung"] = c.linear_rung;
  j["l"] = print_poly(c.l);
  j["v"] = c.v;
  json h;
  h["sigma_dim"] = c.hypotheses.sigma_dim ? json(*c.hypotheses.sigma_dim) : json(nullptr);
  h["sigma_meets_f_only_at_origin"] = c.hypotheses.sigma_meets_f_only_at_origin;
  h["f_critical_dim"] = c.hypotheses.f_critical_dim ? json(*c.hypotheses.f_critical_dim) : json(nullptr);
  j["hypotheses"] = h;
  json le;
  le["lambda0"] = c.le.lambda0;
  le["lambda1"] = c.le.lambda1;
  le["isolated"] = c.le.isolated;
  le["lambda1_branches"] = c.le.lambda1_branches ? json(*c.le.lambda1_branches) : json(nullptr);
  le["lambda1_cycle"] = c.le.lambda1_cycle ? json(*c.le.lambda1_cycle) : json(nullptr);
  j["le"] = le;
  j["chi_g"] = c.chi_g;
  json terms = json::array();
  for (const auto& t : c.branch_terms) {
    json b;
    b["name"] = t.name;
    b["m_f"] = t.m_f;
    b["mu"] = t.mu;
    b["tau"] = rational_text(t.tau);
    terms.push_back(b);
  }
  j["branch_terms"] = terms;
  json gap;
  gap["polar_dim"] = c.polar.dim ? json(*c.polar.dim) : json(nullptr);
  gap["status"] = std::string(gap_status_name(c.gap.status));
  gap["g_intersection"] = c.gap.g_intersection ? json(*c.gap.g_intersection) : json(nullptr);
  gap["sound_bound"] = c.gap.sound_bound;
  gap["exact_max"] = c.gap.exact_max ? json(rational_text(*c.gap.exact_max)) : json(nullptr);
  json ratios = json::array();
  for (const auto& r : c.gap.ratios) {
    json o;
    o["name"] = r.name;
    o["ord_g"] = r.ord_g;
    o["ord_f"] = r.ord_f;
    o["multiplicity"] = r.multiplicity;
    o["ratio"] = rational_text(r.ratio);
    ratios.push_back(o);
  }
  gap["ratios"] = ratios;
  j["gap"] = gap;
  j["threshold"] = c.threshold;
  j["log"] = c.log;
  return j;
}

json verdict_table_json(const VerdictTable& t) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["report"] = "verdict-table";
  j["range"] = std::to_string(t.range.lo) + ".." + std::to_string(t.range.hi);
  j["limits"] = limits_to_json(t.context.limits);
  j["context"] = context_json(t.context);
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o;
    o["N"] = r.N;
    o["in_range"] = r.in_range;
    o["mu_gt"] = r.mu_gt ? json(*r.mu_gt) : json(nullptr);
    o["lambda0"] = t.context.le.lambda0;
    o["lambda1"] = t.context.le.lambda1;
    o["chi_g"] = t.context.chi_g;
    o["chi_gt"] = r.chi_gt;
    o["n_minus_n_tilde"] = r.defect;
    o["chi_defect"] = r.chi_defect ? json(*r.chi_defect) : json(nullptr);
    o["tibar_defect"] = r.tibar_defect ? json(*r.tibar_defect) : json(nullptr);
    json vs = json::array();
    for (const auto& v : r.verdicts) vs.push_back(verdict_json(v));
    o["verdicts"] = vs;
    if (!r.error.empty()) o["error"] = r.error;
    rows.push_back(o);
  }
  j["rows"] = rows;
  j["all_pass"] = t.all_pass();
  return j;
}

std::string verdict_table_text(const VerdictTable& t) {
  const VerifierContext& c = t.context;
  std::ostringstream out;
  out << "g = " << print_poly(c.g) << ", f = " << print_poly(c.f) << (c.f_generic ? " (generic linear)" : "") << "\n";
  out << "lambda0 = " << c.le.lambda0 << ", lambda1 = " << c.le.lambda1 << ", chi(F_g) = " << c.chi_g << "\n";
  out << "threshold = " << c.threshold << " (" << gap_status_name(c.gap.status) << ")\n";
  for (const auto& r : t.rows) {
    out << "N = " << r.N << (r.in_range ? "" : " [below threshold]");
    if (r.mu_gt) out << ": mu(g~) = " << *r.mu_gt << ", chi(F_g~) = " << r.chi_gt << ", n - n~ = " << r.defect;
    out << "\n";
    if (!r.error.empty()) out << "  ERROR " << r.error << "\n";
    for (const auto& v : r.verdicts) out << "  " << verdict_line(v) << "\n";
  }
  out << (t.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return out.str();
}

}  // namespace germ
