#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "germkit/le_engine.hpp"
#include "germkit/polar.hpp"
#include "germkit/scenario.hpp"
#include "germkit/verdict.hpp"

namespace germ {

struct Hypotheses {
  std::optional<int> sigma_dim;       // dim of Σg at 0 (nullopt: 0 not critical)
  bool sigma_meets_f_only_at_origin = false;
  std::optional<int> f_critical_dim;  // dim of Σf at 0 (nullopt: f smooth)
};

/// Evaluates dim Σg <= 1, Σg ∩ {f = 0} = {0} and isolated Σf; throws
/// HYPOTHESIS-FAIL naming the first violated check.
Hypotheses check_hypotheses(const Poly& g, const Poly& f, const Limits& limits = {});

struct DeformationCase {
  Poly g;
  Poly f;
  unsigned N = 0;
  Poly gt;
  /// dim O / Jac(g + f^N); nullopt when infinite.
  std::optional<std::size_t> certificate;
  unsigned threshold = 2;
};

/// Assembles g + f^N and its isolation certificate. A non-isolated
/// deformation at or above the threshold is NONISOLATED-AT-THRESHOLD.
DeformationCase build_deformation(const Poly& g, const Poly& f, unsigned N, unsigned threshold,
                                  const Limits& limits = {});

/// Per-branch quantities along the Σ-branches with respect to f.
struct BranchTerm {
  std::string name;
  unsigned m_f = 0;
  std::size_t mu = 0;  // μ of g on the f-slice at the branch point
  Rational tau;        // parameter of the accepted branch point
};

/// Everything computed once per scenario, before the N sweep.
struct VerifierContext {
  Poly g;
  Poly f;
  bool f_linear = false;
  bool f_generic = false;
  unsigned linear_rung = 0;  // ladder rung used when f was GENERIC-LINEAR
  Poly l;                    // linear form the Lê numbers are taken with
  std::size_t v = 0;
  Limits limits;
  Hypotheses hypotheses;
  LeData le;
  long chi_g = 0;
  std::vector<BranchParam> sigma_branches;
  std::vector<BranchTerm> branch_terms;
  PolarCurve polar;
  GapReport gap;
  unsigned threshold = 2;
  std::vector<std::string> log;

  /// Σ_j m_{f,b_j} μ_j.
  long branch_sum() const;
};

VerifierContext prepare_verifier(const Scenario& s);

/// Lê numbers with respect to the first admissible form on the generic
/// linear ladder; `l`, `rung` and `log` record the choice. Throws
/// UNDEFINED-LE when every rung fails.
LeData le_on_ladder(const Poly& g, const std::vector<BranchParam>& sigma, const Limits& limits, Poly& l,
                    unsigned& rung, std::vector<std::string>& log);

struct VerdictRow {
  unsigned N = 0;
  bool in_range = false;
  std::optional<std::size_t> mu_gt;
  long chi_gt = 0;
  long defect = 0;  // n - ñ
  /// χ(F_g~) - χ(F_g) as predicted by the χ identity and by the Tibăr
  /// identity; both present whenever f is linear.
  std::optional<long> chi_defect;
  std::optional<long> tibar_defect;
  std::vector<Verdict> verdicts;
  std::string error;  // set when the row could not be computed
};

struct VerdictTable {
  VerifierContext context;
  NRange range;
  std::vector<VerdictRow> rows;

  /// True iff no asserted (in-range) verdict failed and no in-range row errored.
  bool all_pass() const;
};

/// The individual identities on one row; exposed for direct testing.
Verdict verify_le_number_identity(const VerifierContext& c, const DeformationCase& d);
Verdict verify_chi_identity(const VerifierContext& c, const DeformationCase& d);
Verdict verify_tibar_identity(const VerifierContext& c, const DeformationCase& d);
/// left: ñ - n from the χ defect; right: ñ - n from the branch expansion.
Verdict morse_defect(const VerifierContext& c, const DeformationCase& d);
Verdict verify_gap_lemma(const VerifierContext& c, const DeformationCase& d);
Verdict verify_polar_remark(const VerifierContext& c, const DeformationCase& d);

VerdictRow verify_row(const VerifierContext& c, unsigned N);

/// Sweeps N over the range (default: the scenario's); rows are computed on
/// up to `jobs` threads and always reported in increasing N.
VerdictTable verify_scenario(const Scenario& s, std::optional<NRange> range = std::nullopt, unsigned jobs = 1);
VerdictTable verify_context(VerifierContext c, NRange range, unsigned jobs = 1);

nlohmann::ordered_json context_json(const VerifierContext& c);
nlohmann::ordered_json verdict_table_json(const VerdictTable& t);
std::string verdict_table_text(const VerdictTable& t);

}  // namespace germ
