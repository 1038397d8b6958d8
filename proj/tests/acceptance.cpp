// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "germkit/fixtures.hpp"
#include "germkit/iomdin.hpp"
#include "germkit/local_invariants.hpp"
#include "germkit/parse.hpp"
#include "germkit/report.hpp"
#include "germkit/stratified.hpp"
#include "oracles.hpp"

using namespace germ;

namespace {

constexpr double kBudgetSeconds = 10.0;

// Collects failures; the first few are printed with the verdict line.
struct Check {
  std::vector<std::string> failures;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  template <class A, class B>
  void equal(const A& a, const B& b, const std::string& what) {
    std::ostringstream os;
    os << what << ": " << a << " != " << b;
    expect(a == b, os.str());
  }
};

Scenario fixture(const char* name) { return load_fixture(name).scenario; }

const Verdict& find(const VerdictRow& row, const std::string& id) {
  for (const auto& v : row.verdicts) {
    if (v.identity == id) return v;
  }
  throw std::runtime_error("row N = " + std::to_string(row.N) + " has no verdict " + id);
}

const Verdict* find(const std::vector<Verdict>& vs, const std::string& id) {
  for (const auto& v : vs) {
    if (v.identity == id) return &v;
  }
  return nullptr;
}

std::vector<std::string> g_fixtures() {
  std::vector<std::string> out;
  for (const auto& name : list_fixtures()) {
    if (load_fixture(name).scenario.g) out.push_back(name);
  }
  return out;
}

std::string n(long v) { return std::to_string(v); }

void milnor_kernel(Check& c) {
  RingPtr r = make_ring({"x", "y", "z"});
  for (long a = 2; a <= 5; ++a) {
    for (long b = 2; b <= 5; ++b) {
      for (long cc = 2; cc <= 5; ++cc) {
        Poly g = parse_poly("x^" + n(a) + " + y^" + n(b) + " + z^" + n(cc), r);
        c.equal(long(milnor_number(g)), oracle::brieskorn_mu({a, b, cc}),
                "mu(x^" + n(a) + "+y^" + n(b) + "+z^" + n(cc) + ")");
      }
    }
  }
  Poly cusp = parse_poly("x^3+y^3", make_ring({"x", "y"}));
  std::size_t quotient = oracle::monomial_quotient_size({{2, 0}, {0, 2}}, {3, 3});
  c.equal(milnor_number(cusp), quotient, "mu(x^3+y^3)");
  c.equal(long(quotient), 4L, "monomial quotient of (x^2, y^2)");
}

void le_numbers_check(Check& c) {
  VerifierContext cyl = prepare_verifier(fixture("cylinder"));
  c.equal(cyl.le.lambda0, 0U, "cylinder lambda0");
  c.equal(cyl.le.lambda1, 1U, "cylinder lambda1");
  VerifierContext tl = prepare_verifier(fixture("three-lines"));
  c.equal(tl.le.lambda0, 0U, "three-lines lambda0");
  c.equal(tl.le.lambda1, 4U, "three-lines lambda1");
  int isolated = 0;
  for (const auto& name : g_fixtures()) {
    Fixture f = load_fixture(name);
    if (!f.expected.contains("mu") || f.expected["mu"].is_null()) continue;
    ++isolated;
    VerifierContext ctx = prepare_verifier(f.scenario);
    long mu = f.expected["mu"].get<long>();
    c.equal(long(milnor_number(ctx.g)), mu, name + " mu");
    c.equal(long(ctx.le.lambda0), mu, name + " lambda0");
    c.equal(ctx.le.lambda1, 0U, name + " lambda1");
  }
  c.expect(isolated >= 3, "fewer than three isolated fixtures");
}

// Rows N in [threshold, threshold + 6] of the cylinder and three-lines sweeps.
struct Sweep {
  const char* name;
  std::function<long(unsigned)> mu_gt;
  std::function<long(unsigned)> chi_gt;
};

const std::vector<Sweep>& sweeps() {
  static const std::vector<Sweep> s{
      {"cylinder", [](unsigned N) { return oracle::brieskorn_mu({2, 2, long(N)}); },
       [](unsigned N) { return long(N); }},
      {"three-lines",
       [](unsigned N) { return oracle::thom_sebastiani(oracle::homogeneous_plane_mu(3), long(N)); },
       [](unsigned N) { return 4L * N - 3; }},
  };
  return s;
}

VerdictTable sweep_table(const char* name) {
  VerifierContext ctx = prepare_verifier(fixture(name));
  return verify_context(ctx, NRange{ctx.threshold, ctx.threshold + 6});
}

void massey(Check& c) {
  for (const auto& s : sweeps()) {
    for (const auto& row : sweep_table(s.name).rows) {
      const Verdict& v = find(row, "le-number");
      std::string at = std::string(s.name) + " N = " + n(row.N);
      c.expect(v.status == VerdictStatus::Pass, at + ": " + verdict_line(v));
      c.equal(v.left, s.mu_gt(row.N), at + " mu(g~)");
      c.equal(long(row.mu_gt.value_or(0)), s.mu_gt(row.N), at + " certificate");
    }
  }
}

void chi_identity(Check& c) {
  for (const auto& s : sweeps()) {
    for (const auto& row : sweep_table(s.name).rows) {
      const Verdict& v = find(row, "chi");
      std::string at = std::string(s.name) + " N = " + n(row.N);
      c.expect(v.status == VerdictStatus::Pass, at + ": " + verdict_line(v));
      c.equal(v.left, s.chi_gt(row.N), at + " left");
      c.equal(v.right, s.chi_gt(row.N), at + " right");
    }
  }
}

void tibar(Check& c) {
  for (const auto& s : sweeps()) {
    for (const auto& row : sweep_table(s.name).rows) {
      std::string at = std::string(s.name) + " N = " + n(row.N);
      const Verdict& v = find(row, "tibar");
      c.expect(v.status == VerdictStatus::Pass, at + ": " + verdict_line(v));
      c.expect(row.chi_defect && row.tibar_defect, at + ": missing defect");
      if (row.chi_defect && row.tibar_defect) c.equal(*row.tibar_defect, *row.chi_defect, at + " defect");
    }
  }
}

void polar_remark(Check& c) {
  for (const char* name : {"cylinder", "three-lines", "polar-cubic"}) {
    VerifierContext ctx = prepare_verifier(fixture(name));
    for (unsigned N : {2U, 3U, 5U}) {
      PolarDecomposition pd = verify_polar_decomposition(ctx.f, ctx.g, N, ctx.polar, ctx.sigma_branches, ctx.limits);
      c.expect(pd.pass, std::string(name) + " N = " + n(N) + ": " + pd.witness);
    }
  }
}

void gap_lemma(Check& c) {
  VerifierContext ctx = prepare_verifier(fixture("polar-cubic"));
  c.expect(!ctx.polar.empty(), "polar-cubic has an empty polar curve");
  for (unsigned N = ctx.threshold; N <= ctx.threshold + 6; ++N) {
    DeformationCase d = build_deformation(ctx.g, ctx.f, N, ctx.threshold, ctx.limits);
    Verdict v = verify_gap_lemma(ctx, d);
    c.expect(v.status == VerdictStatus::Pass, "N = " + n(N) + ": " + verdict_line(v));
    c.equal(v.left, 3L, "N = " + n(N) + " left");
    c.equal(v.right, 3L, "N = " + n(N) + " right");
  }
}

void stratified(Check& c) {
  StrataDataset cusp = *fixture("cusp-curve").strata;
  cusp.eu_origin.clear();
  c.equal(bls_euler_obstruction(cusp), 2L, "cusp-curve Eu via BLS");

  Scenario exported = export_dataset(fixture("cylinder"), 3);
  auto verdicts = verify_stratified_identities(exported, 3);
  const Verdict* main = find(verdicts, "main-theorem");
  c.expect(main != nullptr, "export has no main-theorem verdict");
  if (main) {
    c.expect(main->status == VerdictStatus::Pass, verdict_line(*main));
    c.equal(main->left, 3L, "main theorem left");
    c.equal(main->right, 3L, "main theorem right");
  }
  c.equal(brasselet_number(*exported.strata, "g-fibre"), 0L, "B_g");

  struct Negative {
    const char* fixture;
    const char* identity;
    long left, right;
  };
  for (const Negative& neg : {Negative{"parity-negative", "eu-parity", 1, 3},
                              Negative{"theorem-negative", "main-theorem", 4, 3}}) {
    auto vs = verify_stratified_identities(fixture(neg.fixture));
    const Verdict* v = find(vs, neg.identity);
    c.expect(v != nullptr, std::string(neg.fixture) + " has no " + neg.identity);
    if (!v) continue;
    c.expect(v->status == VerdictStatus::Fail, std::string(neg.fixture) + ": " + verdict_line(*v));
    c.equal(v->left, neg.left, std::string(neg.fixture) + " witness left");
    c.equal(v->right, neg.right, std::string(neg.fixture) + " witness right");
  }
}

void isolation(Check& c) {
  for (const auto& name : g_fixtures()) {
    VerifierContext ctx = prepare_verifier(load_fixture(name).scenario);
    for (unsigned N = ctx.threshold; N <= ctx.threshold + 6; ++N) {
      DeformationCase d = build_deformation(ctx.g, ctx.f, N, ctx.threshold, ctx.limits);
      c.expect(d.certificate.has_value(), name + " N = " + n(N) + " not isolated");
    }
    // below the threshold the certificate is reported either way
    for (unsigned N = 2; N < ctx.threshold; ++N) {
      VerdictRow row = verify_row(ctx, N);
      c.expect(!row.in_range, name + " N = " + n(N) + " asserted below threshold");
      for (const auto& v : row.verdicts) {
        c.expect(v.status == VerdictStatus::OutOfRange, name + " N = " + n(N) + ": " + verdict_line(v));
      }
    }
  }
}

void determinism(Check& c) {
  for (const auto& name : list_fixtures()) {
    Scenario s = load_fixture(name).scenario;
    c.equal(invariant_report(s, std::nullopt, 1).dump(), invariant_report(s, std::nullopt, 4).dump(),
            name + " report");
    if (s.g) {
      c.equal(verdict_table_json(verify_scenario(s)).dump(), verdict_table_json(verify_scenario(s)).dump(),
              name + " verdict table");
    }
    auto saved = save_scenario(s);
    Scenario back = load_scenario(saved);
    c.expect(back == s, name + " load/save");
    c.equal(save_scenario(back).dump(), saved.dump(), name + " save bytes");
    for (const auto* p : {s.g ? &*s.g : nullptr, s.f ? &*s.f : nullptr}) {
      if (p == nullptr) continue;
      std::string text = print_poly(*p);
      c.expect(parse_poly(text, s.ring) == *p, name + " parse/print " + text);
      c.equal(print_poly(parse_poly(text, s.ring)), text, name + " print bytes");
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    void (*run)(Check&);
  };
  const Criterion criteria[] = {
      {1, "Milnor kernel", milnor_kernel},
      {2, "Le numbers", le_numbers_check},
      {3, "Massey Le-Iomdin", massey},
      {4, "chi identity", chi_identity},
      {5, "Tibar identity", tibar},
      {6, "polar decomposition", polar_remark},
      {7, "gap-ratio lemma", gap_lemma},
      {8, "stratified ledger", stratified},
      {9, "isolation certificate", isolation},
      {10, "determinism and round-trip", determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("error: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > kBudgetSeconds) c.failures.push_back("took " + std::to_string(secs) + " s");
    bool ok = c.failures.empty() && c.checks > 0;
    failed += ok ? 0 : 1;
    std::printf("criterion %2d %-28s %s  (%d checks, %.2f s)\n", cr.id, cr.title, ok ? "PASS" : "FAIL", c.checks, secs);
    for (std::size_t i = 0; i < c.failures.size() && i < 5; ++i) std::printf("    %s\n", c.failures[i].c_str());
  }
  std::printf("%s\n", failed == 0 ? "acceptance: PASS" : "acceptance: FAIL");
  return failed == 0 ? 0 : 1;
}
