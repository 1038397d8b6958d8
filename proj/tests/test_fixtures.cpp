#include <gtest/gtest.h>

#include "germkit/fixtures.hpp"
#include "germkit/report.hpp"
#include "oracles.hpp"

using namespace germ;

TEST(Fixtures, BundledSetIsComplete) {
  auto names = list_fixtures();
  EXPECT_GE(names.size(), 11U);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  for (const char* must : {"cylinder", "three-lines", "polar-cubic", "cusp-curve", "parity-negative", "theorem-negative"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), must), names.end()) << must;
  }
}

TEST(Fixtures, EveryFixtureReproducesItsExpectedValues) {
  for (const auto& name : list_fixtures()) {
    Fixture f = load_fixture(name);
    ASSERT_FALSE(f.expected.empty()) << name;
    auto report = invariant_report(f.scenario);
    auto diff = report_mismatches(f.expected, report);
    EXPECT_TRUE(diff.empty()) << name << ": " << (diff.empty() ? "" : diff.front());
  }
}

TEST(Fixtures, EveryExpectedValueNamesAnOracle) {
  for (const auto& name : list_fixtures()) {
    Fixture f = load_fixture(name);
    EXPECT_FALSE(f.oracles.empty()) << name;
    EXPECT_FALSE(f.description.empty()) << name;
  }
}

TEST(Fixtures, BrieskornFamilyMatchesClosedForm) {
  for (unsigned a = 2; a <= 5; ++a) {
    for (unsigned b = a; b <= 5; ++b) {
      for (unsigned c = b; c <= 5; ++c) {
        std::string name = "brieskorn-" + std::to_string(a) + "-" + std::to_string(b) + "-" + std::to_string(c);
        Fixture f = load_fixture(name);
        long mu = oracle::brieskorn_mu({long(a), long(b), long(c)});
        EXPECT_EQ(f.expected["mu"], mu) << name;
        auto report = invariant_report(f.scenario);
        EXPECT_EQ(report["mu"], mu) << name;
        EXPECT_EQ(report["chi_g"], 1 + mu) << name;
        EXPECT_TRUE(report_mismatches(f.expected, report).empty()) << name;
      }
    }
  }
}

TEST(Fixtures, UnknownNamesAreRejected) {
  for (const char* bad : {"nope", "brieskorn-1-2-3", "brieskorn-2-3", "brieskorn-2-3-10"}) {
    try {
      load_fixture(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnknownFixture) << bad;
    }
  }
  EXPECT_THROW(fixture_text("nope"), Error);
}

TEST(Report, MismatchesNameTheirPath) {
  nlohmann::ordered_json expected = {{"mu", 4}, {"branches", {{"b", {{"m_f", 1}}}}}};
  nlohmann::ordered_json actual = {{"mu", 5}, {"branches", {{"b", {{"m_f", 1}, {"mu", 1}}}}}, {"extra", true}};
  auto diff = report_mismatches(expected, actual);
  ASSERT_EQ(diff.size(), 1U);
  EXPECT_NE(diff[0].find("/mu"), std::string::npos);
  actual["mu"] = 4;
  EXPECT_TRUE(report_mismatches(expected, actual).empty());
  actual.erase("branches");
  EXPECT_EQ(report_mismatches(expected, actual).size(), 1U);
}

TEST(Report, IsDeterministicAcrossJobs) {
  Fixture f = load_fixture("three-lines");
  EXPECT_EQ(invariant_report(f.scenario, std::nullopt, 1).dump(), invariant_report(f.scenario, std::nullopt, 3).dump());
}
