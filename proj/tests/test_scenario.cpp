#include <gtest/gtest.h>

#include <fstream>

#include "germkit/fixtures.hpp"
#include "germkit/parse.hpp"
#include "germkit/scenario.hpp"
#include "oracles.hpp"

using namespace germ;
using json = nlohmann::ordered_json;

namespace {

RingPtr xyz() { return make_ring({"x", "y", "z"}); }

ErrorCode code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Violation;
}

Scenario minimal() { return load_scenario_text(R"js({"variables":["x","y","z"],"g":"x^2+y^2","f":"GENERIC-LINEAR"})js"); }

}  // namespace

TEST(Parse, SumOfSquaresHasTwoTerms) { EXPECT_EQ(parse_poly("x^2 + y^2", xyz()).size(), 2U); }

TEST(Parse, ExpandsProducts) {
  auto r = xyz();
  EXPECT_EQ(print_poly(parse_poly("x*y*(x + y)", r)), "x^2*y + x*y^2");
}

TEST(Parse, PrecedenceAndUnaryMinus) {
  auto r = xyz();
  EXPECT_EQ(parse_poly("-x^2", r), parse_poly("-(x^2)", r));
  EXPECT_EQ(parse_poly("2*x^3*y", r), parse_poly("2*(x^3)*y", r));
  EXPECT_EQ(parse_poly("x - y - z", r), parse_poly("x - (y + z)", r));
  EXPECT_EQ(parse_poly("(x + y)^2", r), parse_poly("x^2 + 2*x*y + y^2", r));
  EXPECT_EQ(parse_poly("3/6*x", r), parse_poly("1/2*x", r));
}

TEST(Parse, RejectsNegativeExponent) {
  try {
    parse_poly("x^-1", xyz());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1U);
    EXPECT_EQ(e.column(), 3U);
  }
}

TEST(Parse, ErrorsCarryPositions) {
  auto r = xyz();
  try {
    parse_poly("x + w", r);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5U);
    EXPECT_NE(std::string(e.what()).find("w"), std::string::npos);
  }
  try {
    parse_poly("x +\n  y $", r);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.column(), 5U);
  }
}

TEST(Parse, RejectsMalformedInput) {
  auto r = xyz();
  for (const char* bad : {"", "x y", "2x", "x^256", "(x + y", "x +", "x^y", "1/0", "x ** 2"}) {
    EXPECT_EQ(code_of([&] { parse_poly(bad, r); }), ErrorCode::Parse) << bad;
  }
  EXPECT_NO_THROW(parse_poly("x^255", r));
}

TEST(Print, CanonicalExamples) {
  auto r = xyz();
  EXPECT_EQ(print_poly(Poly(r)), "0");
  EXPECT_EQ(print_poly(parse_poly("-3/2*x", r)), "-3/2*x");
  EXPECT_EQ(print_poly(parse_poly("y^2 + x^2", r)), "x^2 + y^2");
  EXPECT_EQ(print_poly(parse_poly("1 - x", r)), "-x + 1");
}

TEST(Print, ParseOfPrintIsIdentityOnRandomPolys) {
  auto r = xyz();
  oracle::PolyGen gen(r, 2024);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p = gen.next(6, 5, 9);
    if (trial % 3 == 0) p = p.scaled(Rational(trial + 1, 7));
    std::string text = print_poly(p);
    EXPECT_EQ(parse_poly(text, r), p) << text;
    EXPECT_EQ(print_poly(parse_poly(text, r)), text);
  }
}

TEST(Scenario, MinimalFillsDefaults) {
  Scenario s = minimal();
  EXPECT_TRUE(s.f_generic);
  EXPECT_EQ(s.N, (NRange{2, 8}));
  EXPECT_FALSE(s.N_explicit);
  EXPECT_TRUE(s.branches.empty());
  EXPECT_FALSE(s.strata.has_value());
  EXPECT_EQ(s.limits, Limits{});
}

TEST(Scenario, BranchGetsTruncationOrder) {
  Scenario s = load_scenario_text(
      R"js({"variables":["x","y","z"],"g":"x^2+y^2","f":"z","branches":[{"name":"b1","param":"(0,0,t)"}]})js");
  ASSERT_EQ(s.branches.size(), 1U);
  EXPECT_GE(s.branches[0].trunc, 1U);
  EXPECT_TRUE(s.branches[0].exact);
  EXPECT_EQ(s.branches[0].host, BranchHost::Sigma);
}

TEST(Scenario, NRanges) {
  EXPECT_EQ(parse_n_range("5"), (NRange{5, 5}));
  EXPECT_EQ(parse_n_range("2..8"), (NRange{2, 8}));
  EXPECT_EQ(parse_n_range("64"), (NRange{64, 64}));
  for (const char* bad : {"1", "65", "8..2", "0..3", "2..99"}) {
    EXPECT_EQ(code_of([&] { parse_n_range(bad); }), ErrorCode::OutOfRange) << bad;
  }
  for (const char* bad : {"2..", "a", "", "3..x"}) {
    EXPECT_EQ(code_of([&] { parse_n_range(bad); }), ErrorCode::Schema) << bad;
  }
}

TEST(Scenario, SchemaViolationsNameTheirPath) {
  const std::vector<std::pair<const char*, const char*>> cases{
      {R"js([])js", ""},
      {R"js({"g":"x"})js", "variables"},
      {R"js({"variables":["x","x"],"g":"x^2"})js", "/variables"},
      {R"js({"variables":["x"],"g":"x^2","colour":1,"limits":{"speed":2}})js", "/limits"},
      {R"js({"variables":["x"],"g":"x^2+1"})js", "/g"},
      {R"js({"variables":["x"],"g":"x^2","N":"1..4"})js", "/N"},
      {R"js({"variables":["x","y"],"g":"x^2","branches":[{"name":"b","param":"(t)"}]})js", "/branches/0/param"},
      {R"js({"variables":["x","y"],"g":"x^2","branches":[{"name":"b","param":"(0,t)"},{"name":"b","param":"(t,0)"}]})js",
       "/branches/1/name"},
      {R"js({"variables":["x"]})js", ""},
  };
  for (const auto& [doc, path] : cases) {
    try {
      load_scenario_text(doc);
      ADD_FAILURE() << doc;
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find(path), std::string::npos) << doc << " -> " << e.what();
    }
  }
}

TEST(Scenario, MalformedJsonIsASchemaError) {
  EXPECT_EQ(code_of([] { load_scenario_text("{\"variables\": [\"x\""); }), ErrorCode::Schema);
}

TEST(Scenario, DanglingReferencesAreRejected) {
  const char* unknown_branch = R"js({"variables":["x","y"],"strata":{"dim":1,"records":[
      {"name":"X_reg","dim":1,"eu":1,"branches":["nowhere"],"chi":{"l-fibre":2}}]}})js";
  EXPECT_EQ(code_of([&] { load_scenario_text(unknown_branch); }), ErrorCode::DanglingReference);
  const char* unknown_stratum = R"js({"variables":["x","y"],"strata":{"dim":1,"records":[
      {"name":"X_reg","dim":1,"eu":1,"boundary":["ghost"],"chi":{"l-fibre":2}}]}})js";
  EXPECT_EQ(code_of([&] { load_scenario_text(unknown_stratum); }), ErrorCode::DanglingReference);
  const char* duplicate = R"js({"variables":["x","y"],"strata":{"dim":1,"records":[
      {"name":"A","dim":1,"eu":1},{"name":"A","dim":0,"eu":1}]}})js";
  try {
    load_scenario_text(duplicate);
    ADD_FAILURE() << "duplicate stratum names accepted";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("'A'"), std::string::npos) << e.what();
  }
}

TEST(Scenario, UnknownKeysAreKeptAsMetadata) {
  Scenario s = load_scenario_text(R"js({"variables":["x"],"g":"x^2","name":"demo","notes":[1,2]})js");
  EXPECT_EQ(s.metadata["name"], "demo");
  EXPECT_EQ(s.metadata["notes"], json::array({1, 2}));
}

TEST(Scenario, LoadOfSaveIsIdentityOnEveryFixture) {
  for (const auto& name : list_fixtures()) {
    Scenario s = load_fixture(name).scenario;
    json saved = save_scenario(s);
    Scenario back = load_scenario(saved);
    EXPECT_TRUE(back == s) << name;
    EXPECT_EQ(save_scenario(back).dump(), saved.dump()) << name;
  }
}

TEST(Scenario, PolynomialsOfEveryFixtureRoundTrip) {
  for (const auto& name : list_fixtures()) {
    Scenario s = load_fixture(name).scenario;
    for (const auto* p : {s.g ? &*s.g : nullptr, s.f ? &*s.f : nullptr}) {
      if (p == nullptr) continue;
      EXPECT_EQ(parse_poly(print_poly(*p), s.ring), *p) << name;
    }
  }
}

TEST(Scenario, FileLoadingReportsMissingFiles) {
  EXPECT_EQ(code_of([] { load_scenario_file("/nonexistent/scenario.json"); }), ErrorCode::Schema);
}

TEST(Scenario, SchemaDocumentCoversEverySavedKey) {
  std::ifstream in(std::string(GERM_DOCS_DIR) + "/scenario.schema.json");
  ASSERT_TRUE(in.good());
  json schema = json::parse(in);
  const json& props = schema["properties"];
  for (const auto& name : list_fixtures()) {
    json saved = save_scenario(load_fixture(name).scenario);
    for (const auto& [key, value] : saved.items()) {
      if (load_fixture(name).scenario.metadata.contains(key)) continue;
      EXPECT_TRUE(props.contains(key)) << name << " saves '" << key << "'";
    }
    if (saved.contains("strata")) {
      for (const auto& [key, value] : saved["strata"]["records"][0].items()) {
        EXPECT_TRUE(schema["$defs"]["stratum"]["properties"].contains(key)) << key;
      }
    }
  }
}
