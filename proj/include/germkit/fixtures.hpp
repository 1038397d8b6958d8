#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "germkit/scenario.hpp"

namespace germ {

/// A bundled scenario with the numbers it must reproduce. `expected` is
/// compared against invariant_report by subset; `oracles` names the
/// closed-form source of each expected number.
struct Fixture {
  std::string name;
  std::string description;
  Scenario scenario;
  nlohmann::ordered_json expected;
  nlohmann::ordered_json oracles;
};

/// Names of the bundled fixtures, sorted.
std::vector<std::string> list_fixtures();

/// The raw JSON text of a bundled fixture.
const std::string& fixture_text(const std::string& name);

/// A bundled fixture, or a member of the Brieskorn family named
/// "brieskorn-a-b-c" (2 <= a, b, c <= 9). Throws UNKNOWN-FIXTURE.
Fixture load_fixture(const std::string& name);

/// g = x^a + y^b + z^c with f = z; expects mu = (a-1)(b-1)(c-1).
Fixture brieskorn_fixture(unsigned a, unsigned b, unsigned c);

}  // namespace germ
