#include "germkit/fixtures.hpp"

#include <map>
#include <regex>

namespace germ {

namespace detail {
const std::map<std::string, std::string>& fixture_table();
}

using json = nlohmann::ordered_json;

namespace {

Fixture from_scenario(const std::string& name, Scenario s) {
  Fixture f;
  f.name = name;
  json& meta = s.metadata;
  if (meta.contains("description")) f.description = meta["description"].get<std::string>();
  if (meta.contains("expected")) f.expected = meta["expected"];
  if (meta.contains("oracles")) f.oracles = meta["oracles"];
  f.scenario = std::move(s);
  return f;
}

}  // namespace

std::vector<std::string> list_fixtures() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::fixture_table()) out.push_back(name);
  return out;
}

const std::string& fixture_text(const std::string& name) {
  const auto& table = detail::fixture_table();
  auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::UnknownFixture, "no bundled fixture named '" + name + "'");
  return it->second;
}

Fixture brieskorn_fixture(unsigned a, unsigned b, unsigned c) {
  for (unsigned e : {a, b, c}) {
    if (e < 2 || e > 9) throw Error(ErrorCode::UnknownFixture, "Brieskorn exponents must lie in 2..9");
  }
  std::string name = "brieskorn-" + std::to_string(a) + "-" + std::to_string(b) + "-" + std::to_string(c);
  long mu = long(a - 1) * (b - 1) * (c - 1);
  json doc;
  doc["name"] = name;
  doc["description"] = "Brieskorn-Pham germ x^" + std::to_string(a) + " + y^" + std::to_string(b) + " + z^" +
                       std::to_string(c) + " with f = z";
  doc["expected"] = {{"mu", mu}, {"sigma_dim", 0}, {"lambda0", mu}, {"lambda1", 0}, {"chi_g", 1 + mu}};
  doc["oracles"] = {{"mu", "Brieskorn-Pham product (a-1)(b-1)(c-1)"},
                    {"lambda0", "isolated germ: lambda0 = mu"},
                    {"chi_g", "Milnor fibre is a bouquet of mu 2-spheres"}};
  doc["variables"] = {"x", "y", "z"};
  doc["g"] = "x^" + std::to_string(a) + " + y^" + std::to_string(b) + " + z^" + std::to_string(c);
  doc["f"] = "z";
  return from_scenario(name, load_scenario(doc));
}

Fixture load_fixture(const std::string& name) {
  static const std::regex family("brieskorn-([0-9])-([0-9])-([0-9])");
  const auto& table = detail::fixture_table();
  if (auto it = table.find(name); it != table.end()) {
    try {
      return from_scenario(name, load_scenario_text(it->second));
    } catch (const Error& e) {
      throw Error(e.code(), "fixture '" + name + "': " + e.detail());
    }
  }
  std::smatch m;
  if (std::regex_match(name, m, family)) {
    return brieskorn_fixture(std::stoul(m[1]), std::stoul(m[2]), std::stoul(m[3]));
  }
  throw Error(ErrorCode::UnknownFixture, "no bundled fixture named '" + name + "'");
}

}  // namespace germ
