#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace germ {

enum class VerdictStatus { Pass, Fail, OutOfRange, Skipped };
std::string_view verdict_status_name(VerdictStatus s);

/// One evaluated identity. Both sides are always reported; for SKIPPED
/// verdicts they are 0 and `note` says which input was missing.
struct Verdict {
  std::string identity;
  VerdictStatus status = VerdictStatus::Skipped;
  long left = 0;
  long right = 0;
  std::string note;
};

/// PASS iff left == right.
Verdict make_verdict(std::string identity, long left, long right, std::string note = {});
Verdict skipped(std::string identity, std::string why);

nlohmann::ordered_json verdict_json(const Verdict& v);
std::string verdict_line(const Verdict& v);

}  // namespace germ
