#include "germkit/verdict.hpp"

namespace germ {

std::string_view verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "PASS";
    case VerdictStatus::Fail: return "FAIL";
    case VerdictStatus::OutOfRange: return "OUT-OF-RANGE";
    case VerdictStatus::Skipped: return "SKIPPED";
  }
  return "UNKNOWN";
}

Verdict make_verdict(std::string identity, long left, long right, std::string note) {
  return {std::move(identity), left == right ? VerdictStatus::Pass : VerdictStatus::Fail, left, right,
          std::move(note)};
}

Verdict skipped(std::string identity, std::string why) {
  return {std::move(identity), VerdictStatus::Skipped, 0, 0, std::move(why)};
}

nlohmann::ordered_json verdict_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["identity"] = v.identity;
  j["status"] = std::string(verdict_status_name(v.status));
  j["left"] = v.left;
  j["right"] = v.right;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

std::string verdict_line(const Verdict& v) {
  std::string s = std::string(verdict_status_name(v.status)) + "  " + v.identity;
  if (v.status != VerdictStatus::Skipped) s += ": " + std::to_string(v.left) + " vs " + std::to_string(v.right);
  if (!v.note.empty()) s += "  (" + v.note + ")";
  return s;
}

}  // namespace germ
