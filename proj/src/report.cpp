#include "dpz/report.hpp"

#include <sstream>

#include "json.hpp"

namespace dpz {

void VerificationReport::add(const std::string& name, bool pass,
                             const std::string& expected,
                             const std::string& computed,
                             const std::string& note, bool bounded) {
  checks.push_back({name, pass ? (bounded ? "bounded-pass" : "pass") : "fail",
                    expected, computed, note});
}

void VerificationReport::skip(const std::string& name, const std::string& note) {
  checks.push_back({name, "skip", "", "", note});
}

bool VerificationReport::ok() const {
  for (auto& c : checks)
    if (c.status == "fail") return false;
  return true;
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["title"] = title;
  j["ok"] = ok();
  j["checks"] = nlohmann::json::array();
  for (auto& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    if (!c.expected.empty()) jc["expected"] = c.expected;
    if (!c.computed.empty()) jc["computed"] = c.computed;
    if (!c.note.empty()) jc["note"] = c.note;
    j["checks"].push_back(jc);
  }
  return j.dump(2);
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "== " << title << " ==\n";
  for (auto& c : checks) {
    os << "  [" << c.status << "] " << c.name;
    if (!c.expected.empty() || !c.computed.empty())
      os << " (expected " << c.expected << ", got " << c.computed << ")";
    if (!c.note.empty()) os << "  -- " << c.note;
    os << "\n";
  }
  os << (ok() ? "OK" : "FAILED") << "\n";
  return os.str();
}

}  // namespace dpz
