#pragma once
// Verification reports: named checks with expected/computed values, JSON or
// text rendering, nonzero exit at CLI level when anything fails.

#include <string>
#include <vector>

namespace dpz {

struct CheckResult {
  std::string name;
  std::string status;  // "pass", "fail", "bounded-pass", "skip"
  std::string expected, computed, note;
};

struct VerificationReport {
  std::string title;
  std::vector<CheckResult> checks;

  void add(const std::string& name, bool pass, const std::string& expected,
           const std::string& computed, const std::string& note = "",
           bool bounded = false);
  void skip(const std::string& name, const std::string& note);
  bool ok() const;
  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace dpz
