#pragma once

#include <string>
#include <vector>

namespace dsgrad {

// One failed (or waived) check.  `check` is a stable identifier, e.g.
// "row-stochastic" or "assumption-7"; `message` is the human-readable
// diagnostic naming the offending quantity.
struct Violation {
  std::string check;
  std::string message;
  bool waived = false;
};

// Result of running one or more validators.  Informational lines (row-sum
// deviations, schedule class labels, ...) go into `notes` and never affect
// the verdict.
struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool passed() const {
    for (const auto& v : violations)
      if (!v.waived) return false;
    return true;
  }

  void fail(std::string check, std::string message) {
    violations.push_back({std::move(check), std::move(message), false});
  }

  void note(std::string message) { notes.push_back(std::move(message)); }

  // Folds `other` into this report.
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }

  // Marks violations of the named checks as waived; returns how many
  // violations matched.
  int waive(const std::vector<std::string>& checks);

  std::string to_string() const;
};

}  // namespace dsgrad
