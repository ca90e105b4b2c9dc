#include "dsgrad/validation.hpp"

#include <algorithm>
#include <sstream>

namespace dsgrad {

int ValidationReport::waive(const std::vector<std::string>& checks) {
  int matched = 0;
  for (auto& v : violations) {
    if (!v.waived &&
        std::find(checks.begin(), checks.end(), v.check) != checks.end()) {
      v.waived = true;
      ++matched;
    }
  }
  return matched;
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << (v.waived ? "WAIVED " : "FAIL   ") << '[' << v.check << "] "
        << v.message << '\n';
  }
  for (const auto& n : notes) {
    out << "note   " << n << '\n';
  }
  out << (passed() ? "validation: PASS" : "validation: FAIL") << '\n';
  return out.str();
}

}  // namespace dsgrad
