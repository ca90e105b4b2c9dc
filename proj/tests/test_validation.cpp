#include <doctest.h>

#include "dsgrad/validation.hpp"

using dsgrad::ValidationReport;

TEST_CASE("empty report passes") {
  ValidationReport r;
  CHECK(r.passed());
  r.note("informational only");
  CHECK(r.passed());
}

TEST_CASE("a failure flips the verdict until waived") {
  ValidationReport r;
  r.fail("assumption-7", "step size does not vanish");
  CHECK_FALSE(r.passed());
  CHECK(r.waive({"assumption-7"}) == 1);
  CHECK(r.passed());
  CHECK(r.violations.size() == 1);
  CHECK(r.violations[0].waived);
}

TEST_CASE("waiving an unrelated check changes nothing") {
  ValidationReport r;
  r.fail("assumption-3", "entry below eta");
  CHECK(r.waive({"assumption-7"}) == 0);
  CHECK_FALSE(r.passed());
}

TEST_CASE("merge concatenates violations and notes") {
  ValidationReport a;
  a.fail("x", "first");
  a.note("note a");
  ValidationReport b;
  b.fail("y", "second");
  b.note("note b");
  a.merge(b);
  CHECK(a.violations.size() == 2);
  CHECK(a.notes.size() == 2);
  CHECK_FALSE(a.passed());
}

TEST_CASE("to_string names every violation and the verdict") {
  ValidationReport r;
  r.fail("assumption-1", "union graph not strongly connected");
  r.note("schedule class: general");
  const std::string s = r.to_string();
  CHECK(s.find("assumption-1") != std::string::npos);
  CHECK(s.find("union graph not strongly connected") != std::string::npos);
  CHECK(s.find("schedule class: general") != std::string::npos);
  CHECK(s.find("FAIL") != std::string::npos);
  CHECK(ValidationReport{}.to_string().find("PASS") != std::string::npos);
}
