#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>

#include "dsgrad/rng.hpp"
#include "dsgrad/trace_io.hpp"

using namespace dsgrad;

TEST_CASE("float formatting round-trips doubles exactly") {
  CHECK(format_float(0.1) == "0.10000000000000001");
  CHECK(format_float(1.0) == "1");
  CHECK(format_float(-0.5) == "-0.5");
  const std::string nan_text = format_float(
      std::numeric_limits<double>::quiet_NaN());
  CHECK(nan_text == "nan");

  Rng rng(99);
  for (int t = 0; t < 10000; ++t) {
    const double v = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0));
    CHECK(std::strtod(format_float(v).c_str(), nullptr) == v);
  }
}

namespace {

RunTrace tiny_trace() {
  RunTrace trace;
  RoundRecord rec;
  rec.k = 0;
  rec.alpha = 0.1;
  rec.alpha_used = Vector::Constant(2, 0.1);
  rec.consensus_diameter = 0.25;
  rec.objective_at_y = 2.0;
  rec.max_infeasibility = 0.0;
  rec.y = Vector::Zero(2);
  rec.y << 0.5, -0.5;
  trace.records.push_back(rec);
  rec.k = 1;
  rec.weighted_objective_gap = 0.125;
  rec.dist_to_opt = 0.0625;
  trace.records.push_back(rec);
  return trace;
}

}  // namespace

TEST_CASE("trace csv pins its header and writes nan for absent metrics") {
  const std::string csv = trace_to_csv(tiny_trace());
  const std::string header =
      "k,alpha,consensus_diameter,objective_at_y,weighted_objective_gap,"
      "dist_to_opt,max_infeasibility,y0,y1";
  REQUIRE(csv.substr(0, header.size()) == header);

  // Row for round 0 carries nan gaps (no oracle), round 1 carries values.
  const auto first_row_at = csv.find('\n') + 1;
  const auto second_row_at = csv.find('\n', first_row_at) + 1;
  const std::string row0 = csv.substr(first_row_at, second_row_at - first_row_at - 1);
  CHECK(row0 ==
        "0,0.10000000000000001,0.25,2,nan,nan,0,0.5,-0.5");
  const std::string row1 = csv.substr(second_row_at);
  CHECK(row1 ==
        "1,0.10000000000000001,0.25,2,0.125,0.0625,0,0.5,-0.5\n");
}

TEST_CASE("an empty trace is just the scalar header") {
  const std::string csv = trace_to_csv(RunTrace{});
  CHECK(csv ==
        "k,alpha,consensus_diameter,objective_at_y,weighted_objective_gap,"
        "dist_to_opt,max_infeasibility\n");
}

TEST_CASE("whole-file helpers round-trip bytes and report failures") {
  const auto dir = std::filesystem::temp_directory_path() / "dsgrad-io-test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "blob.csv").string();
  const std::string payload = "a,b\n1,2\r\nraw\n";
  write_text_file(path, payload);
  CHECK(read_text_file(path) == payload);
  CHECK_THROWS_AS(read_text_file((dir / "absent.csv").string()),
                  std::runtime_error);
  CHECK_THROWS_AS(write_text_file((dir / "no-such-dir" / "x.csv").string(), ""),
                  std::runtime_error);
  std::filesystem::remove_all(dir);
}
