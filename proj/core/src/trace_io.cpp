#include "dsgrad/trace_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dsgrad {

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_to_csv(const RunTrace& trace) {
  std::string out;
  out.reserve(trace.records.size() * 160 + 128);
  out += "k,alpha,consensus_diameter,objective_at_y,weighted_objective_gap,"
         "dist_to_opt,max_infeasibility";
  const Eigen::Index m =
      trace.records.empty() ? 0 : trace.records.front().y.size();
  for (Eigen::Index j = 0; j < m; ++j) {
    out += ",y";
    out += std::to_string(j);
  }
  out += '\n';

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (const RoundRecord& rec : trace.records) {
    char head[32];
    std::snprintf(head, sizeof head, "%" PRId64, rec.k);
    out += head;
    out += ',';
    out += format_float(rec.alpha);
    out += ',';
    out += format_float(rec.consensus_diameter);
    out += ',';
    out += format_float(rec.objective_at_y);
    out += ',';
    out += format_float(rec.weighted_objective_gap.value_or(nan));
    out += ',';
    out += format_float(rec.dist_to_opt.value_or(nan));
    out += ',';
    out += format_float(rec.max_infeasibility);
    for (Eigen::Index j = 0; j < rec.y.size(); ++j) {
      out += ',';
      out += format_float(rec.y[j]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  if (f.bad()) throw std::runtime_error("read failed: " + path);
  return buf.str();
}

}  // namespace dsgrad
