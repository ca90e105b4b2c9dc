#pragma once

#include <string>

#include "dsgrad/engine.hpp"

namespace dsgrad {

// %.17g: enough digits to round-trip an IEEE double exactly, so identical
// runs serialize to identical bytes.
std::string format_float(double v);

// One row per recorded round with the pinned column order
//   k, alpha, consensus_diameter, objective_at_y, weighted_objective_gap,
//   dist_to_opt, max_infeasibility, y0, ..., y{m-1}
// Metrics that need an absent oracle are written as nan.
std::string trace_to_csv(const RunTrace& trace);

// Binary-mode whole-file helpers; throw std::runtime_error on IO failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace dsgrad
