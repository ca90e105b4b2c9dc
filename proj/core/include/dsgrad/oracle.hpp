#pragma once

#include <cstdint>
#include <string>

#include "dsgrad/common.hpp"
#include "dsgrad/convex.hpp"

namespace dsgrad {

// Centralized ground truth for min sum_i q_i f_i over the intersection of
// the constraint sets.  certified_gap is an upper bound on
// f(x_star) - min f, so f_star - certified_gap is a valid lower bound on
// the optimum.
struct OracleSolution {
  Vector x_star;
  double f_star = 0.0;
  std::string method;  // "grid", "centralized-subgradient", "closed-form"
  double certified_gap = 0.0;
  // Set when the problem is declared to have a unique minimizer; gates the
  // distance-to-optimum metric, which is meaningless for flat optima.
  bool unique_minimizer = false;
};

// Exhaustive evaluation of the weighted objective on a grid of the given
// resolution over the feasible region (dimension <= 2 only).  Feasible
// region: intersection of constraint-set bounding boxes with exact
// membership tests, or the sampling box in unconstrained mode.  Ties go to
// the first grid point in row-major scan order.  certified_gap is
// G * resolution * sqrt(m).
OracleSolution solve_grid(const ProblemSpec& spec, const Vector& q,
                          double resolution);

// Projected subgradient on the centralized weighted problem with step
// (1/G)/sqrt(k+1), reporting the best visited point.  Iterates are kept in
// the sampling box in unconstrained mode (the box must contain the
// minimizer; the grid cross-check certifies the answer over the same box).
// certified_gap comes from a grid cross-check when m <= 2, otherwise from
// the objective oscillation over the last nine tenths of the budget.
OracleSolution solve_centralized(const ProblemSpec& spec, const Vector& q,
                                 std::int64_t budget);

// Wraps a minimizer known in closed form; f_star is evaluated from the
// spec, certified_gap is zero.
OracleSolution closed_form_solution(const ProblemSpec& spec, const Vector& q,
                                    Vector x_star);

}  // namespace dsgrad
