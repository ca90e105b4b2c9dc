#include "dsgrad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

namespace dsgrad {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Direct inequality membership (no Dykstra), exact for the supported zoo.
bool satisfies(const ConstraintSet& X, const Vector& x, double tol) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FullSpace>) {
          return true;
        } else if constexpr (std::is_same_v<T, Box>) {
          return (x.array() >= node.lo.array() - tol).all() &&
                 (x.array() <= node.hi.array() + tol).all();
        } else if constexpr (std::is_same_v<T, Ball>) {
          return (x - node.center).norm() <= node.radius + tol;
        } else if constexpr (std::is_same_v<T, HalfspaceBox>) {
          return (x.array() >= node.box.lo.array() - tol).all() &&
                 (x.array() <= node.box.hi.array() + tol).all() &&
                 node.a.dot(x) <= node.beta + tol * node.a.norm();
        } else {
          for (const Box& b : node.boxes)
            if (!((x.array() >= b.lo.array() - tol).all() &&
                  (x.array() <= b.hi.array() + tol).all()))
              return false;
          return true;
        }
      },
      X.node());
}

// Grid region: intersection of per-agent bounding boxes (constrained) or
// the sampling box (unconstrained).
Box grid_region(const ProblemSpec& spec) {
  if (spec.constrained()) {
    Box region = *spec.constraints.front().bounding_box();
    for (std::size_t i = 1; i < spec.constraints.size(); ++i) {
      const Box b = *spec.constraints[i].bounding_box();
      region.lo = region.lo.cwiseMax(b.lo);
      region.hi = region.hi.cwiseMin(b.hi);
    }
    require((region.lo.array() <= region.hi.array()).all(),
            "grid oracle: feasible region is empty");
    return region;
  }
  require(spec.sampling_box.has_value(),
          "grid oracle: unconstrained mode needs a sampling box");
  return *spec.sampling_box;
}

// Grid coordinates lo, lo+res, ..., plus the endpoint when the extent is
// not an exact multiple of the resolution, so no feasible point is farther
// than `res` from the grid along any axis.
std::vector<double> axis_coords(double lo, double hi, double res) {
  std::vector<double> coords;
  const auto steps = static_cast<std::int64_t>(std::floor((hi - lo) / res + 1e-9));
  coords.reserve(static_cast<std::size_t>(steps) + 2);
  for (std::int64_t t = 0; t <= steps; ++t) coords.push_back(lo + res * t);
  if (coords.back() < hi - 1e-12 * std::max(1.0, std::abs(hi)))
    coords.push_back(hi);
  return coords;
}

bool any_membership_test_needed(const ProblemSpec& spec) {
  if (!spec.constrained()) return false;
  // When every set is a box (or box intersection) the grid region already
  // equals the feasible set.
  for (const auto& X : spec.constraints)
    if (!std::holds_alternative<Box>(X.node()) &&
        !std::holds_alternative<IntersectionOfBoxes>(X.node()))
      return true;
  return false;
}

}  // namespace

OracleSolution solve_grid(const ProblemSpec& spec, const Vector& q,
                          double resolution) {
  require(spec.dimension <= 2, "grid oracle: dimension must be <= 2");
  require(resolution > 0.0, "grid oracle: resolution must be positive");
  require(q.size() == spec.agents(), "grid oracle: q/agents mismatch");

  const Box region = grid_region(spec);
  const bool need_membership = any_membership_test_needed(spec);
  const int m = spec.dimension;

  std::vector<double> xs = axis_coords(region.lo[0], region.hi[0], resolution);
  std::vector<double> ys =
      m == 2 ? axis_coords(region.lo[1], region.hi[1], resolution)
             : std::vector<double>{0.0};

  Vector x(m);
  Vector best_x(m);
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (double yv : ys) {
    if (m == 2) x[1] = yv;
    for (double xv : xs) {
      x[0] = xv;
      if (need_membership) {
        bool ok = true;
        for (const auto& X : spec.constraints)
          if (!satisfies(X, x, 0.0)) {
            ok = false;
            break;
          }
        if (!ok) continue;
      }
      double value = 0.0;
      for (int i = 0; i < spec.agents(); ++i)
        value += q[i] * dsgrad::value(spec.objectives[static_cast<std::size_t>(i)], x);
      // Strict < keeps the first grid point in scan order on ties.
      if (value < best) {
        best = value;
        best_x = x;
        found = true;
      }
    }
  }
  require(found, "grid oracle: no feasible grid point in the region");

  OracleSolution sol;
  sol.x_star = best_x;
  sol.f_star = best;
  sol.method = "grid";
  sol.certified_gap =
      spec.subgradient_bound * resolution * std::sqrt(static_cast<double>(m));
  return sol;
}

OracleSolution solve_centralized(const ProblemSpec& spec, const Vector& q,
                                 std::int64_t budget) {
  require(budget >= 1, "centralized oracle: budget must be >= 1");
  require(q.size() == spec.agents(), "centralized oracle: q/agents mismatch");

  const bool constrained = spec.constrained();
  const double G = spec.subgradient_bound;

  Vector z;
  if (constrained)
    z = spec.feasible_point();
  else if (spec.sampling_box)
    z = 0.5 * (spec.sampling_box->lo + spec.sampling_box->hi);
  else
    z = Vector::Zero(spec.dimension);

  Vector best_x = z;
  double best = weighted_value(spec, q, z);
  double tail_lo = best;
  double tail_hi = best;
  const std::int64_t tail_start = budget / 10;

  Vector gsum(spec.dimension);
  for (std::int64_t k = 0; k < budget; ++k) {
    gsum.setZero();
    for (int i = 0; i < spec.agents(); ++i)
      gsum += q[i] *
              subgradient(spec.objectives[static_cast<std::size_t>(i)], z);
    const double alpha = (1.0 / G) / std::sqrt(static_cast<double>(k + 1));
    z -= alpha * gsum;
    if (constrained)
      z = project_intersection(spec.constraints, z);
    else if (spec.sampling_box)
      for (Eigen::Index j = 0; j < z.size(); ++j)
        z[j] = std::min(std::max(z[j], spec.sampling_box->lo[j]),
                        spec.sampling_box->hi[j]);
    if (!z.allFinite())
      throw std::runtime_error(
          "centralized oracle: iterates diverged (declare a sampling box "
          "for unconstrained problems)");
    const double value = weighted_value(spec, q, z);
    if (value < best) {
      best = value;
      best_x = z;
    }
    if (k >= tail_start) {
      tail_lo = std::min(tail_lo, value);
      tail_hi = std::max(tail_hi, value);
    }
  }

  OracleSolution sol;
  sol.x_star = best_x;
  sol.f_star = best;
  sol.method = "centralized-subgradient";
  if (spec.dimension <= 2 &&
      (constrained || spec.sampling_box.has_value())) {
    // Cross-check against the grid: min f >= grid best minus its
    // certificate, so the gap of our best point follows.
    const Box region = grid_region(spec);
    const double extent = (region.hi - region.lo).maxCoeff();
    const double res = std::max(1e-3, extent / 4000.0);
    const OracleSolution grid = solve_grid(spec, q, res);
    sol.certified_gap =
        std::max(0.0, best - (grid.f_star - grid.certified_gap));
  } else {
    sol.certified_gap = std::max(0.0, tail_hi - tail_lo);
  }
  return sol;
}

OracleSolution closed_form_solution(const ProblemSpec& spec, const Vector& q,
                                    Vector x_star) {
  require(x_star.size() == spec.dimension,
          "closed-form oracle: dimension mismatch");
  if (spec.constrained()) {
    for (std::size_t i = 0; i < spec.constraints.size(); ++i)
      require(satisfies(spec.constraints[i], x_star, kFeasibilityTol),
              "closed-form oracle: declared minimizer is infeasible");
  }
  OracleSolution sol;
  sol.f_star = weighted_value(spec, q, x_star);
  sol.x_star = std::move(x_star);
  sol.method = "closed-form";
  sol.certified_gap = 0.0;
  return sol;
}

}  // namespace dsgrad
