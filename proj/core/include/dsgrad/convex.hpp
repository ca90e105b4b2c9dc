#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dsgrad/common.hpp"
#include "dsgrad/rng.hpp"
#include "dsgrad/validation.hpp"

namespace dsgrad {

// ---------------------------------------------------------------------------
// Local objectives.  All kinds are convex by construction: quadratics carry a
// positive semidefinite P, l1 terms carry nonnegative weights.  Subgradients
// at kinks use a fixed deterministic selection so runs are reproducible:
// l1 contributes 0 on coordinates sitting exactly at the shift point, and
// max-affine returns the lowest-index maximizing piece.
// ---------------------------------------------------------------------------

class LocalObjective;

// f(x) = c.x + b
struct Affine {
  Vector c;
  double b = 0.0;
};

// f(x) = 0.5 x'Px + c.x + b, P symmetric positive semidefinite
struct Quadratic {
  Matrix P;
  Vector c;
  double b = 0.0;
};

// f(x) = sum_j w_j |x_j - shift_j|, w_j >= 0
struct L1Shift {
  Vector w;
  Vector shift;
};

// f(x) = max_r (c_r.x + b_r)
struct MaxAffine {
  std::vector<Affine> pieces;
};

// f(x) = sum of member objectives
struct SumOf {
  std::vector<LocalObjective> parts;
};

class LocalObjective {
 public:
  using Node = std::variant<Affine, Quadratic, L1Shift, MaxAffine, SumOf>;

  LocalObjective(Affine f);      // NOLINT: implicit by design
  LocalObjective(Quadratic f);   // NOLINT
  LocalObjective(L1Shift f);     // NOLINT
  LocalObjective(MaxAffine f);   // NOLINT
  LocalObjective(SumOf f);       // NOLINT

  const Node& node() const { return node_; }
  int dimension() const { return dim_; }

 private:
  Node node_;
  int dim_;
};

double value(const LocalObjective& f, const Vector& x);
Vector subgradient(const LocalObjective& f, const Vector& x);

// Exact sup of ||g|| over all of R^m when the kind admits one (affine,
// max-affine, l1, and sums of those); nullopt for kinds whose subgradients
// grow without bound (quadratic with P != 0).
std::optional<double> exact_subgradient_bound(const LocalObjective& f);

// ---------------------------------------------------------------------------
// Constraint sets.  Closed and convex by construction; every kind except
// FullSpace is bounded.  Projections are exact: clamp, radial scaling,
// merged boxes, and for HalfspaceBox a bisection on the cut multiplier of
// the projection's KKT system.
// ---------------------------------------------------------------------------

struct FullSpace {
  int dim;
};

struct Box {
  Vector lo;
  Vector hi;
};

struct Ball {
  Vector center;
  double radius;
};

// Box intersected with { a.x <= beta }.
struct HalfspaceBox {
  Box box;
  Vector a;
  double beta;
};

struct IntersectionOfBoxes {
  std::vector<Box> boxes;
};

class ConstraintSet {
 public:
  using Node =
      std::variant<FullSpace, Box, Ball, HalfspaceBox, IntersectionOfBoxes>;

  ConstraintSet(FullSpace s);            // NOLINT
  ConstraintSet(Box s);                  // NOLINT
  ConstraintSet(Ball s);                 // NOLINT
  ConstraintSet(HalfspaceBox s);         // NOLINT
  ConstraintSet(IntersectionOfBoxes s);  // NOLINT

  const Node& node() const { return node_; }
  int dimension() const { return dim_; }
  bool is_full_space() const {
    return std::holds_alternative<FullSpace>(node_);
  }

  // Smallest axis-aligned box containing the set; nullopt for FullSpace.
  std::optional<Box> bounding_box() const;

  // A point in the set (used to seed feasibility searches and Dykstra).
  Vector interior_anchor() const;

 private:
  Node node_;
  int dim_;
};

Vector project(const ConstraintSet& X, const Vector& x);
bool contains(const ConstraintSet& X, const Vector& x, double tol);

// Euclidean projection onto the intersection of several sets via cyclic
// Dykstra; exact single-pass merge when every member is a box.  Throws if
// the sweep budget is exhausted, which signals an empty or ill-posed
// intersection.
Vector project_intersection(const std::vector<ConstraintSet>& sets,
                            const Vector& x);

// ---------------------------------------------------------------------------
// Problem data: n agents, one objective and one constraint set each, plus
// the declared uniform subgradient bound G (assumption A8).
// ---------------------------------------------------------------------------

struct ProblemSpec {
  int dimension = 0;
  std::vector<LocalObjective> objectives;
  std::vector<ConstraintSet> constraints;
  double subgradient_bound = 0.0;  // G
  // Required for certification in unconstrained mode; optional sampling
  // region elsewhere.
  std::optional<Box> sampling_box;

  int agents() const { return static_cast<int>(objectives.size()); }
  bool constrained() const;

  // Structural checks: consistent dimensions, all-or-none FullSpace
  // constraints, nonempty intersection in constrained mode (certified by
  // finding a feasible point), G >= certified bound.  Throws
  // std::invalid_argument on the first failure.
  void validate(std::uint64_t seed = 0x5eedULL, int samples = 10000) const;

  // A point in the intersection of all constraint sets (constrained mode).
  Vector feasible_point() const;
};

// Report-producing counterpart of ProblemSpec::validate for the experiment
// front-end: structural problems come back as "problem" violations,
// uncertifiable feasibility as "assumption-6", and an insufficient declared
// G as "assumption-8"; the certified bound is echoed as a note.
ValidationReport validate_problem(const ProblemSpec& spec,
                                  std::uint64_t seed = 0x5eedULL,
                                  int samples = 10000);

// Max ||subgradient(f_i, x)|| over `samples` points of each agent's
// constraint set (or the sampling box when unconstrained).  Exact closed
// forms replace sampling for affine/max-affine/l1 kinds; quadratics over a
// box are maximized over the box corners (||Px + c|| is convex, so the max
// sits at an extreme point).  Throws when unconstrained quadratics have no
// sampling box: no finite bound exists.
double certify_subgradient_bound(const ProblemSpec& spec, int samples,
                                 std::uint64_t seed);

// Weighted global objective sum_i q_i f_i(x).
double weighted_value(const ProblemSpec& spec, const Vector& q,
                      const Vector& x);

}  // namespace dsgrad
