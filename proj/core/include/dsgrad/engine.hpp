#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsgrad/common.hpp"
#include "dsgrad/convex.hpp"
#include "dsgrad/graph.hpp"
#include "dsgrad/oracle.hpp"
#include "dsgrad/schedule.hpp"

namespace dsgrad {

// Snapshot of round k.  x holds the estimates entering the round (row i is
// agent i), v the mixed local averages v_i(k) = sum_j a_ij(k) x_j(k), g the
// subgradients of f_i evaluated at v_i(k), alpha_used the per-agent steps
// alpha_i(k); these are the quantities the transition to round k+1 uses.
struct RoundRecord {
  std::int64_t k = 0;
  Matrix x;
  Matrix v;
  Matrix g;
  Vector y;           // weighted average sum_i q_i x_i(k)
  double alpha = 0.0;  // base step alpha(k)
  Vector alpha_used;   // n entries, per-agent steps
  double consensus_diameter = 0.0;
  double objective_at_y = 0.0;
  // Present when an oracle solution is attached to the run.
  std::optional<double> weighted_objective_gap;  // f(y) - f_star
  std::optional<double> dist_to_opt;  // |y - x_star|, unique minimizer only
  // max_i dist(x_i, X_i); zero in unconstrained mode.  Projection keeps
  // every agent in its own set, which is what this metric certifies.
  double max_infeasibility = 0.0;
};

enum class InitKind { Zeros, SeededUniform, Explicit };

struct RunConfig {
  ProblemSpec problem;
  GraphSequence graph;
  StepSchedule schedule;
  // When set, agent i uses alpha(k) * (1 + d_i / (k+1)^r).
  std::optional<PerturbationSpec> perturbation;
  std::int64_t rounds = 1;
  InitKind init = InitKind::SeededUniform;
  // Explicit init: one row per agent; must lie in X_i (constrained mode).
  Matrix init_x;
  std::int64_t record_every = 1;
  std::uint64_t seed = 0;
  // Lets negative controls run schedules that fail the step-size envelope.
  bool allow_invalid_schedule = false;
  // Ground truth for the gap metrics; omitted metrics stay unset.
  std::optional<OracleSolution> oracle;
  // Left eigenvector; computed from the graph when absent.
  std::optional<Vector> q;
};

struct RunSummary {
  std::int64_t rounds = 0;
  bool constrained = false;
  std::string schedule_class;
  double final_consensus_diameter = 0.0;
  double final_objective_at_y = 0.0;
  // f at the feasibility-repaired final average (projection of y(K) onto
  // the intersection in constrained mode, y(K) itself otherwise) minus
  // f_star.  Present when an oracle is attached.
  std::optional<double> final_gap;
  // Best f(y(k)) - f_star over every executed round.
  std::optional<double> best_gap;
  double final_y_infeasibility = 0.0;  // dist(y(K), intersection of X_i)
  double max_infeasibility = 0.0;      // worst per-round agent infeasibility
  // Exact-recursion residual max_k |y(k+1) - (y(k) - sum_i q_i alpha_i(k)
  // g_i(k))|_inf, tracked online for unconstrained runs.
  std::optional<double> max_recursion_residual;
  // |y(K) - x_star|, set when the oracle declares a unique minimizer.
  std::optional<double> final_dist_to_opt;
  Vector final_y;
  Vector q;
};

struct RunTrace {
  std::vector<RoundRecord> records;
  RunSummary summary;
};

struct StepResult {
  Matrix x_next;
  Matrix v;
  Matrix g;
};

// One synchronous round: v_i = sum_j a_ij x_j; g_i = subgradient of f_i at
// v_i; x_i' = P_{X_i}(v_i - alphas_i * g_i).
StepResult step(const Matrix& x, const WeightMatrix& A, const Vector& alphas,
                const ProblemSpec& spec);

// Executes config.rounds rounds and records round 0, every record_every-th
// round, and the final round.  Fully deterministic given the config and
// seed.  Throws std::runtime_error when a state becomes non-finite.
RunTrace run(const RunConfig& config);

// max_k |y(k+1) - (y(k) - sum_i q_i alpha_i(k) g_i(k))|_inf over a trace
// recorded every round.  The identity is exact algebra only without
// projections, so constrained traces are rejected.
double weighted_average_recursion_check(const RunTrace& trace,
                                        const LeftEigenvector& q);

// Max pairwise distance max_{i,j} |x_i - x_j|.
double consensus_error(const RoundRecord& record);

}  // namespace dsgrad
