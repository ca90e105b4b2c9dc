#include "dsgrad/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dsgrad/rng.hpp"

namespace dsgrad {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

double diameter(const Matrix& x) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = i + 1; j < x.rows(); ++j)
      worst = std::max(worst, (x.row(i) - x.row(j)).norm());
  return worst;
}

Matrix initial_states(const RunConfig& config) {
  const int n = config.problem.agents();
  const int m = config.problem.dimension;
  const bool constrained = config.problem.constrained();
  Matrix x(n, m);
  switch (config.init) {
    case InitKind::Zeros:
      x.setZero();
      if (constrained)
        for (int i = 0; i < n; ++i)
          x.row(i) = project(config.problem.constraints[static_cast<std::size_t>(i)],
                             Vector::Zero(m))
                         .transpose();
      return x;
    case InitKind::SeededUniform: {
      // Per-agent streams keyed off a tag so the draws never collide with
      // the graph generator's (seed, round) streams.
      const std::uint64_t base = Rng::mix(config.seed, 0x696e6974ULL);
      for (int i = 0; i < n; ++i) {
        Rng rng(base, static_cast<std::uint64_t>(i));
        Vector draw(m);
        if (constrained) {
          const auto& X = config.problem.constraints[static_cast<std::size_t>(i)];
          const Box box = *X.bounding_box();
          for (int j = 0; j < m; ++j) draw[j] = rng.uniform(box.lo[j], box.hi[j]);
          x.row(i) = project(X, draw).transpose();
        } else {
          for (int j = 0; j < m; ++j) draw[j] = rng.uniform(-1.0, 1.0);
          x.row(i) = draw.transpose();
        }
      }
      return x;
    }
    case InitKind::Explicit:
      require(config.init_x.rows() == n && config.init_x.cols() == m,
              "run config: explicit init must be one m-vector per agent");
      require(config.init_x.allFinite(),
              "run config: explicit init must be finite");
      if (constrained)
        for (int i = 0; i < n; ++i) {
          const Vector xi = config.init_x.row(i).transpose();
          if (!contains(config.problem.constraints[static_cast<std::size_t>(i)],
                        xi, kFeasibilityTol)) {
            std::ostringstream msg;
            msg << "run config: explicit init for agent " << i
                << " is outside its constraint set";
            throw std::invalid_argument(msg.str());
          }
        }
      return config.init_x;
  }
  throw std::logic_error("run config: unknown init kind");
}

double infeasibility(const ProblemSpec& spec, const Matrix& x) {
  if (!spec.constrained()) return 0.0;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Vector xi = x.row(i).transpose();
    const auto& X = spec.constraints[static_cast<std::size_t>(i)];
    worst = std::max(worst, (xi - project(X, xi)).norm());
  }
  return worst;
}

}  // namespace

StepResult step(const Matrix& x, const WeightMatrix& A, const Vector& alphas,
                const ProblemSpec& spec) {
  const int n = spec.agents();
  const int m = spec.dimension;
  require(x.rows() == n && x.cols() == m, "step: state shape mismatch");
  require(A.n() == n, "step: weight matrix size mismatch");
  require(alphas.size() == n, "step: one step size per agent required");

  StepResult r;
  r.v.noalias() = A.entries * x;
  r.g.resize(n, m);
  r.x_next.resize(n, m);
  for (int i = 0; i < n; ++i) {
    const Vector vi = r.v.row(i).transpose();
    const Vector gi =
        subgradient(spec.objectives[static_cast<std::size_t>(i)], vi);
    r.g.row(i) = gi.transpose();
    const Vector moved = vi - alphas[i] * gi;
    const auto& X = spec.constraints[static_cast<std::size_t>(i)];
    r.x_next.row(i) =
        (X.is_full_space() ? moved : project(X, moved)).transpose();
  }
  return r;
}

RunTrace run(const RunConfig& config) {
  const ProblemSpec& spec = config.problem;
  const int n = spec.agents();
  require(config.rounds >= 0, "run config: rounds must be >= 0");
  require(config.record_every >= 1, "run config: record_every must be >= 1");
  require(config.graph.agents() == n,
          "run config: graph size does not match the agent count");

  const ValidationReport a7 = validate_assumption7(config.schedule);
  if (!a7.passed() && !config.allow_invalid_schedule)
    throw std::invalid_argument(
        "run config: schedule fails the step-size envelope; set "
        "allow_invalid_schedule to run it as a negative control");

  std::optional<PerAgentSchedule> per_agent;
  if (config.perturbation) {
    require(static_cast<int>(config.perturbation->d.size()) == n,
            "run config: perturbation needs one d per agent");
    per_agent.emplace(config.schedule, *config.perturbation);
  }

  Vector q;
  if (config.q) {
    q = *config.q;
    require(q.size() == n, "run config: q size mismatch");
  } else {
    q = compute_left_eigenvector(config.graph).q;
  }

  const bool constrained = spec.constrained();
  const bool unique_min = config.oracle && config.oracle->unique_minimizer;

  Matrix x = initial_states(config);
  RunTrace trace;

  const auto alphas_at = [&](std::int64_t k) {
    Vector alphas(n);
    if (per_agent)
      for (int i = 0; i < n; ++i) alphas[i] = per_agent->alpha(i, k);
    else
      alphas.setConstant(config.schedule.alpha(k));
    return alphas;
  };

  const auto make_record = [&](std::int64_t k, const Matrix& xs,
                               const StepResult& sr, const Vector& alphas,
                               const Vector& y, double fy,
                               double infeas) {
    RoundRecord rec;
    rec.k = k;
    rec.x = xs;
    rec.v = sr.v;
    rec.g = sr.g;
    rec.y = y;
    rec.alpha = config.schedule.alpha(k);
    rec.alpha_used = alphas;
    rec.consensus_diameter = diameter(xs);
    rec.objective_at_y = fy;
    if (config.oracle) {
      rec.weighted_objective_gap = fy - config.oracle->f_star;
      if (unique_min) rec.dist_to_opt = (y - config.oracle->x_star).norm();
    }
    rec.max_infeasibility = infeas;
    return rec;
  };

  double best_fy = std::numeric_limits<double>::infinity();
  double worst_infeas = 0.0;
  double worst_residual = 0.0;

  Vector y = Vector::Zero(spec.dimension);
  Vector expected_y;
  std::int64_t k = 0;
  StepResult sr;
  for (;; ++k) {
    y.setZero();
    for (int i = 0; i < n; ++i) y += q[i] * x.row(i).transpose();
    const double fy = weighted_value(spec, q, y);
    best_fy = std::min(best_fy, fy);
    const double infeas = infeasibility(spec, x);
    worst_infeas = std::max(worst_infeas, infeas);

    const Vector alphas = alphas_at(k);
    const WeightMatrix A = config.graph.matrix(static_cast<int>(k));
    sr = step(x, A, alphas, spec);

    if (!constrained) {
      // The update is linear without projections, so the weighted average
      // must follow y - sum_i q_i alpha_i g_i exactly.
      if (k > 0)
        worst_residual =
            std::max(worst_residual, (y - expected_y).cwiseAbs().maxCoeff());
      expected_y = y;
      for (int i = 0; i < n; ++i)
        expected_y -= q[i] * alphas[i] * sr.g.row(i).transpose();
    }

    const bool record = (k % config.record_every == 0) || k == config.rounds;
    if (record)
      trace.records.push_back(make_record(k, x, sr, alphas, y, fy, infeas));

    if (k == config.rounds) break;
    x = sr.x_next;
    if (!x.allFinite()) {
      std::ostringstream msg;
      msg << "run aborted: non-finite state after round " << k
          << " (diverging iterates)";
      throw std::runtime_error(msg.str());
    }
  }

  RunSummary& s = trace.summary;
  s.rounds = config.rounds;
  s.constrained = constrained;
  s.schedule_class = config.schedule.classification().label();
  s.final_consensus_diameter = trace.records.back().consensus_diameter;
  s.final_objective_at_y = trace.records.back().objective_at_y;
  s.final_y = y;
  s.q = q;
  s.max_infeasibility = worst_infeas;
  if (constrained) {
    const Vector repaired = project_intersection(spec.constraints, y);
    s.final_y_infeasibility = (y - repaired).norm();
    if (config.oracle)
      s.final_gap = weighted_value(spec, q, repaired) - config.oracle->f_star;
  } else {
    s.final_y_infeasibility = 0.0;
    s.max_recursion_residual = worst_residual;
    if (config.oracle)
      s.final_gap = s.final_objective_at_y - config.oracle->f_star;
  }
  if (config.oracle) {
    s.best_gap = best_fy - config.oracle->f_star;
    if (unique_min) s.final_dist_to_opt = (y - config.oracle->x_star).norm();
  }
  return trace;
}

double weighted_average_recursion_check(const RunTrace& trace,
                                        const LeftEigenvector& q) {
  require(trace.records.size() >= 2,
          "recursion check: trace needs at least two records");
  if (trace.summary.constrained)
    throw std::invalid_argument(
        "recursion check: only unconstrained traces satisfy the exact "
        "recursion");
  double worst = 0.0;
  for (std::size_t t = 0; t + 1 < trace.records.size(); ++t) {
    const RoundRecord& cur = trace.records[t];
    const RoundRecord& next = trace.records[t + 1];
    require(next.k == cur.k + 1,
            "recursion check: trace must be recorded every round");
    Vector expected = cur.y;
    for (Eigen::Index i = 0; i < cur.g.rows(); ++i)
      expected -= q.q[i] * cur.alpha_used[i] * cur.g.row(i).transpose();
    worst = std::max(worst, (next.y - expected).cwiseAbs().maxCoeff());
  }
  return worst;
}

double consensus_error(const RoundRecord& record) {
  return diameter(record.x);
}

}  // namespace dsgrad
