// Microbenchmarks for the hot paths: the synchronous round (with and
// without projections), Dykstra's alternating projection, mixing-matrix
// generation, the grid oracle, and a short end-to-end run.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "dsgrad/convex.hpp"
#include "dsgrad/engine.hpp"
#include "dsgrad/graph.hpp"
#include "dsgrad/oracle.hpp"
#include "dsgrad/rng.hpp"

namespace {

using dsgrad::Matrix;
using dsgrad::Vector;

// Alternating quadratic and l1 objectives in 2-D; staggered boxes when
// constrained.  Deterministic in n so timings are comparable across runs.
dsgrad::ProblemSpec mixed_problem(int n, bool boxes) {
  dsgrad::ProblemSpec spec;
  spec.dimension = 2;
  spec.subgradient_bound = 8.0;
  spec.sampling_box =
      dsgrad::Box{Vector::Constant(2, -1.0), Vector::Constant(2, 1.0)};
  dsgrad::Rng rng(7);
  for (int i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      Matrix P(2, 2);
      P << 1.0, 0.25, 0.25, 0.5;
      Vector c(2);
      c << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
      spec.objectives.push_back(dsgrad::Quadratic{P, c, 0.0});
    } else {
      Vector w(2), shift(2);
      w << 0.3, 0.2;
      shift << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
      spec.objectives.push_back(dsgrad::L1Shift{w, shift});
    }
    if (boxes) {
      Vector lo(2), hi(2);
      lo << -1.0 - 0.1 * (i % 3), -1.0;
      hi << 1.0, 1.0 + 0.1 * (i % 3);
      spec.constraints.push_back(dsgrad::Box{lo, hi});
    } else {
      spec.constraints.push_back(dsgrad::FullSpace{2});
    }
  }
  return spec;
}

Matrix random_states(int n, int m, std::uint64_t seed) {
  dsgrad::Rng rng(seed);
  Matrix x(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) x(i, j) = rng.uniform(-1.0, 1.0);
  return x;
}

void BM_step_unconstrained(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dsgrad::ProblemSpec spec = mixed_problem(n, false);
  const dsgrad::WeightMatrix A{dsgrad::complete_matrix(n)};
  const Matrix x = random_states(n, 2, 3);
  const Vector alphas = Vector::Constant(n, 0.01);
  for (auto _ : state) {
    dsgrad::StepResult sr = dsgrad::step(x, A, alphas, spec);
    benchmark::DoNotOptimize(sr.x_next);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_step_unconstrained)->Arg(5)->Arg(25)->Arg(100);

void BM_step_boxes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dsgrad::ProblemSpec spec = mixed_problem(n, true);
  const dsgrad::WeightMatrix A{dsgrad::complete_matrix(n)};
  const Matrix x = random_states(n, 2, 3);
  const Vector alphas = Vector::Constant(n, 0.01);
  for (auto _ : state) {
    dsgrad::StepResult sr = dsgrad::step(x, A, alphas, spec);
    benchmark::DoNotOptimize(sr.x_next);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_step_boxes)->Arg(5)->Arg(25)->Arg(100);

void BM_halfspace_box_projection(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const dsgrad::ConstraintSet set = dsgrad::HalfspaceBox{
      dsgrad::Box{Vector::Constant(m, 0.0), Vector::Constant(m, 1.0)},
      Vector::Ones(m), 1.0};
  const Vector outside = Vector::Constant(m, 2.0);
  for (auto _ : state) {
    Vector p = dsgrad::project(set, outside);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_halfspace_box_projection)->Arg(2)->Arg(16);

void BM_dykstra_box_ball(benchmark::State& state) {
  std::vector<dsgrad::ConstraintSet> sets;
  sets.push_back(
      dsgrad::Box{Vector::Constant(2, 0.0), Vector::Constant(2, 2.0)});
  sets.push_back(dsgrad::Ball{Vector::Zero(2), 1.0});
  const Vector outside = Vector::Constant(2, 2.0);
  for (auto _ : state) {
    Vector p = dsgrad::project_intersection(sets, outside);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_dykstra_box_ball);

void BM_project_intersection_boxes(benchmark::State& state) {
  std::vector<dsgrad::ConstraintSet> sets;
  for (int i = 0; i < 4; ++i) {
    Vector lo(2), hi(2);
    lo << -1.0 + 0.1 * i, -1.0 - 0.1 * i;
    hi << 1.0 + 0.1 * i, 1.0 - 0.05 * i;
    sets.push_back(dsgrad::Box{lo, hi});
  }
  const Vector far = Vector::Constant(2, 3.0);
  for (auto _ : state) {
    Vector p = dsgrad::project_intersection(sets, far);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_project_intersection_boxes);

void BM_gossip_matrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dsgrad::GraphSequence g = dsgrad::GraphSequence::random_gossip(n, 11, 2);
  int k = 0;
  for (auto _ : state) {
    dsgrad::WeightMatrix A = g.matrix(k);
    benchmark::DoNotOptimize(A.entries);
    k = (k + 1) % 1024;
  }
}
BENCHMARK(BM_gossip_matrix)->Arg(8)->Arg(64);

void BM_grid_oracle(benchmark::State& state) {
  const dsgrad::ProblemSpec spec = mixed_problem(4, true);
  const Vector q = Vector::Constant(4, 0.25);
  const double resolution = 1e-2;
  for (auto _ : state) {
    dsgrad::OracleSolution sol = dsgrad::solve_grid(spec, q, resolution);
    benchmark::DoNotOptimize(sol.f_star);
  }
}
BENCHMARK(BM_grid_oracle);

void BM_run_1000_rounds(benchmark::State& state) {
  const int n = 5;
  dsgrad::RunConfig cfg{mixed_problem(n, false),
                        dsgrad::GraphSequence::random_gossip(n, 11, 1),
                        dsgrad::StepSchedule::polynomial(1.0, 1.0, 0.5),
                        {},
                        1000,
                        dsgrad::InitKind::SeededUniform,
                        {},
                        100,
                        17,
                        false,
                        {},
                        {}};
  for (auto _ : state) {
    dsgrad::RunTrace trace = dsgrad::run(cfg);
    benchmark::DoNotOptimize(trace.summary.final_y);
  }
  state.SetItemsProcessed(state.iterations() * 1000 * n);
}
BENCHMARK(BM_run_1000_rounds);

}  // namespace

BENCHMARK_MAIN();
