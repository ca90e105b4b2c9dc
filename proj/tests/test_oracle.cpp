#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dsgrad/oracle.hpp"

using namespace dsgrad;

namespace {

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Two 1-D quadratics (x - 1)^2 and (x + 1)^2; with q = (2/3, 1/3) the
// weighted optimum sits at x = 1/3 with value 8/9.
ProblemSpec two_parabolas() {
  ProblemSpec spec;
  spec.dimension = 1;
  Matrix P(1, 1);
  P << 2.0;
  spec.objectives.push_back(Quadratic{P, vec1(-2.0), 1.0});
  spec.objectives.push_back(Quadratic{P, vec1(2.0), 1.0});
  spec.constraints.push_back(FullSpace{1});
  spec.constraints.push_back(FullSpace{1});
  spec.subgradient_bound = 6.0;  // |2x -+ 2| <= 6 on the sampling box
  spec.sampling_box = Box{vec1(-2.0), vec1(2.0)};
  return spec;
}

Vector two_thirds_q() {
  Vector q(2);
  q << 2.0 / 3.0, 1.0 / 3.0;
  return q;
}

}  // namespace

TEST_CASE("grid oracle pins the weighted optimum of two parabolas") {
  const auto spec = two_parabolas();
  const auto sol = solve_grid(spec, two_thirds_q(), 1e-3);
  CHECK(sol.method == "grid");
  CHECK(std::abs(sol.x_star[0] - 1.0 / 3.0) <= 5e-4);
  // The weighted objective is 8/9 + (x - 1/3)^2, so the grid value sits
  // within res^2 of the optimum.
  CHECK(sol.f_star >= 8.0 / 9.0 - 1e-12);
  CHECK(sol.f_star <= 8.0 / 9.0 + 1e-6);
  CHECK(sol.certified_gap == 6.0 * 1e-3);
  CHECK_FALSE(sol.unique_minimizer);
}

TEST_CASE("grid oracle rejects what it cannot enumerate") {
  auto spec = two_parabolas();
  CHECK_THROWS_AS(solve_grid(spec, two_thirds_q(), 0.0),
                  std::invalid_argument);
  Vector short_q(1);
  short_q << 1.0;
  CHECK_THROWS_AS(solve_grid(spec, short_q, 1e-2), std::invalid_argument);

  spec.sampling_box.reset();
  CHECK_THROWS_AS(solve_grid(spec, two_thirds_q(), 1e-2),
                  std::invalid_argument);

  ProblemSpec big;
  big.dimension = 3;
  Vector c = Vector::Ones(3);
  big.objectives.push_back(Affine{c, 0.0});
  big.constraints.push_back(Box{-c, c});
  big.subgradient_bound = 2.0;
  CHECK_THROWS_AS(solve_grid(big, vec1(1.0), 1e-2), std::invalid_argument);
}

TEST_CASE("grid ties go to the first point in scan order") {
  ProblemSpec flat;
  flat.dimension = 2;
  flat.objectives.push_back(Affine{vec2(0.0, 0.0), 5.0});
  flat.constraints.push_back(Box{vec2(0.0, 0.0), vec2(1.0, 1.0)});
  flat.subgradient_bound = 1.0;
  const auto sol = solve_grid(flat, vec1(1.0), 0.5);
  CHECK((sol.x_star - vec2(0.0, 0.0)).norm() == 0.0);
  CHECK(sol.f_star == 5.0);
}

TEST_CASE("grid membership tests cut non-box feasible sets exactly") {
  ProblemSpec spec;
  spec.dimension = 2;
  spec.objectives.push_back(Affine{vec2(-1.0, 0.0), 0.0});
  spec.objectives.push_back(Affine{vec2(-1.0, 0.0), 0.0});
  spec.constraints.push_back(Ball{vec2(0.0, 0.0), 1.0});
  spec.constraints.push_back(Ball{vec2(0.0, 0.0), 1.0});
  spec.subgradient_bound = 1.0;
  Vector q(2);
  q << 0.5, 0.5;
  const auto sol = solve_grid(spec, q, 0.25);
  // Only (1, 0) attains x0 = 1 inside the disk; box corners are cut away.
  CHECK((sol.x_star - vec2(1.0, 0.0)).norm() == 0.0);
  CHECK(sol.f_star == -1.0);
  CHECK(sol.certified_gap == doctest::Approx(0.25 * std::sqrt(2.0)));
}

TEST_CASE("centralized oracle agrees with the grid cross-check") {
  const auto spec = two_parabolas();
  const auto sol = solve_centralized(spec, two_thirds_q(), 20000);
  CHECK(sol.method == "centralized-subgradient");
  CHECK(std::abs(sol.x_star[0] - 1.0 / 3.0) <= 1e-2);
  CHECK(sol.f_star >= 8.0 / 9.0 - 1e-12);
  CHECK(sol.f_star <= 8.0 / 9.0 + 1e-3);
  CHECK(sol.certified_gap <= 1e-2);
  CHECK_THROWS_AS(solve_centralized(spec, two_thirds_q(), 0),
                  std::invalid_argument);
}

TEST_CASE("closed form wraps a declared minimizer") {
  const auto spec = two_parabolas();
  const auto sol = closed_form_solution(spec, two_thirds_q(), vec1(1.0 / 3.0));
  CHECK(sol.method == "closed-form");
  CHECK(sol.f_star == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
  CHECK(sol.certified_gap == 0.0);

  ProblemSpec boxed;
  boxed.dimension = 1;
  boxed.objectives.push_back(Affine{vec1(1.0), 0.0});
  boxed.constraints.push_back(Box{vec1(0.0), vec1(1.0)});
  boxed.subgradient_bound = 1.0;
  CHECK_THROWS_AS(closed_form_solution(boxed, vec1(1.0), vec1(2.0)),
                  std::invalid_argument);
}
