#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dsgrad/graph.hpp"

using namespace dsgrad;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix M(2, 2);
  M << a, b, c, d;
  return M;
}

bool doubly_stochastic(const Matrix& A) {
  return validate_row_stochastic(WeightMatrix{A}).passed() &&
         check_balanced(WeightMatrix{A});
}

}  // namespace

TEST_CASE("row stochastic validation reports deviations per row") {
  CHECK(validate_row_stochastic(WeightMatrix{ring_matrix(4)}).passed());

  const auto bad_sum = validate_row_stochastic(
      WeightMatrix{mat2(0.6, 0.5, 0.5, 0.5)});
  REQUIRE_FALSE(bad_sum.passed());
  CHECK(bad_sum.violations.front().check == "row-stochastic");
  CHECK(bad_sum.violations.front().message.find("row 0 sums to 1.1") !=
        std::string::npos);

  const auto negative = validate_row_stochastic(
      WeightMatrix{mat2(1.5, -0.5, 0.5, 0.5)});
  REQUIRE_FALSE(negative.passed());
  CHECK(negative.violations.front().message ==
        "entry a_01=-0.5 is negative");

  Matrix rect(1, 2);
  rect << 0.5, 0.5;
  CHECK_THROWS_AS(validate_row_stochastic(WeightMatrix{rect}),
                  std::invalid_argument);
}

TEST_CASE("balance check looks at column sums only") {
  CHECK_FALSE(check_balanced(WeightMatrix{mat2(0.5, 0.5, 1.0, 0.0)}));
  CHECK(check_balanced(WeightMatrix{complete_matrix(3)}));

  // A column deviation at the tolerance boundary flips the verdict.
  Matrix A = complete_matrix(2);
  A(0, 0) += 1e-11;
  CHECK_FALSE(check_balanced(WeightMatrix{A}));
}

TEST_CASE("left eigenvector of a fixed unbalanced chain") {
  const auto seq = GraphSequence::fixed(mat2(0.5, 0.5, 1.0, 0.0));
  CHECK_FALSE(seq.balanced());
  const Vector q = compute_left_eigenvector(seq).q;
  CHECK(std::abs(q[0] - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(q[1] - 1.0 / 3.0) <= 1e-12);
}

TEST_CASE("left eigenvector of a uniform-weight star") {
  const auto seq = GraphSequence::fixed(star_matrix(4, "uniform"));
  const Vector q = compute_left_eigenvector(seq).q;
  CHECK(std::abs(q[0] - 0.4) <= 1e-12);
  for (int l = 1; l < 4; ++l) CHECK(std::abs(q[l] - 0.2) <= 1e-12);
}

TEST_CASE("balanced sequences get the uniform eigenvector") {
  const auto ring = GraphSequence::fixed(ring_matrix(5));
  CHECK(ring.balanced());
  const Vector q = compute_left_eigenvector(ring).q;
  for (int i = 0; i < 5; ++i) CHECK(q[i] == 0.2);

  const auto gossip = GraphSequence::random_gossip(4, 7);
  CHECK((compute_left_eigenvector(gossip).q.array() == 0.25).all());
}

TEST_CASE("time-varying unbalanced sequences admit no certified eigenvector") {
  std::vector<Matrix> cycle;
  cycle.push_back(mat2(0.5, 0.5, 1.0, 0.0));
  cycle.push_back(Matrix::Identity(2, 2));
  const auto seq = GraphSequence::periodic(std::move(cycle));
  CHECK_FALSE(seq.balanced());
  CHECK_THROWS_AS(compute_left_eigenvector(seq), std::invalid_argument);
}

TEST_CASE("gossip phases build symmetric doubly stochastic matrices") {
  const auto seq = GraphSequence::periodic_gossip(
      5, {{{0, 1}, {2, 3}}, {{1, 2}, {3, 4}}, {{4, 0}}});
  CHECK(seq.window() == 3);
  CHECK(seq.balanced());
  for (int k = 0; k < 6; ++k) {
    const Matrix A = seq.matrix(k).entries;
    CHECK(doubly_stochastic(A));
    CHECK((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  // Cycle length three: round 3 replays round 0.
  CHECK((seq.matrix(3).entries - seq.matrix(0).entries).cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(validate_graph(seq).passed());

  // Overlapping pairs within one phase are rejected.
  CHECK_THROWS_AS(GraphSequence::periodic_gossip(3, {{{0, 1}, {1, 2}}}),
                  std::invalid_argument);
}

TEST_CASE("seeded gossip is deterministic and covers the ring each window") {
  const auto a = GraphSequence::random_gossip(6, 42, 2);
  const auto b = GraphSequence::random_gossip(6, 42, 2);
  CHECK(a.window() == 6);
  bool differs_from_reseed = false;
  const auto c = GraphSequence::random_gossip(6, 43, 2);
  for (int k = 0; k < 20; ++k) {
    const Matrix Ak = a.matrix(k).entries;
    CHECK((Ak - b.matrix(k).entries).cwiseAbs().maxCoeff() == 0.0);
    differs_from_reseed =
        differs_from_reseed ||
        (Ak - c.matrix(k).entries).cwiseAbs().maxCoeff() > 0.0;
    CHECK(doubly_stochastic(Ak));
    // The scheduled ring pair is always present.
    const int p = k % 6;
    CHECK(Ak(p, (p + 1) % 6) == 0.5);
  }
  CHECK(differs_from_reseed);
  for (int w = 0; w < 5; ++w)
    CHECK(check_joint_strong_connectivity(a, 6 * w, 6));
  CHECK(validate_graph(a).passed());
  CHECK_THROWS_AS(a.matrix(-1), std::invalid_argument);
}

TEST_CASE("joint connectivity fails when an agent never hears anyone") {
  std::vector<Matrix> lonely;
  Matrix A = Matrix::Identity(5, 5);
  A(0, 0) = A(1, 1) = 0.5;
  A(0, 1) = A(1, 0) = 0.5;
  A(2, 2) = A(3, 3) = 0.5;
  A(2, 3) = A(3, 2) = 0.5;
  lonely.push_back(std::move(A));
  const auto seq = GraphSequence::periodic(std::move(lonely));
  CHECK_FALSE(check_joint_strong_connectivity(seq, 0, 1));
  const auto report = validate_graph(seq);
  REQUIRE_FALSE(report.passed());
  CHECK(report.violations.front().check == "assumption-1");
  CHECK(report.violations.front().message.find(
            "union graph over rounds [0, 1) is not strongly connected") !=
        std::string::npos);
}

TEST_CASE("eta floor violations name the entry and its first round") {
  // Seven idle rounds, then a matrix with one weight far below the floor.
  std::vector<Matrix> cycle(7, Matrix::Identity(3, 3));
  Matrix tail(3, 3);
  tail << 1.0, 0.0, 0.0,
          0.0, 1.0, 0.0,
          0.49, 0.01, 0.5;
  cycle.push_back(std::move(tail));
  const auto seq = GraphSequence::periodic(std::move(cycle), 0.1);
  const auto report = validate_graph(seq);
  REQUIRE_FALSE(report.passed());

  int eta_hits = 0;
  bool exact = false;
  for (const auto& v : report.violations)
    if (v.check == "assumption-3") {
      ++eta_hits;
      exact = exact ||
              v.message == "Assumption 3 violated: entry a_21(7)=0.01 "
                           "< eta=0.1";
    }
  // One report for the entry despite ten offending scanned rounds.
  CHECK(eta_hits == 1);
  CHECK(exact);
}

TEST_CASE("missing self-loops fail time-varying graphs, noted for fixed") {
  Matrix swap = mat2(0.0, 1.0, 1.0, 0.0);
  const auto fixed = GraphSequence::fixed(swap);
  const auto fixed_report = validate_graph(fixed);
  bool noted = false;
  for (const auto& n : fixed_report.notes)
    noted = noted || n.find("tolerated for a fixed graph") != std::string::npos;
  CHECK(noted);
  for (const auto& v : fixed_report.violations)
    CHECK(v.check != "self-loops");

  std::vector<Matrix> cycle{swap, Matrix::Identity(2, 2)};
  const auto periodic = GraphSequence::periodic(std::move(cycle));
  const auto report = validate_graph(periodic);
  int loop_fails = 0;
  for (const auto& v : report.violations)
    if (v.check == "self-loops") ++loop_fails;
  CHECK(loop_fails == 2);  // once per agent, not per scanned round
}

TEST_CASE("config translation covers the named topologies") {
  GraphConfig ring;
  ring.kind = "fixed";
  ring.topology = "ring";
  ring.n = 5;
  const auto seq = make_graph_sequence(ring);
  CHECK(seq.kind() == GraphKind::Fixed);
  CHECK((seq.matrix(0).entries - ring_matrix(5)).cwiseAbs().maxCoeff() == 0.0);

  GraphConfig rnd;
  rnd.kind = "random";
  rnd.n = 4;
  rnd.seed = 9;
  rnd.extra_pairs = 0;
  const auto rseq = make_graph_sequence(rnd);
  const auto direct = GraphSequence::random_gossip(4, 9, 0);
  for (int k = 0; k < 8; ++k)
    CHECK((rseq.matrix(k).entries - direct.matrix(k).entries)
              .cwiseAbs().maxCoeff() == 0.0);

  GraphConfig unknown;
  unknown.kind = "mesh";
  CHECK_THROWS_AS(make_graph_sequence(unknown), std::invalid_argument);
}

TEST_CASE("builder topologies reject an eta above their smallest weight") {
  GraphConfig cfg;
  cfg.kind = "fixed";
  cfg.topology = "ring";
  cfg.n = 5;
  cfg.eta = 0.4;  // ring weights are 1/3
  CHECK_THROWS_WITH_AS(make_graph_sequence(cfg),
                       doctest::Contains("exceeds the smallest positive"),
                       std::invalid_argument);
  CHECK_THROWS_AS(GraphSequence::random_gossip(4, 1, 1, 0.6),
                  std::invalid_argument);
}
