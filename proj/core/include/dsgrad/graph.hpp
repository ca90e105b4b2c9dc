#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsgrad/common.hpp"
#include "dsgrad/validation.hpp"

namespace dsgrad {

// Row-stochastic mixing matrix for one round: entry (i, j) is the weight
// agent i puts on agent j's estimate.
struct WeightMatrix {
  Matrix entries;

  int n() const { return static_cast<int>(entries.rows()); }
};

// Rows sum to 1 within kRowSumTol and no entry is negative.  The report
// carries per-row deviations; throws on non-square or non-finite input.
ValidationReport validate_row_stochastic(const WeightMatrix& A);

// True iff every column also sums to 1 within kRowSumTol (doubly
// stochastic), i.e. the graph is balanced.
bool check_balanced(const WeightMatrix& A);

// Positive stochastic q with q'A(k) = q' for every matrix in a sequence.
struct LeftEigenvector {
  Vector q;
};

enum class GraphKind { Fixed, PeriodicSwitching, SeededRandomSwitching };

// A deterministic sequence of mixing matrices A(k), k = 0, 1, 2, ...
// Immutable after construction; matrix(k) is a pure function of the
// construction parameters and k, so instances are safe to share.
class GraphSequence {
 public:
  // The same matrix every round.
  static GraphSequence fixed(Matrix A, double eta = kDefaultEta);

  // Cycles through the given matrices; window defaults to the cycle length.
  static GraphSequence periodic(std::vector<Matrix> cycle,
                                double eta = kDefaultEta, int window = 0);

  // Periodic pairwise-gossip phases: each phase lists disjoint agent pairs
  // that average their estimates with weight 1/2 (Metropolis weights for a
  // matching).  Every phase matrix is symmetric doubly stochastic.
  static GraphSequence periodic_gossip(
      int n, std::vector<std::vector<std::pair<int, int>>> phases,
      double eta = kDefaultEta);

  // Seeded random pairwise gossip.  Round k always hosts ring pair
  // (k mod n, k+1 mod n), so every window of n rounds contains the full
  // ring and joint strong connectivity holds by construction; extra_pairs
  // additional disjoint pairs are drawn per round from the seeded stream.
  static GraphSequence random_gossip(int n, std::uint64_t seed,
                                     int extra_pairs = 1,
                                     double eta = kDefaultEta);

  WeightMatrix matrix(int k) const;

  GraphKind kind() const { return kind_; }
  int agents() const { return n_; }
  double eta() const { return eta_; }
  int window() const { return window_; }
  bool balanced() const { return balanced_; }

 private:
  GraphSequence() = default;

  GraphKind kind_ = GraphKind::Fixed;
  int n_ = 0;
  double eta_ = kDefaultEta;
  int window_ = 1;
  bool balanced_ = false;
  std::vector<Matrix> cycle_;  // Fixed holds one entry; random holds none.
  std::uint64_t seed_ = 0;
  int extra_pairs_ = 0;
};

// True iff the union over rounds [k_start, k_start + B) of arcs
// { j -> i : a_ij(k) > 0 } forms a strongly connected digraph.
bool check_joint_strong_connectivity(const GraphSequence& seq, int k_start,
                                     int B);

// q for the whole sequence: uniform when the sequence is balanced; for a
// fixed unbalanced matrix, the unique positive solution of q'A = q',
// sum q = 1 by direct linear solve.  Throws when the sequence is
// time-varying and not balanced (no common q is guaranteed) or when the
// fixed matrix is not strongly connected.
LeftEigenvector compute_left_eigenvector(const GraphSequence& seq);

// Aggregate checker used by experiment validation: scans the first
// 10*window rounds for row stochasticity, the eta floor, self-loops, and
// per-window joint strong connectivity, then certifies the common left
// eigenvector.  Check ids follow the assumption numbering used across the
// artifact ("assumption-1" connectivity, "assumption-2" eigenvector,
// "assumption-3" eta floor).
ValidationReport validate_graph(const GraphSequence& seq);

// Named fixed topologies.  scheme is "metropolis" (degree-based, doubly
// stochastic) or "uniform" (equal weight on self + neighbors).
Matrix ring_matrix(int n, const std::string& scheme = "metropolis");
Matrix complete_matrix(int n);
Matrix star_matrix(int n, const std::string& scheme = "metropolis");

// Config-file view of a graph; translated by make_graph_sequence.
struct GraphConfig {
  std::string kind;  // "fixed", "periodic", "random"
  int n = 0;
  std::string topology = "matrix";  // fixed: "matrix", "ring", "complete", "star"
  std::string weights = "metropolis";
  std::optional<Matrix> matrix;              // fixed literal
  std::vector<Matrix> cycle;                 // periodic literal
  std::vector<std::vector<std::pair<int, int>>> phases;  // periodic gossip
  std::uint64_t seed = 0;
  int extra_pairs = 1;
  double eta = kDefaultEta;
  int window = 0;  // 0 = derive from the builder
};

// Builds the sequence and rejects configs whose eta exceeds the smallest
// positive weight the builder can construct.
GraphSequence make_graph_sequence(const GraphConfig& config);

}  // namespace dsgrad
