#include "dsgrad/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "dsgrad/rng.hpp"

namespace dsgrad {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

double smallest_positive_entry(const Matrix& A) {
  double smallest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (A(i, j) > 0.0) smallest = std::min(smallest, A(i, j));
  return smallest;
}

// Structural guards only: assumption-level checks (eta floor, self-loops,
// connectivity) are the validator's job so they can be reported and waived.
void require_stochastic(const Matrix& A, double eta, const std::string& who) {
  require(A.rows() == A.cols() && A.rows() >= 1, who + ": matrix must be square");
  require(A.allFinite(), who + ": entries must be finite");
  require(eta > 0.0, who + ": eta must be positive");
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    require(std::abs(A.row(i).sum() - 1.0) < kRowSumTol,
            who + ": rows must sum to 1");
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      require(A(i, j) >= 0.0, who + ": entries must be nonnegative");
  }
}

// Builder-scheme matrices have known weights, so an eta above the smallest
// one is a config contradiction rather than a data observation.
void require_eta_fits(const Matrix& A, double eta, const std::string& who) {
  const double smallest = smallest_positive_entry(A);
  if (smallest < eta) {
    std::ostringstream msg;
    msg << who << ": declared eta=" << eta
        << " exceeds the smallest positive weight " << smallest;
    throw std::invalid_argument(msg.str());
  }
}

// BFS over arcs j -> i (a_ij > 0 means i hears from j).
bool strongly_connected(const std::vector<std::vector<int>>& succ) {
  const int n = static_cast<int>(succ.size());
  for (int start = 0; start < n; ++start) {
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(start);
    seen[start] = 1;
    int reached = 1;
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : succ[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++reached;
          frontier.push(v);
        }
    }
    if (reached != n) return false;
  }
  return true;
}

Matrix gossip_matrix(int n, const std::vector<std::pair<int, int>>& pairs,
                     const std::string& who) {
  Matrix A = Matrix::Identity(n, n);
  std::vector<char> used(n, 0);
  for (const auto& [i, j] : pairs) {
    require(i >= 0 && i < n && j >= 0 && j < n, who + ": pair index out of range");
    require(i != j, who + ": a pair must join two distinct agents");
    require(!used[i] && !used[j], who + ": pairs within a phase must be disjoint");
    used[i] = used[j] = 1;
    A(i, i) = 0.5;
    A(j, j) = 0.5;
    A(i, j) = 0.5;
    A(j, i) = 0.5;
  }
  return A;
}

}  // namespace

ValidationReport validate_row_stochastic(const WeightMatrix& A) {
  const Matrix& M = A.entries;
  if (M.rows() != M.cols() || M.rows() < 1)
    throw std::invalid_argument("weight matrix must be square and nonempty");
  if (!M.allFinite())
    throw std::invalid_argument("weight matrix entries must be finite");

  ValidationReport report;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    const double deviation = std::abs(M.row(i).sum() - 1.0);
    if (deviation >= kRowSumTol) {
      std::ostringstream msg;
      msg << "row " << i << " sums to " << M.row(i).sum()
          << " (deviation " << deviation << " >= " << kRowSumTol << ")";
      report.fail("row-stochastic", msg.str());
    }
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (M(i, j) < 0.0) {
        std::ostringstream msg;
        msg << "entry a_" << i << j << "=" << M(i, j) << " is negative";
        report.fail("row-stochastic", msg.str());
      }
  }
  return report;
}

bool check_balanced(const WeightMatrix& A) {
  const Matrix& M = A.entries;
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    if (std::abs(M.col(j).sum() - 1.0) >= kRowSumTol) return false;
  return true;
}

GraphSequence GraphSequence::fixed(Matrix A, double eta) {
  require_stochastic(A, eta, "fixed graph");
  GraphSequence seq;
  seq.kind_ = GraphKind::Fixed;
  seq.n_ = static_cast<int>(A.rows());
  seq.eta_ = eta;
  seq.window_ = 1;
  seq.balanced_ = check_balanced(WeightMatrix{A});
  seq.cycle_.push_back(std::move(A));
  return seq;
}

GraphSequence GraphSequence::periodic(std::vector<Matrix> cycle, double eta,
                                      int window) {
  require(!cycle.empty(), "periodic graph: needs at least one matrix");
  const Eigen::Index n = cycle.front().rows();
  bool balanced = true;
  for (const Matrix& A : cycle) {
    require(A.rows() == n && A.cols() == n,
            "periodic graph: matrices must share one size");
    require_stochastic(A, eta, "periodic graph");
    balanced = balanced && check_balanced(WeightMatrix{A});
  }
  if (window == 0) window = static_cast<int>(cycle.size());
  require(window >= 1, "periodic graph: window must be >= 1");

  GraphSequence seq;
  seq.kind_ = GraphKind::PeriodicSwitching;
  seq.n_ = static_cast<int>(n);
  seq.eta_ = eta;
  seq.window_ = window;
  seq.balanced_ = balanced;
  seq.cycle_ = std::move(cycle);
  return seq;
}

GraphSequence GraphSequence::periodic_gossip(
    int n, std::vector<std::vector<std::pair<int, int>>> phases, double eta) {
  require(n >= 2, "periodic gossip: needs at least two agents");
  require(!phases.empty(), "periodic gossip: needs at least one phase");
  std::vector<Matrix> cycle;
  cycle.reserve(phases.size());
  for (const auto& phase : phases) {
    cycle.push_back(gossip_matrix(n, phase, "periodic gossip"));
    require_eta_fits(cycle.back(), eta, "periodic gossip");
  }
  return periodic(std::move(cycle), eta);
}

GraphSequence GraphSequence::random_gossip(int n, std::uint64_t seed,
                                           int extra_pairs, double eta) {
  require(n >= 2, "random gossip: needs at least two agents");
  require(extra_pairs >= 0, "random gossip: extra_pairs must be >= 0");
  require(eta > 0.0 && eta <= 0.5,
          "random gossip: declared eta exceeds the smallest constructible "
          "weight 0.5");
  GraphSequence seq;
  seq.kind_ = GraphKind::SeededRandomSwitching;
  seq.n_ = n;
  seq.eta_ = eta;
  seq.window_ = n;
  seq.balanced_ = true;
  seq.seed_ = seed;
  seq.extra_pairs_ = extra_pairs;
  return seq;
}

WeightMatrix GraphSequence::matrix(int k) const {
  require(k >= 0, "graph sequence: round index must be >= 0");
  switch (kind_) {
    case GraphKind::Fixed:
      return WeightMatrix{cycle_.front()};
    case GraphKind::PeriodicSwitching:
      return WeightMatrix{cycle_[static_cast<std::size_t>(k) % cycle_.size()]};
    case GraphKind::SeededRandomSwitching:
      break;
  }
  // Round k hosts ring pair (k mod n, k+1 mod n) plus extra disjoint pairs
  // drawn from a stream keyed by (seed, k), so the matrix is a pure
  // function of the construction parameters and k.
  Matrix A = Matrix::Identity(n_, n_);
  std::vector<char> used(n_, 0);
  const auto apply_pair = [&](int i, int j) {
    used[i] = used[j] = 1;
    A(i, i) = 0.5;
    A(j, j) = 0.5;
    A(i, j) = 0.5;
    A(j, i) = 0.5;
  };
  const int p = k % n_;
  apply_pair(p, (p + 1) % n_);
  Rng rng(seed_, static_cast<std::uint64_t>(k));
  for (int t = 0; t < extra_pairs_; ++t) {
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_)));
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_)));
    if (i != j && !used[i] && !used[j]) apply_pair(i, j);
  }
  return WeightMatrix{std::move(A)};
}

bool check_joint_strong_connectivity(const GraphSequence& seq, int k_start,
                                     int B) {
  require(B >= 1, "joint connectivity: window must be >= 1");
  require(k_start >= 0, "joint connectivity: start round must be >= 0");
  const int n = seq.agents();
  std::vector<std::vector<char>> arc(n, std::vector<char>(n, 0));
  for (int k = k_start; k < k_start + B; ++k) {
    const WeightMatrix A = seq.matrix(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (A.entries(i, j) > 0.0) arc[j][i] = 1;  // information flows j -> i
  }
  std::vector<std::vector<int>> succ(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (arc[u][v]) succ[u].push_back(v);
  return strongly_connected(succ);
}

LeftEigenvector compute_left_eigenvector(const GraphSequence& seq) {
  const int n = seq.agents();
  if (seq.balanced()) {
    return LeftEigenvector{Vector::Constant(n, 1.0 / n)};
  }
  if (seq.kind() != GraphKind::Fixed)
    throw std::invalid_argument(
        "assumption 2 cannot be certified: time-varying sequences must be "
        "balanced for a common left eigenvector to be guaranteed");

  if (!check_joint_strong_connectivity(seq, 0, 1))
    throw std::invalid_argument(
        "left eigenvector: fixed matrix is not strongly connected");

  // Solve q'A = q', sum q = 1: stack (A' - I) minus its last row over the
  // normalization row of ones.
  const Matrix A = seq.matrix(0).entries;
  Matrix M = A.transpose() - Matrix::Identity(n, n);
  M.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs[n - 1] = 1.0;
  const Vector q = M.fullPivLu().solve(rhs);

  const double residual =
      ((q.transpose() * A).transpose() - q).cwiseAbs().maxCoeff();
  if (!(q.minCoeff() > 0.0) || residual >= kEigenvectorResidualTol) {
    std::ostringstream msg;
    msg << "left eigenvector solve failed (min q = " << q.minCoeff()
        << ", residual = " << residual << ")";
    throw std::runtime_error(msg.str());
  }
  return LeftEigenvector{q};
}

ValidationReport validate_graph(const GraphSequence& seq) {
  ValidationReport report;
  const int B = seq.window();
  const int scan = 10 * B;
  const int n = seq.agents();

  // Each distinct cause is reported once, at its first offending round;
  // repeating it for all 10B scanned rounds would drown the report.
  std::vector<std::uint8_t> eta_reported(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::uint8_t> loop_reported(static_cast<std::size_t>(n), 0);
  bool balance_reported = false;
  for (int k = 0; k < scan; ++k) {
    const WeightMatrix A = seq.matrix(k);
    report.merge(validate_row_stochastic(A));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double a = A.entries(i, j);
        if (a > 0.0 && a < seq.eta() &&
            !eta_reported[static_cast<std::size_t>(i) * n + j]) {
          eta_reported[static_cast<std::size_t>(i) * n + j] = 1;
          std::ostringstream msg;
          msg << "Assumption 3 violated: entry a_" << i << j << "(" << k
              << ")=" << a << " < eta=" << seq.eta();
          report.fail("assumption-3", msg.str());
        }
      }
      if (A.entries(i, i) <= 0.0 && !loop_reported[static_cast<std::size_t>(i)]) {
        loop_reported[static_cast<std::size_t>(i)] = 1;
        std::ostringstream msg;
        msg << "self-loop missing: a_" << i << i << "(" << k << ") = 0";
        if (seq.kind() == GraphKind::Fixed)
          report.note(msg.str() + " (tolerated for a fixed graph)");
        else
          report.fail("self-loops", msg.str());
      }
    }
    if (seq.balanced() && !balance_reported && !check_balanced(A)) {
      balance_reported = true;
      std::ostringstream msg;
      msg << "Assumption 2 violated: sequence claims balance but A(" << k
          << ") is not doubly stochastic";
      report.fail("assumption-2", msg.str());
    }
  }

  for (int p = 0; p < 10; ++p) {
    if (!check_joint_strong_connectivity(seq, p * B, B)) {
      std::ostringstream msg;
      msg << "Assumption 1 violated: union graph over rounds [" << p * B
          << ", " << (p + 1) * B << ") is not strongly connected";
      report.fail("assumption-1", msg.str());
    }
  }

  try {
    const LeftEigenvector lev = compute_left_eigenvector(seq);
    double worst = 0.0;
    for (int k = 0; k < scan; ++k) {
      const Matrix A = seq.matrix(k).entries;
      worst = std::max(worst, ((lev.q.transpose() * A).transpose() - lev.q)
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    if (worst >= 1e-9) {
      std::ostringstream msg;
      msg << "Assumption 2 violated: left eigenvector residual " << worst
          << " over the scanned rounds";
      report.fail("assumption-2", msg.str());
    } else {
      std::ostringstream note;
      note << "common left eigenvector certified, residual " << worst;
      report.note(note.str());
    }
  } catch (const std::exception& e) {
    report.fail("assumption-2",
                std::string("Assumption 2 violated: ") + e.what());
  }

  return report;
}

Matrix ring_matrix(int n, const std::string& scheme) {
  require(n >= 3, "ring: needs at least three agents");
  require(scheme == "metropolis" || scheme == "uniform",
          "ring: unknown weight scheme '" + scheme + "'");
  // Every vertex has degree 2, so Metropolis and uniform-neighbor weights
  // coincide at 1/3.
  Matrix A = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 1.0 / 3.0;
    A(i, (i + 1) % n) = 1.0 / 3.0;
    A(i, (i + n - 1) % n) = 1.0 / 3.0;
  }
  return A;
}

Matrix complete_matrix(int n) {
  require(n >= 2, "complete graph: needs at least two agents");
  return Matrix::Constant(n, n, 1.0 / n);
}

Matrix star_matrix(int n, const std::string& scheme) {
  require(n >= 3, "star: needs at least three agents");
  Matrix A = Matrix::Zero(n, n);
  if (scheme == "metropolis") {
    // Hub degree n-1, leaf degree 1: every hub-leaf edge gets 1/n, so the
    // matrix is doubly stochastic.
    A(0, 0) = 1.0 / n;
    for (int l = 1; l < n; ++l) {
      A(0, l) = 1.0 / n;
      A(l, 0) = 1.0 / n;
      A(l, l) = 1.0 - 1.0 / n;
    }
  } else if (scheme == "uniform") {
    // Equal weight over self + neighbors; row stochastic but unbalanced.
    for (int l = 0; l < n; ++l) A(0, l) = 1.0 / n;
    for (int l = 1; l < n; ++l) {
      A(l, 0) = 0.5;
      A(l, l) = 0.5;
    }
  } else {
    throw std::invalid_argument("star: unknown weight scheme '" + scheme + "'");
  }
  return A;
}

GraphSequence make_graph_sequence(const GraphConfig& config) {
  if (config.kind == "fixed") {
    Matrix A;
    if (config.topology == "matrix") {
      require(config.matrix.has_value(),
              "graph config: fixed/matrix needs an explicit matrix");
      A = *config.matrix;
    } else if (config.topology == "ring") {
      A = ring_matrix(config.n, config.weights);
    } else if (config.topology == "complete") {
      A = complete_matrix(config.n);
    } else if (config.topology == "star") {
      A = star_matrix(config.n, config.weights);
    } else {
      throw std::invalid_argument("graph config: unknown fixed topology '" +
                                  config.topology + "'");
    }
    // Literal matrices skip the fit check: sub-eta entries there are an
    // assumption violation for validate_graph to report, not a config error.
    if (config.topology != "matrix")
      require_eta_fits(A, config.eta, "graph config");
    return GraphSequence::fixed(std::move(A), config.eta);
  }
  if (config.kind == "periodic") {
    if (!config.phases.empty()) {
      require(config.n >= 2, "graph config: periodic gossip needs n >= 2");
      std::vector<Matrix> cycle;
      cycle.reserve(config.phases.size());
      for (const auto& phase : config.phases) {
        cycle.push_back(gossip_matrix(config.n, phase, "periodic gossip"));
        require_eta_fits(cycle.back(), config.eta, "graph config");
      }
      return GraphSequence::periodic(std::move(cycle), config.eta,
                                     config.window);
    }
    require(!config.cycle.empty(),
            "graph config: periodic needs phases or an explicit cycle");
    return GraphSequence::periodic(config.cycle, config.eta, config.window);
  }
  if (config.kind == "random") {
    require(config.n >= 2, "graph config: random needs n >= 2");
    return GraphSequence::random_gossip(config.n, config.seed,
                                        config.extra_pairs, config.eta);
  }
  throw std::invalid_argument("graph config: unknown kind '" + config.kind +
                              "'");
}

}  // namespace dsgrad
