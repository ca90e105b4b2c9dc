#include "dsgrad/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dsgrad {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_finite(const Vector& v, const std::string& what) {
  require(v.allFinite(), what + ": entries must be finite");
}

void clamp_inplace(const Box& box, Vector& x) {
  for (Eigen::Index j = 0; j < x.size(); ++j)
    x[j] = std::min(std::max(x[j], box.lo[j]), box.hi[j]);
}

Box merge_boxes(const std::vector<Box>& boxes) {
  Box merged = boxes.front();
  for (std::size_t i = 1; i < boxes.size(); ++i) {
    merged.lo = merged.lo.cwiseMax(boxes[i].lo);
    merged.hi = merged.hi.cwiseMin(boxes[i].hi);
  }
  return merged;
}

// Dykstra's alternating projections for a cyclic list of exact projectors.
// Converges to the Euclidean projection of x0 onto the intersection; stops
// when a full sweep moves the iterate by less than kDykstraChangeTol.
Vector dykstra(const std::vector<const ConstraintSet*>& sets,
               const Vector& x0) {
  const std::size_t nsets = sets.size();
  Vector x = x0;
  std::vector<Vector> corrections(nsets, Vector::Zero(x0.size()));
  Vector prev = x;
  for (int sweep = 0; sweep < kDykstraMaxSweeps; ++sweep) {
    prev = x;
    for (std::size_t s = 0; s < nsets; ++s) {
      const Vector z = x + corrections[s];
      x = project(*sets[s], z);
      corrections[s] = z - x;
    }
    if ((x - prev).norm() < kDykstraChangeTol) return x;
  }
  throw std::runtime_error(
      "dykstra: sweep budget exhausted; intersection is empty or ill posed");
}

}  // namespace

// ---------------------------------------------------------------------------
// LocalObjective
// ---------------------------------------------------------------------------

LocalObjective::LocalObjective(Affine f) : node_(std::move(f)) {
  const auto& a = std::get<Affine>(node_);
  require(a.c.size() > 0, "affine: empty coefficient vector");
  require_finite(a.c, "affine");
  require(std::isfinite(a.b), "affine: offset must be finite");
  dim_ = static_cast<int>(a.c.size());
}

LocalObjective::LocalObjective(Quadratic f) : node_(std::move(f)) {
  const auto& q = std::get<Quadratic>(node_);
  require(q.P.rows() == q.P.cols(), "quadratic: P must be square");
  require(q.c.size() == q.P.rows(), "quadratic: c/P dimension mismatch");
  require(q.P.allFinite() && q.c.allFinite() && std::isfinite(q.b),
          "quadratic: entries must be finite");
  const double scale = std::max(1.0, q.P.cwiseAbs().maxCoeff());
  require((q.P - q.P.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * scale,
          "quadratic: P must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q.P);
  require(eig.eigenvalues().minCoeff() >= -1e-9 * scale,
          "quadratic: P must be positive semidefinite");
  dim_ = static_cast<int>(q.c.size());
}

LocalObjective::LocalObjective(L1Shift f) : node_(std::move(f)) {
  const auto& l = std::get<L1Shift>(node_);
  require(l.w.size() > 0 && l.w.size() == l.shift.size(),
          "l1shift: weight/shift dimension mismatch");
  require_finite(l.w, "l1shift");
  require_finite(l.shift, "l1shift");
  require(l.w.minCoeff() >= 0.0, "l1shift: weights must be nonnegative");
  dim_ = static_cast<int>(l.w.size());
}

LocalObjective::LocalObjective(MaxAffine f) : node_(std::move(f)) {
  const auto& ma = std::get<MaxAffine>(node_);
  require(!ma.pieces.empty(), "max-affine: needs at least one piece");
  const Eigen::Index m = ma.pieces.front().c.size();
  for (const auto& piece : ma.pieces) {
    require(piece.c.size() == m, "max-affine: piece dimension mismatch");
    require_finite(piece.c, "max-affine");
    require(std::isfinite(piece.b), "max-affine: offset must be finite");
  }
  dim_ = static_cast<int>(m);
}

LocalObjective::LocalObjective(SumOf f) : node_(std::move(f)) {
  const auto& s = std::get<SumOf>(node_);
  require(!s.parts.empty(), "sum: needs at least one member");
  dim_ = s.parts.front().dimension();
  for (const auto& part : s.parts)
    require(part.dimension() == dim_, "sum: member dimension mismatch");
}

double value(const LocalObjective& f, const Vector& x) {
  return std::visit(
      Overloaded{
          [&](const Affine& a) { return a.c.dot(x) + a.b; },
          [&](const Quadratic& q) {
            // 0.5 x'Px + c.x + b without temporaries; m stays small.
            const Eigen::Index m = x.size();
            double xpx = 0.0;
            for (Eigen::Index j = 0; j < m; ++j) {
              double col = 0.0;
              for (Eigen::Index i = 0; i < m; ++i) col += q.P(i, j) * x[i];
              xpx += col * x[j];
            }
            return 0.5 * xpx + q.c.dot(x) + q.b;
          },
          [&](const L1Shift& l) {
            double s = 0.0;
            for (Eigen::Index j = 0; j < x.size(); ++j)
              s += l.w[j] * std::abs(x[j] - l.shift[j]);
            return s;
          },
          [&](const MaxAffine& ma) {
            double best = ma.pieces.front().c.dot(x) + ma.pieces.front().b;
            for (std::size_t r = 1; r < ma.pieces.size(); ++r)
              best = std::max(best,
                              ma.pieces[r].c.dot(x) + ma.pieces[r].b);
            return best;
          },
          [&](const SumOf& s) {
            double total = 0.0;
            for (const auto& part : s.parts) total += value(part, x);
            return total;
          },
      },
      f.node());
}

Vector subgradient(const LocalObjective& f, const Vector& x) {
  return std::visit(
      Overloaded{
          [&](const Affine& a) -> Vector { return a.c; },
          [&](const Quadratic& q) -> Vector { return q.P * x + q.c; },
          [&](const L1Shift& l) -> Vector {
            Vector g = Vector::Zero(x.size());
            for (Eigen::Index j = 0; j < x.size(); ++j) {
              const double d = x[j] - l.shift[j];
              // Minimal-norm selection at the kink: 0 when x_j hits the
              // shift exactly.
              if (d > 0.0)
                g[j] = l.w[j];
              else if (d < 0.0)
                g[j] = -l.w[j];
            }
            return g;
          },
          [&](const MaxAffine& ma) -> Vector {
            std::size_t best = 0;
            double best_value =
                ma.pieces.front().c.dot(x) + ma.pieces.front().b;
            for (std::size_t r = 1; r < ma.pieces.size(); ++r) {
              const double v = ma.pieces[r].c.dot(x) + ma.pieces[r].b;
              // Strict > keeps the lowest-index maximizer on ties.
              if (v > best_value) {
                best_value = v;
                best = r;
              }
            }
            return ma.pieces[best].c;
          },
          [&](const SumOf& s) -> Vector {
            Vector g = Vector::Zero(x.size());
            for (const auto& part : s.parts) g += subgradient(part, x);
            return g;
          },
      },
      f.node());
}

namespace {

// Per-coordinate envelope |g_j| <= env_j valid for every x, with equality
// achieved at extreme sign patterns; supports affine and l1 members only.
bool coordinate_envelope(const LocalObjective& f, Vector& env) {
  return std::visit(
      Overloaded{
          [&](const Affine& a) {
            env += a.c.cwiseAbs();
            return true;
          },
          [&](const L1Shift& l) {
            env += l.w;
            return true;
          },
          [&](const SumOf& s) {
            for (const auto& part : s.parts)
              if (!coordinate_envelope(part, env)) return false;
            return true;
          },
          [&](const Quadratic&) { return false; },
          [&](const MaxAffine&) { return false; },
      },
      f.node());
}

}  // namespace

std::optional<double> exact_subgradient_bound(const LocalObjective& f) {
  if (const auto* a = std::get_if<Affine>(&f.node())) return a->c.norm();
  if (const auto* l = std::get_if<L1Shift>(&f.node())) return l->w.norm();
  if (const auto* ma = std::get_if<MaxAffine>(&f.node())) {
    double best = 0.0;
    for (const auto& piece : ma->pieces)
      best = std::max(best, piece.c.norm());
    return best;
  }
  if (std::holds_alternative<SumOf>(f.node())) {
    Vector env = Vector::Zero(f.dimension());
    if (coordinate_envelope(f, env)) return env.norm();
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ConstraintSet
// ---------------------------------------------------------------------------

ConstraintSet::ConstraintSet(FullSpace s) : node_(s) {
  require(s.dim >= 1, "full-space: dimension must be >= 1");
  dim_ = s.dim;
}

ConstraintSet::ConstraintSet(Box s) : node_(std::move(s)) {
  const auto& b = std::get<Box>(node_);
  require(b.lo.size() > 0 && b.lo.size() == b.hi.size(),
          "box: lo/hi dimension mismatch");
  require_finite(b.lo, "box");
  require_finite(b.hi, "box");
  require((b.lo.array() <= b.hi.array()).all(), "box: lo must be <= hi");
  dim_ = static_cast<int>(b.lo.size());
}

ConstraintSet::ConstraintSet(Ball s) : node_(std::move(s)) {
  const auto& b = std::get<Ball>(node_);
  require(b.center.size() > 0, "ball: empty center");
  require_finite(b.center, "ball");
  require(std::isfinite(b.radius) && b.radius > 0.0,
          "ball: radius must be positive");
  dim_ = static_cast<int>(b.center.size());
}

ConstraintSet::ConstraintSet(HalfspaceBox s) : node_(std::move(s)) {
  const auto& h = std::get<HalfspaceBox>(node_);
  require(h.box.lo.size() == h.a.size(),
          "halfspace-box: normal/box dimension mismatch");
  require((h.box.lo.array() <= h.box.hi.array()).all(),
          "halfspace-box: lo must be <= hi");
  require_finite(h.a, "halfspace-box");
  require(h.a.norm() > 0.0, "halfspace-box: normal must be nonzero");
  require(std::isfinite(h.beta), "halfspace-box: offset must be finite");
  // Nonempty iff the box point minimizing a.x satisfies the halfspace.
  double min_ax = 0.0;
  for (Eigen::Index j = 0; j < h.a.size(); ++j)
    min_ax += h.a[j] > 0.0 ? h.a[j] * h.box.lo[j] : h.a[j] * h.box.hi[j];
  require(min_ax <= h.beta, "halfspace-box: empty intersection");
  dim_ = static_cast<int>(h.a.size());
}

ConstraintSet::ConstraintSet(IntersectionOfBoxes s) : node_(std::move(s)) {
  const auto& ib = std::get<IntersectionOfBoxes>(node_);
  require(!ib.boxes.empty(), "intersection-of-boxes: needs at least one box");
  const Eigen::Index m = ib.boxes.front().lo.size();
  for (const auto& b : ib.boxes) {
    require(b.lo.size() == m && b.hi.size() == m,
            "intersection-of-boxes: box dimension mismatch");
    require((b.lo.array() <= b.hi.array()).all(),
            "intersection-of-boxes: lo must be <= hi");
  }
  const Box merged = merge_boxes(ib.boxes);
  require((merged.lo.array() <= merged.hi.array()).all(),
          "intersection-of-boxes: empty intersection");
  dim_ = static_cast<int>(m);
}

std::optional<Box> ConstraintSet::bounding_box() const {
  return std::visit(
      Overloaded{
          [&](const FullSpace&) -> std::optional<Box> { return std::nullopt; },
          [&](const Box& b) -> std::optional<Box> { return b; },
          [&](const Ball& b) -> std::optional<Box> {
            Box box;
            box.lo = b.center.array() - b.radius;
            box.hi = b.center.array() + b.radius;
            return box;
          },
          [&](const HalfspaceBox& h) -> std::optional<Box> { return h.box; },
          [&](const IntersectionOfBoxes& ib) -> std::optional<Box> {
            return merge_boxes(ib.boxes);
          },
      },
      node_);
}

Vector ConstraintSet::interior_anchor() const {
  return std::visit(
      Overloaded{
          [&](const FullSpace& s) -> Vector { return Vector::Zero(s.dim); },
          [&](const Box& b) -> Vector { return 0.5 * (b.lo + b.hi); },
          [&](const Ball& b) -> Vector { return b.center; },
          [&](const HalfspaceBox& h) -> Vector {
            Vector mid = 0.5 * (h.box.lo + h.box.hi);
            return project(*this, mid);
          },
          [&](const IntersectionOfBoxes& ib) -> Vector {
            const Box merged = merge_boxes(ib.boxes);
            return 0.5 * (merged.lo + merged.hi);
          },
      },
      node_);
}

Vector project(const ConstraintSet& X, const Vector& x) {
  require(x.allFinite(), "project: point must be finite");
  require(x.size() == X.dimension(), "project: dimension mismatch");
  return std::visit(
      Overloaded{
          [&](const FullSpace&) -> Vector { return x; },
          [&](const Box& b) -> Vector {
            Vector p = x;
            clamp_inplace(b, p);
            return p;
          },
          [&](const Ball& b) -> Vector {
            Vector d = x - b.center;
            const double dist = d.norm();
            if (dist <= b.radius) return x;
            return b.center + (b.radius / dist) * d;
          },
          [&](const HalfspaceBox& h) -> Vector {
            // KKT form: the projection is clamp(x - lambda a) for the
            // smallest lambda >= 0 whose clamped point satisfies the cut.
            // a.clamp(x - lambda a) is continuous and non-increasing in
            // lambda, so bisection finds the multiplier exactly.
            Vector z = x;
            clamp_inplace(h.box, z);
            if (h.a.dot(z) <= h.beta) return z;
            const auto excess = [&](double lambda) {
              Vector y = x - lambda * h.a;
              clamp_inplace(h.box, y);
              return h.a.dot(y) - h.beta;
            };
            // Past the largest clamp breakpoint every moving coordinate is
            // saturated and the cut value equals min over the box, which the
            // constructor certified to be <= beta, so [0, hi] brackets the
            // root.
            double hi = 0.0;
            for (Eigen::Index j = 0; j < h.a.size(); ++j) {
              if (h.a[j] > 0.0)
                hi = std::max(hi, (x[j] - h.box.lo[j]) / h.a[j]);
              else if (h.a[j] < 0.0)
                hi = std::max(hi, (x[j] - h.box.hi[j]) / h.a[j]);
            }
            double lo = 0.0;
            while (true) {
              const double mid = 0.5 * (lo + hi);
              if (mid <= lo || mid >= hi) break;
              (excess(mid) > 0.0 ? lo : hi) = mid;
            }
            Vector y = x - hi * h.a;
            clamp_inplace(h.box, y);
            return y;
          },
          [&](const IntersectionOfBoxes& ib) -> Vector {
            // The intersection of axis-aligned boxes is itself a box, so
            // the projection is an exact clamp.
            Vector pnt = x;
            clamp_inplace(merge_boxes(ib.boxes), pnt);
            return pnt;
          },
      },
      X.node());
}

bool contains(const ConstraintSet& X, const Vector& x, double tol) {
  require(tol >= 0.0, "contains: tolerance must be nonnegative");
  return (x - project(X, x)).norm() <= tol;
}

Vector project_intersection(const std::vector<ConstraintSet>& sets,
                            const Vector& x) {
  require(!sets.empty(), "project_intersection: no sets");
  if (sets.size() == 1) return project(sets.front(), x);

  const bool all_boxes = std::all_of(
      sets.begin(), sets.end(), [](const ConstraintSet& s) {
        return std::holds_alternative<Box>(s.node()) ||
               std::holds_alternative<IntersectionOfBoxes>(s.node());
      });
  if (all_boxes) {
    std::vector<Box> boxes;
    for (const auto& s : sets) {
      if (const auto* b = std::get_if<Box>(&s.node()))
        boxes.push_back(*b);
      else
        for (const auto& bb :
             std::get<IntersectionOfBoxes>(s.node()).boxes)
          boxes.push_back(bb);
    }
    const Box merged = merge_boxes(boxes);
    require((merged.lo.array() <= merged.hi.array()).all(),
            "project_intersection: empty box intersection");
    Vector p = x;
    clamp_inplace(merged, p);
    return p;
  }

  std::vector<const ConstraintSet*> ptrs;
  ptrs.reserve(sets.size());
  for (const auto& s : sets) ptrs.push_back(&s);
  return dykstra(ptrs, x);
}

// ---------------------------------------------------------------------------
// ProblemSpec
// ---------------------------------------------------------------------------

bool ProblemSpec::constrained() const {
  for (const auto& X : constraints)
    if (X.is_full_space()) return false;
  return true;
}

Vector ProblemSpec::feasible_point() const {
  if (!constrained())
    return Vector::Zero(dimension);
  Vector centroid = Vector::Zero(dimension);
  for (const auto& X : constraints) centroid += X.interior_anchor();
  centroid /= static_cast<double>(constraints.size());
  return project_intersection(constraints, centroid);
}

void ProblemSpec::validate(std::uint64_t seed, int samples) const {
  const ValidationReport report = validate_problem(*this, seed, samples);
  if (!report.passed())
    throw std::invalid_argument(report.violations.front().message);
}

ValidationReport validate_problem(const ProblemSpec& spec, std::uint64_t seed,
                                  int samples) {
  ValidationReport report;
  try {
    require(spec.dimension >= 1, "problem: dimension must be >= 1");
    require(!spec.objectives.empty(), "problem: needs at least one agent");
    require(spec.objectives.size() == spec.constraints.size(),
            "problem: one constraint set per objective required");
    for (const auto& f : spec.objectives)
      require(f.dimension() == spec.dimension,
              "problem: objective dimension mismatch");
    for (const auto& X : spec.constraints)
      require(X.dimension() == spec.dimension,
              "problem: constraint dimension mismatch");
    int full = 0;
    for (const auto& X : spec.constraints) full += X.is_full_space() ? 1 : 0;
    require(full == 0 || full == static_cast<int>(spec.constraints.size()),
            "problem: mixed constrained/unconstrained agents are not "
            "supported");
  } catch (const std::exception& e) {
    report.fail("problem", e.what());
    return report;
  }

  if (spec.constrained()) {
    try {
      const Vector z = spec.feasible_point();
      for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
        if (!contains(spec.constraints[i], z, kFeasibilityTol)) {
          std::ostringstream msg;
          msg << "Assumption 6 violated: could not certify a common feasible "
                 "point (set "
              << i << " misses it); the constraint intersection may be empty";
          report.fail("assumption-6", msg.str());
          break;
        }
      }
    } catch (const std::exception& e) {
      report.fail("assumption-6",
                  std::string("Assumption 6 violated: ") + e.what());
    }
  }

  if (!(spec.subgradient_bound > 0.0)) {
    report.fail("assumption-8",
                "Assumption 8 violated: subgradient bound G must be > 0");
    return report;
  }
  try {
    const double certified = certify_subgradient_bound(spec, samples, seed);
    std::ostringstream note;
    note << "certified subgradient bound " << certified << " (declared G = "
         << spec.subgradient_bound << ")";
    report.note(note.str());
    if (spec.subgradient_bound + 1e-12 < certified) {
      std::ostringstream msg;
      msg << "Assumption 8 violated: declared G = " << spec.subgradient_bound
          << " is below the certified bound " << certified;
      report.fail("assumption-8", msg.str());
    }
  } catch (const std::exception& e) {
    report.fail("assumption-8",
                std::string("Assumption 8 violated: ") + e.what());
  }
  return report;
}

namespace {

double sampled_bound(const LocalObjective& f, const ConstraintSet& X,
                     const Box& sample_box, int samples, Rng& rng) {
  double best = 0.0;
  const Eigen::Index m = sample_box.lo.size();
  Vector x(m);
  // Box corners often maximize ||g||; include them when affordable.
  if (m <= 16) {
    const std::uint64_t corners = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < corners; ++mask) {
      for (Eigen::Index j = 0; j < m; ++j)
        x[j] = (mask >> j) & 1 ? sample_box.hi[j] : sample_box.lo[j];
      const Vector p = project(X, x);
      best = std::max(best, subgradient(f, p).norm());
    }
  }
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index j = 0; j < m; ++j)
      x[j] = rng.uniform(sample_box.lo[j], sample_box.hi[j]);
    const Vector p = project(X, x);
    best = std::max(best, subgradient(f, p).norm());
  }
  return best;
}

}  // namespace

double certify_subgradient_bound(const ProblemSpec& spec, int samples,
                                 std::uint64_t seed) {
  require(samples > 0, "certify: sample count must be positive");
  double bound = 0.0;
  for (int i = 0; i < spec.agents(); ++i) {
    const LocalObjective& f = spec.objectives[static_cast<std::size_t>(i)];
    if (const auto exact = exact_subgradient_bound(f)) {
      bound = std::max(bound, *exact);
      continue;
    }
    const ConstraintSet& X = spec.constraints[static_cast<std::size_t>(i)];
    std::optional<Box> region = X.bounding_box();
    if (!region) region = spec.sampling_box;
    if (!region)
      throw std::invalid_argument(
          "certify: unconstrained problem with unbounded subgradients needs "
          "a sampling box (assumption A8 cannot be certified otherwise)");
    Rng rng(seed, static_cast<std::uint64_t>(i));
    bound = std::max(bound,
                     sampled_bound(f, X, *region, samples, rng));
  }
  return bound;
}

double weighted_value(const ProblemSpec& spec, const Vector& q,
                      const Vector& x) {
  double total = 0.0;
  for (int i = 0; i < spec.agents(); ++i)
    total += q[i] * value(spec.objectives[static_cast<std::size_t>(i)], x);
  return total;
}

}  // namespace dsgrad
