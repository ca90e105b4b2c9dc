#include "dsgrad/config.hpp"

#include <nlohmann/json.hpp>

#include <set>
#include <stdexcept>
#include <utility>

#include "dsgrad/trace_io.hpp"

namespace dsgrad {
namespace {

using json = nlohmann::json;

[[noreturn]] void bail(const std::string& context, const std::string& what) {
  throw std::invalid_argument(context + ": " + what);
}

const json& need(const json& j, const char* field, const std::string& ctx) {
  const auto it = j.find(field);
  if (it == j.end()) bail(ctx, std::string("missing field '") + field + "'");
  return *it;
}

Vector to_vector(const json& j, const std::string& ctx) {
  if (!j.is_array()) bail(ctx, "expected a numeric array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bail(ctx, "expected a numeric array");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Matrix to_matrix(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) bail(ctx, "expected an array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      bail(ctx, "rows must be equally sized numeric arrays");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          j[r][c].get<double>();
  }
  return m;
}

Box to_box(const json& j, const std::string& ctx) {
  Box b;
  b.lo = to_vector(need(j, "lo", ctx), ctx + ".lo");
  b.hi = to_vector(need(j, "hi", ctx), ctx + ".hi");
  return b;
}

LocalObjective parse_objective(const json& j, const std::string& ctx) {
  const std::string kind = need(j, "kind", ctx).get<std::string>();
  if (kind == "affine") {
    return Affine{to_vector(need(j, "c", ctx), ctx + ".c"),
                  j.value("b", 0.0)};
  }
  if (kind == "quadratic") {
    if (j.contains("center")) {
      // Sugar for 0.5 |x - center|^2.
      const Vector center = to_vector(j["center"], ctx + ".center");
      const auto m = center.size();
      return Quadratic{Matrix::Identity(m, m), -center,
                       0.5 * center.squaredNorm()};
    }
    Quadratic q;
    q.P = to_matrix(need(j, "P", ctx), ctx + ".P");
    q.c = j.contains("c") ? to_vector(j["c"], ctx + ".c")
                          : Vector::Zero(q.P.rows()).eval();
    q.b = j.value("b", 0.0);
    return q;
  }
  if (kind == "l1") {
    return L1Shift{to_vector(need(j, "w", ctx), ctx + ".w"),
                   to_vector(need(j, "shift", ctx), ctx + ".shift")};
  }
  if (kind == "max_affine") {
    const json& pieces = need(j, "pieces", ctx);
    if (!pieces.is_array() || pieces.empty())
      bail(ctx, "max_affine needs a nonempty pieces array");
    MaxAffine ma;
    for (const auto& piece : pieces)
      ma.pieces.push_back(Affine{to_vector(need(piece, "c", ctx), ctx + ".c"),
                                 piece.value("b", 0.0)});
    return ma;
  }
  if (kind == "sum") {
    const json& parts = need(j, "parts", ctx);
    if (!parts.is_array() || parts.empty())
      bail(ctx, "sum needs a nonempty parts array");
    SumOf s;
    for (const auto& part : parts)
      s.parts.push_back(parse_objective(part, ctx + ".parts"));
    return s;
  }
  bail(ctx, "unknown objective kind '" + kind + "'");
}

ConstraintSet parse_constraint(const json& j, int dimension,
                               const std::string& ctx) {
  const std::string kind = need(j, "kind", ctx).get<std::string>();
  if (kind == "full_space") return FullSpace{dimension};
  if (kind == "box") return to_box(j, ctx);
  if (kind == "ball")
    return Ball{to_vector(need(j, "center", ctx), ctx + ".center"),
                need(j, "radius", ctx).get<double>()};
  if (kind == "halfspace_box")
    return HalfspaceBox{to_box(j, ctx),
                        to_vector(need(j, "a", ctx), ctx + ".a"),
                        need(j, "beta", ctx).get<double>()};
  if (kind == "intersection_of_boxes") {
    const json& boxes = need(j, "boxes", ctx);
    if (!boxes.is_array() || boxes.empty())
      bail(ctx, "intersection_of_boxes needs a nonempty boxes array");
    IntersectionOfBoxes ib;
    for (const auto& b : boxes) ib.boxes.push_back(to_box(b, ctx + ".boxes"));
    return ib;
  }
  bail(ctx, "unknown constraint kind '" + kind + "'");
}

ProblemSpec parse_problem(const json& j, const std::string& ctx) {
  ProblemSpec spec;
  spec.dimension = need(j, "dimension", ctx).get<int>();
  spec.subgradient_bound = need(j, "subgradient_bound", ctx).get<double>();
  if (j.contains("sampling_box"))
    spec.sampling_box = to_box(j["sampling_box"], ctx + ".sampling_box");
  const json& agents = need(j, "agents", ctx);
  if (!agents.is_array() || agents.empty())
    bail(ctx, "agents must be a nonempty array");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string actx = ctx + ".agents[" + std::to_string(i) + "]";
    spec.objectives.push_back(
        parse_objective(need(agents[i], "objective", actx), actx + ".objective"));
    const json empty = json::object();
    const json& cj = agents[i].contains("constraint") ? agents[i]["constraint"]
                                                      : empty;
    if (cj.is_object() && !cj.empty())
      spec.constraints.push_back(
          parse_constraint(cj, spec.dimension, actx + ".constraint"));
    else
      spec.constraints.push_back(FullSpace{spec.dimension});
  }
  return spec;
}

GraphSequence parse_graph(const json& j, const std::string& ctx) {
  GraphConfig cfg;
  cfg.kind = need(j, "kind", ctx).get<std::string>();
  cfg.n = j.value("n", 0);
  cfg.eta = j.value("eta", kDefaultEta);
  cfg.window = j.value("window", 0);
  cfg.topology = j.value("topology", std::string("matrix"));
  cfg.weights = j.value("weights", std::string("metropolis"));
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.extra_pairs = j.value("extra_pairs", 1);
  if (j.contains("matrix")) cfg.matrix = to_matrix(j["matrix"], ctx + ".matrix");
  if (j.contains("cycle"))
    for (const auto& m : j["cycle"])
      cfg.cycle.push_back(to_matrix(m, ctx + ".cycle"));
  if (j.contains("phases")) {
    for (const auto& phase : j["phases"]) {
      std::vector<std::pair<int, int>> pairs;
      for (const auto& p : phase) {
        if (!p.is_array() || p.size() != 2)
          bail(ctx, "phases entries must be [i, j] pairs");
        pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
      }
      cfg.phases.push_back(std::move(pairs));
    }
  }
  return make_graph_sequence(cfg);
}

StepSchedule parse_schedule(const json& j, const std::string& ctx) {
  const std::string kind = need(j, "kind", ctx).get<std::string>();
  if (kind == "polynomial")
    return StepSchedule::polynomial(need(j, "a", ctx).get<double>(),
                                    j.value("k0", 1.0),
                                    need(j, "p", ctx).get<double>());
  if (kind == "log_polynomial")
    return StepSchedule::log_polynomial(need(j, "a", ctx).get<double>(),
                                        j.value("k0", 1.0));
  if (kind == "constant")
    return StepSchedule::constant(need(j, "a", ctx).get<double>());
  bail(ctx, "unknown schedule kind '" + kind + "'");
}

const std::set<std::string>& known_metrics() {
  static const std::set<std::string> metrics = {
      "final_gap",          "best_gap",
      "final_consensus_diameter", "final_objective_at_y",
      "max_infeasibility",  "final_y_infeasibility",
      "max_recursion_residual",   "final_dist_to_opt"};
  return metrics;
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& json_text,
                                  const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }

  try {
    ProblemSpec problem = parse_problem(need(j, "problem", origin), "problem");
    GraphSequence graph = parse_graph(need(j, "graph", origin), "graph");
    const json& sj = need(j, "schedule", origin);
    StepSchedule schedule = parse_schedule(sj, "schedule");

    RunConfig run{std::move(problem), std::move(graph), std::move(schedule),
                  {}, 1, InitKind::SeededUniform, {}, 1, 0, false, {}, {}};
    ExperimentConfig cfg{j.value("name", std::string("experiment")),
                         j.value("description", std::string()),
                         std::move(run),
                         {},
                         {},
                         {},
                         {},
                         {}};
    if (sj.contains("perturbation")) {
      PerturbationSpec spec;
      const json& pj = sj["perturbation"];
      const Vector d = to_vector(need(pj, "d", "schedule.perturbation"),
                                 "schedule.perturbation.d");
      spec.d.assign(d.data(), d.data() + d.size());
      spec.r = pj.value("r", 1.0);
      cfg.run.perturbation = spec;
    }

    const json& rj = need(j, "run", origin);
    cfg.run.rounds = need(rj, "rounds", "run").get<std::int64_t>();
    cfg.run.record_every = rj.value("record_every", std::int64_t{1});
    cfg.run.seed = rj.value("seed", std::uint64_t{0});
    cfg.run.allow_invalid_schedule = rj.value("allow_invalid_schedule", false);
    const std::string init = rj.value("init", std::string("seeded_uniform"));
    if (init == "zeros") {
      cfg.run.init = InitKind::Zeros;
    } else if (init == "seeded_uniform") {
      cfg.run.init = InitKind::SeededUniform;
    } else if (init == "explicit") {
      cfg.run.init = InitKind::Explicit;
      cfg.run.init_x = to_matrix(need(rj, "init_x", "run"), "run.init_x");
    } else {
      bail("run", "unknown init '" + init + "'");
    }

    if (j.contains("oracle")) {
      const json& oj = j["oracle"];
      cfg.oracle.method = oj.value("method", std::string("none"));
      cfg.oracle.resolution = oj.value("resolution", 1e-3);
      cfg.oracle.budget = oj.value("budget", std::int64_t{1000000});
      cfg.oracle.unique_minimizer = oj.value("unique_minimizer", false);
      if (oj.contains("x_star"))
        cfg.oracle.x_star = to_vector(oj["x_star"], "oracle.x_star");
      const std::string& m = cfg.oracle.method;
      if (m != "grid" && m != "centralized" && m != "closed_form" &&
          m != "none")
        bail("oracle", "unknown method '" + m + "'");
      if (m == "closed_form" && !cfg.oracle.x_star)
        bail("oracle", "closed_form needs x_star");
    }

    if (j.contains("thresholds")) {
      for (const auto& [metric, tj] : j["thresholds"].items()) {
        if (known_metrics().count(metric) == 0)
          bail("thresholds", "unknown metric '" + metric + "'");
        ThresholdSpec t;
        t.metric = metric;
        t.max = need(tj, "max", "thresholds." + metric).get<double>();
        const std::string expect = tj.value("expect", std::string("pass"));
        if (expect != "pass" && expect != "fail")
          bail("thresholds", "expect must be 'pass' or 'fail'");
        t.expect_fail = expect == "fail";
        cfg.thresholds.push_back(std::move(t));
      }
    }

    if (j.contains("waive"))
      for (const auto& w : j["waive"])
        cfg.waive.push_back(w.get<std::string>());

    if (j.contains("output")) {
      const json& oj = j["output"];
      cfg.output.directory = oj.value("directory", std::string());
      if (oj.contains("formats")) {
        cfg.output.write_csv = false;
        cfg.output.write_json = false;
        for (const auto& f : oj["formats"]) {
          const std::string fmt = f.get<std::string>();
          if (fmt == "csv")
            cfg.output.write_csv = true;
          else if (fmt == "json")
            cfg.output.write_json = true;
          else
            bail("output", "unknown format '" + fmt + "'");
        }
      }
    }

    cfg.config_json = j.dump(2);
    return cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
}

ExperimentConfig load_experiment(const std::string& path) {
  return parse_experiment(read_text_file(path), path);
}

}  // namespace dsgrad
