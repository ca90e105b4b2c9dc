#include "dsgrad/schedule.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dsgrad {

std::string ScheduleClass::label() const {
  if (!(positive && vanishing && non_summable)) return "invalid";
  return square_summable ? "classical" : "general";
}

StepSchedule::StepSchedule(ScheduleKind kind, double a, double k0, double p)
    : kind_(kind), a_(a), k0_(k0), p_(p) {}

StepSchedule StepSchedule::polynomial(double a, double k0, double p) {
  if (!(a > 0.0)) throw std::invalid_argument("schedule: a must be positive");
  if (!(k0 >= 1.0))
    throw std::invalid_argument("schedule: k0 must be >= 1 so alpha(0) is finite");
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("schedule: p must lie in (0, 1]");
  return StepSchedule(ScheduleKind::Polynomial, a, k0, p);
}

StepSchedule StepSchedule::log_polynomial(double a, double k0) {
  if (!(a > 0.0)) throw std::invalid_argument("schedule: a must be positive");
  if (!(k0 >= 1.0)) throw std::invalid_argument("schedule: k0 must be >= 1");
  return StepSchedule(ScheduleKind::LogPolynomial, a, k0, 0.0);
}

StepSchedule StepSchedule::constant(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("schedule: a must be positive");
  return StepSchedule(ScheduleKind::Constant, a, 0.0, 0.0);
}

double StepSchedule::alpha(std::int64_t k) const {
  const double kd = static_cast<double>(k);
  switch (kind_) {
    case ScheduleKind::Polynomial:
      return a_ / std::pow(kd + k0_, p_);
    case ScheduleKind::LogPolynomial:
      return a_ / ((kd + k0_) * std::log(kd + k0_ + 1.0));
    case ScheduleKind::Constant:
      return a_;
  }
  return a_;
}

ScheduleClass StepSchedule::classification() const {
  ScheduleClass c;
  c.positive = true;  // enforced at construction
  switch (kind_) {
    case ScheduleKind::Polynomial:
      c.vanishing = p_ > 0.0;
      c.non_summable = p_ <= 1.0;
      c.square_summable = p_ > 0.5;
      break;
    case ScheduleKind::LogPolynomial:
      // 1/(k log k): vanishing, divergent sum, convergent sum of squares.
      c.vanishing = true;
      c.non_summable = true;
      c.square_summable = true;
      break;
    case ScheduleKind::Constant:
      c.vanishing = false;
      c.non_summable = true;
      c.square_summable = false;
      break;
  }
  return c;
}

PerAgentSchedule::PerAgentSchedule(StepSchedule base, PerturbationSpec spec)
    : base_(base), spec_(std::move(spec)) {
  ValidationReport base_report = validate_assumption7(base_);
  if (!base_report.passed())
    throw std::invalid_argument(
        "per-agent schedule: base schedule fails assumption A7");
  if (!(spec_.r > 0.0))
    throw std::invalid_argument("per-agent schedule: r must be > 0");
  if (spec_.d.empty())
    throw std::invalid_argument("per-agent schedule: d must name every agent");
  for (std::size_t i = 0; i < spec_.d.size(); ++i) {
    if (!(spec_.d[i] > -1.0)) {
      std::ostringstream msg;
      msg << "per-agent schedule: d[" << i << "] = " << spec_.d[i]
          << " must be > -1 so steps stay positive";
      throw std::invalid_argument(msg.str());
    }
  }
}

double PerAgentSchedule::alpha(int agent, std::int64_t k) const {
  const double delta =
      spec_.d.at(static_cast<std::size_t>(agent)) /
      std::pow(static_cast<double>(k) + 1.0, spec_.r);
  return base_.alpha(k) * (1.0 + delta);
}

ValidationReport validate_assumption7(const StepSchedule& s) {
  ValidationReport report;
  const ScheduleClass c = s.classification();
  if (!c.positive)
    report.fail("assumption-7", "step sizes are not positive");
  if (!c.vanishing)
    report.fail("assumption-7", "step sizes do not vanish (lim alpha(k) != 0)");
  if (!c.non_summable)
    report.fail("assumption-7", "step-size sum converges: not non-summable");
  report.note(std::string("schedule class: ") + c.label() +
              (c.square_summable ? " (square summable)"
                                 : " (not square summable)"));
  return report;
}

}  // namespace dsgrad
