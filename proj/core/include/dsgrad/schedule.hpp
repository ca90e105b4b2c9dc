#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsgrad/validation.hpp"

namespace dsgrad {

// Step-size sequences alpha(k), k = 0, 1, 2, ...
//
// The algorithm only needs alpha(k) > 0, alpha(k) -> 0 and a divergent sum
// (assumption A7 in the validator); the square-summable subclass is tracked
// separately so runs can be labelled "classical" (square summable, the
// textbook requirement) versus "general" (not square summable).

enum class ScheduleKind { Polynomial, LogPolynomial, Constant };

// Analytic flags derived symbolically from the parameters; divergence of a
// series is not something a finite computation can certify.
struct ScheduleClass {
  bool positive = false;
  bool vanishing = false;
  bool non_summable = false;
  bool square_summable = false;

  // "general" when the A7 envelope holds without square summability,
  // "classical" when it holds with it, "invalid" otherwise.
  std::string label() const;
};

class StepSchedule {
 public:
  // alpha(k) = a / (k + k0)^p, a > 0, k0 >= 1 (so alpha(0) is finite),
  // p in (0, 1].
  static StepSchedule polynomial(double a, double k0, double p);
  // alpha(k) = a / ((k + k0) * log(k + k0 + 1)), a > 0, k0 >= 1.
  static StepSchedule log_polynomial(double a, double k0);
  // alpha(k) = a for all k; constructible only as a negative control and
  // rejected by validate_assumption7.
  static StepSchedule constant(double a);

  double alpha(std::int64_t k) const;
  ScheduleKind kind() const { return kind_; }
  ScheduleClass classification() const;

  double a() const { return a_; }
  double k0() const { return k0_; }
  double p() const { return p_; }

 private:
  StepSchedule(ScheduleKind kind, double a, double k0, double p);

  ScheduleKind kind_;
  double a_;
  double k0_;
  double p_;
};

// Per-agent variant alpha_i(k) = alpha(k) * (1 + delta_i(k)) with
// delta_i(k) = d_i / (k + 1)^r.  Every d_i must be > -1 so steps stay
// positive, and r > 0 so the perturbation vanishes.
struct PerturbationSpec {
  std::vector<double> d;  // one entry per agent
  double r = 1.0;
};

class PerAgentSchedule {
 public:
  PerAgentSchedule(StepSchedule base, PerturbationSpec spec);

  double alpha(int agent, std::int64_t k) const;
  double base_alpha(std::int64_t k) const { return base_.alpha(k); }
  const StepSchedule& base() const { return base_; }
  const PerturbationSpec& perturbation() const { return spec_; }
  int agents() const { return static_cast<int>(spec_.d.size()); }

 private:
  StepSchedule base_;
  PerturbationSpec spec_;
};

// Passes iff the schedule is positive, vanishing and non-summable; the
// report notes whether it is additionally square summable ("classical"
// class) or not ("general" class).
ValidationReport validate_assumption7(const StepSchedule& s);

}  // namespace dsgrad
