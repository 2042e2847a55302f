#pragma once

#include <optional>
#include <string>

#include "rpcm/branch.hpp"
#include "rpcm/measure.hpp"

namespace rpcm {

// Analytic facts a family declares about itself; used where sampling cannot
// decide (essential suprema, always-infinite laws, almost-sure dominance).
struct SystemTraits {
  bool condition_a_fails = false;   // ess sup of tau'(1/2) is infinite
  bool always_infinite = false;     // invariant measure infinite for all parameters
  int left_alpha_order = 0;         // -1: tau decreases pointwise as alpha grows
                                    // +1: increases; 0: unknown/singleton
};

// A two-parameter random map family on [0,1]: left branch tau_alpha on
// [0,1/2], right branch S_beta on (1/2,1], with parameter laws nu_A, nu_B.
class RandomMapSystem {
 public:
  RandomMapSystem(std::string name, LeftBranch::Kind lk, RightBranch::Kind rk,
                  ParameterMeasure nu_a, ParameterMeasure nu_b, SystemTraits traits)
      : name_(std::move(name)),
        left_kind_(lk),
        right_kind_(rk),
        nu_a_(std::move(nu_a)),
        nu_b_(std::move(nu_b)),
        traits_(traits) {}

  LeftBranch left(double alpha) const { return LeftBranch{left_kind_, alpha}; }
  RightBranch right(double beta) const { return RightBranch{right_kind_, beta}; }

  const ParameterMeasure& nu_a() const { return nu_a_; }
  const ParameterMeasure& nu_b() const { return nu_b_; }
  const std::string& name() const { return name_; }
  const SystemTraits& traits() const { return traits_; }

  // same family with nu_A frozen to a single reference parameter
  RandomMapSystem with_constant_alpha(double alpha) const {
    return RandomMapSystem(name_, left_kind_, right_kind_,
                           ParameterMeasure::dirac(alpha), nu_b_, traits_);
  }

 private:
  std::string name_;
  LeftBranch::Kind left_kind_;
  RightBranch::Kind right_kind_;
  ParameterMeasure nu_a_;
  ParameterMeasure nu_b_;
  SystemTraits traits_;
};

double eval_map(const RandomMapSystem& sys, double alpha, double beta, double x);
double invert_left(const RandomMapSystem& sys, double alpha, double u);
std::optional<double> invert_right(const RandomMapSystem& sys, double beta, double u);

struct ConditionCheck {
  enum class Status { pass, fail, undetermined };
  Status status = Status::undetermined;
  std::string detail;
  std::optional<double> witness;  // offending parameter, when one exists
  bool ok() const { return status == Status::pass; }
};

struct ConditionReport {
  ConditionCheck measurable;        // (0)
  ConditionCheck endpoints_smooth;  // (1)
  ConditionCheck convexity;         // (2)
  ConditionCheck bounded_slope_a;   // (A): ess sup tau'(1/2) finite
  ConditionCheck integrable_gap_b;  // (B): E[1/(x1 - x2)] finite
  double max_left_slope_at_half = 0.0;
  double gap_integral = 0.0;
  bool all_pass() const;
};

ConditionReport check_conditions(const RandomMapSystem& sys, int grid_size,
                                 int quadrature_nodes, double slope_ceiling = 1e12,
                                 std::uint64_t seed = 0);

// Envelope condition on the left family: tau_alpha <= tau_major on (0,c) for
// nu_A-a.e. alpha, and tau_alpha >= tau_minor on a positive-mass set.
struct DominanceReport {
  bool pass = false;
  bool majorant_ok = false;
  double minorant_mass = 0.0;  // estimated nu_A-mass of {tau_alpha >= tau_minor}
  std::optional<double> witness;
  std::string detail;
};

DominanceReport check_dominance(const RandomMapSystem& sys, double alpha_major,
                                double alpha_minor, double c, int grid_size = 128,
                                std::uint64_t seed = 0);

}  // namespace rpcm
