#pragma once

#include <string>
#include <vector>

#include "rpcm/sequences.hpp"

namespace rpcm {

struct ExponentFit {
  double exponent = 0.0;
  double std_error = 0.0;
  std::size_t points = 0;
  bool slow_variation = false;  // window halves disagree: not a power law
  double first_half = 0.0;
  double second_half = 0.0;
};

// Least-squares slope of log a_n against log n over the index window.
ExponentFit fit_exponent(const std::vector<std::pair<std::size_t, double>>& series,
                         std::size_t window_lo, std::size_t window_hi);

enum class Verdict { finite, infinite, inconclusive };
const char* to_string(Verdict v);

struct VerdictReport {
  Verdict verdict = Verdict::inconclusive;
  ExponentFit fit;
  bool analytic_rule = false;
  std::string detail;
};

// Sum over n of mu(X_n) converges iff the decay exponent is below -1; the
// call is decided with a 2-sigma guard band around that threshold, except
// when a family-declared analytic rule settles it outright.
VerdictReport finiteness_verdict(const std::vector<std::pair<std::size_t, double>>& series,
                                 const SystemTraits* traits, std::size_t window_lo,
                                 std::size_t window_hi);

struct SandwichSide {
  double alpha = 0.0;
  std::vector<std::pair<std::size_t, double>> series;
  VerdictReport verdict;
};

// Two-sided comparison through the reference systems frozen at the majorant
// and minorant parameters: the majorant system bounds the invariant measure
// from below, the minorant system from above.
struct SandwichReport {
  SandwichSide lower;  // from alpha_major
  SandwichSide upper;  // from alpha_minor
  Verdict overall = Verdict::inconclusive;
  double ratio_bound = 0.0;  // max over the window of lower/upper
  DominanceReport dominance;
  std::string detail;
};

SandwichReport sandwich_report(const RandomMapSystem& sys, double alpha_major,
                               double alpha_minor, std::size_t n_lo, std::size_t n_hi,
                               std::size_t points = 33, double envelope_c = 0.4);

}  // namespace rpcm
