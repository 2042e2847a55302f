#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpcm/induced.hpp"

namespace rpcm {

struct OccupationCell {
  double left = 0.0;
  double right = 0.0;
  std::string label;
  int index = -1;  // n for X_n cells; -1 otherwise
};

// Occupation counts of a long annealed orbit over reporting cells, with
// ratios normalized by the Y count (mu(Y) is finite by construction, so the
// same estimator serves finite and infinite invariant measures).
struct OccupationEstimate {
  std::vector<OccupationCell> cells;
  std::vector<std::uint64_t> counts;
  std::vector<double> ratios;        // count / count(Y)
  std::vector<double> ci_halfwidth;  // batch-means 95% half-widths
  std::uint64_t steps = 0;
  std::uint64_t effective_steps = 0;
  std::uint64_t seed = 0;
  std::size_t y_index = 0;
  bool reliable = true;  // every batch saw at least 30 Y hits
  bool absorbed = false; // an orbit hit 0 exactly and stopped
};

// Reporting cells [Y] + X_1..X_n for the constant-reference-alpha cell system.
std::vector<OccupationCell> standard_cells(const RandomMapSystem& sys,
                                           double reference_alpha, std::size_t n_cells);

OccupationEstimate run_orbit(const RandomMapSystem& sys, double x0, std::uint64_t steps,
                             std::uint64_t seed, const std::vector<OccupationCell>& cells,
                             int threads = 1, std::uint64_t burn_in = 1000,
                             std::size_t batches = 100);

struct ReturnTimeHistogram {
  std::vector<std::uint64_t> counts;  // counts[t] = returns with full time t
  std::uint64_t censored = 0;
  std::uint64_t total = 0;
  double mean = 0.0;           // over non-censored returns
  double tail_exponent = 0.0;  // log-log slope of the survival function
  double tail_std_error = 0.0;
  bool heavy_tail = false;  // survival slope >= -1: infinite-mean signature
};

// Full return times (the right-branch step plus the left-branch excursion)
// of induced steps started uniformly on Y.
ReturnTimeHistogram return_time_histogram(const RandomMapSystem& sys, std::size_t n_returns,
                                          std::size_t cap, std::uint64_t seed);

struct ComparisonRow {
  std::size_t n = 0;
  double empirical = 0.0;
  double predicted = 0.0;
  double rescaled_ratio = 0.0;  // empirical / (scale * predicted)
};

// Least-squares rescale of the predictor onto the empirical ratios over the
// overlapping X_n cells, then per-cell ratios of the two.
std::vector<ComparisonRow> occupation_vs_prediction(
    const OccupationEstimate& est,
    const std::vector<std::pair<std::size_t, double>>& predictor);

}  // namespace rpcm
