#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "rpcm/induced.hpp"
#include "rpcm/partition.hpp"

namespace rpcm {

// Row-stochastic discretization of a Markov operator on an interval
// partition: rows are source cells, entries estimated transition
// probabilities. Mass landing outside the partition span goes to an overflow
// tally; censored induced steps are renormalized away within the row and
// reported per row.
struct UlamOperator {
  IntervalPartition partition;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
  std::vector<double> overflow;           // per-row mass outside the span
  std::vector<double> censored_fraction;  // per-row, induced builds only
  std::vector<std::uint8_t> unreliable;   // censored_fraction > 1/2
  std::vector<double> effective_samples;  // per-row count behind the estimates
  std::size_t samples_per_cell = 0;
  bool induced = false;
  bool exact = false;  // hand-built entries, no sampling variance

  std::size_t size() const { return rows.size(); }
  double row_sum(std::size_t i) const;
  // out = in * M (mass vectors); overflow mass is dropped
  void apply_mass(const std::vector<double>& in, std::vector<double>& out) const;
};

UlamOperator build_ulam_p(const RandomMapSystem& sys, const IntervalPartition& partition,
                          std::size_t samples_per_cell, std::uint64_t seed,
                          int threads = 1);

UlamOperator build_ulam_py(const RandomMapSystem& sys, const IntervalPartition& y_partition,
                           std::size_t samples_per_cell, std::size_t cap,
                           std::uint64_t seed, int threads = 1);

struct DensityEstimate {
  IntervalPartition y_partition;
  std::vector<double> h0;  // piecewise-constant density on Y, integral 1
  bool converged = false;
  double residual_l1 = 0.0;  // || M h0 - h0 ||_1 in cell mass
  std::size_t iterations = 0;

  // filled by extend_density
  IntervalPartition x_partition;
  std::vector<double> h_ext;            // density on the full partition
  std::vector<std::uint8_t> divergent;  // per-cell infinite-measure signature
  std::size_t truncation_depth = 0;
  double tail_mass = 0.0;  // L1 mass of the last accumulated term
};

// Cesaro averages of the constant-1 density under the induced matrix until
// successive averages differ by < tol in L1, normalized to unit integral.
DensityEstimate induced_invariant_density(const UlamOperator& ulam_py,
                                          std::size_t max_iters = 100000,
                                          double tol = 1e-4);

// h = h0 + sum_{n>=0} I_{Yc} (P I_{Yc})^n P h0, truncated at n_trunc terms,
// with early stop once a term falls below 1e-6 of the accumulated mass.
void extend_density(DensityEstimate& est, const UlamOperator& ulam_p,
                    const IntervalPartition& x_partition, std::size_t n_trunc = 200);

// integral of the density over (lo, hi]; both ends must be breakpoints
double measure_between(const IntervalPartition& part, const std::vector<double>& density,
                       double lo, double hi);

struct MonotoneReport {
  bool pass = false;
  double max_excess = 0.0;    // worst increase beyond 1e-6 + 3 sigma (diagnostic)
  double max_increase = 0.0;  // worst raw increase between adjacent cells
  double max_z = 0.0;         // worst increase in per-cell sigma units
  double z_critical = 0.0;    // familywise noise band for the comparison count
  std::size_t comparisons = 0;
  std::size_t trials = 0;
};

// Applies the matrix to non-increasing nonnegative step densities and checks
// the outputs stay non-increasing up to sampling noise. Per-cell sigma is
// propagated from the (Laplace-smoothed) multinomial row estimates; the
// verdict compares the worst z-score against the one-sided familywise 1%
// critical value for the total number of adjacent-pair comparisons, since
// with thousands of pairs some 3-sigma excursions are expected from noise
// alone. Exact matrices are held to the absolute 1e-6 tolerance.
MonotoneReport check_monotone_preservation(const UlamOperator& op, std::size_t trials,
                                           std::uint64_t seed = 0);

}  // namespace rpcm
