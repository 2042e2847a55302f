#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rpcm/system.hpp"

namespace rpcm {

// A realization of the i.i.d. alpha parameters, lazily extended and
// reproducible from its seed; or a frozen constant for reference use.
class AlphaStream {
 public:
  static AlphaStream constant(double alpha);
  static AlphaStream iid(ParameterMeasure nu_a, std::uint64_t seed);

  double at(std::size_t n);  // alpha_n, 1-indexed
  double next() { return at(++cursor_); }
  void rewind() { cursor_ = 0; }

  bool constant_mode() const { return constant_; }
  double constant_value() const;

 private:
  AlphaStream() : rng_(0) {}
  bool constant_ = true;
  double value_ = 0.0;
  ParameterMeasure nu_{ParameterMeasure::dirac(0.0)};
  RngStream rng_;
  std::vector<double> draws_;
  std::size_t cursor_ = 0;
};

// x_1 = 1/2 and tau_{alpha_n}(x_{n+1}) = x_n: the inverse orbit of the
// midpoint under the realized left branches. Strictly decreasing; if the
// recursion loses monotonicity at floating-point resolution the sequence is
// truncated there and flagged.
struct XSequence {
  std::vector<double> values;  // values[k] = x_{k+1}
  bool truncated = false;
  double x(std::size_t n) const { return values.at(n - 1); }
  std::size_t count() const { return values.size(); }
};

XSequence x_sequence(const RandomMapSystem& sys, AlphaStream& alphas, std::size_t n_terms);

// Index of the cell (x_{eta+1}, x_eta] containing S_beta(1), with x_0 = 1.
// Throws if S_beta(1) = 0 (degenerate right branch) or if xs is too short to
// bracket it (extend the x-sequence and retry).
std::size_t eta_index(const RandomMapSystem& sys, std::span<const double> xs, double beta);

// y_1 = 1 and S_beta(y_{n+1}) = x_{eta+n}: right-branch preimages of the
// deep x-cells, strictly decreasing toward 1/2.
std::vector<double> y_sequence(const RandomMapSystem& sys, std::span<const double> xs,
                               std::size_t eta, double beta, std::size_t m_terms);

struct PartitionSequences {
  XSequence xs;
  std::size_t eta = 0;
  std::vector<double> ys;  // ys[k] = y_{k+1}
  double beta = 0.0;
};

// Builds xs long enough to bracket S_beta(1) and cover eta + m_terms.
PartitionSequences make_partition_sequences(const RandomMapSystem& sys, AlphaStream& alphas,
                                            double beta, std::size_t m_terms,
                                            std::size_t x_cap = 1u << 20);

struct TailIndexNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smallest N0 >= 1 with E[(y_{N0+1} - 1/2) / (x_1 - x_2)] < delta, the
// expectation running over product quadrature nodes of nu_A x nu_B with a
// constant alpha per node. Search capped at 10^6.
std::size_t tail_index(const RandomMapSystem& sys, double delta, int quadrature_nodes);

// Order predictor for the invariant measure of the cell (x_{n+1}, x_n] of the
// constant-reference-alpha cell system:
//   integral over {eta(beta) < n} of (y_{n-eta(beta)} - 1/2) d nu_B
//   + nu_B{ eta(beta) >= n }.
// Discrete nu_B is summed exactly; continuous nu_B is split into eta level
// sets (boundaries located by monotone bisection of S_beta(1) against x_k)
// and integrated per set.
double predicted_cell_measure(const RandomMapSystem& sys, double reference_alpha,
                              std::size_t n);
std::vector<std::pair<std::size_t, double>> predicted_cell_measure_series(
    const RandomMapSystem& sys, double reference_alpha, const std::vector<std::size_t>& ns);

// log-spaced integer grid in [lo,hi], deduplicated, for series evaluation
std::vector<std::size_t> log_spaced_indices(std::size_t lo, std::size_t hi,
                                            std::size_t count);

}  // namespace rpcm
