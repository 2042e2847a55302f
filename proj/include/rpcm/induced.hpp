#pragma once

#include "rpcm/sequences.hpp"

namespace rpcm {

// One application of the induced (first-return) map on Y = [1/2,1]: apply the
// right branch once, then left branches with fresh alpha draws until the
// point exceeds 1/2. left_steps counts the left-branch applications only; the
// full return time of the random orbit is left_steps + 1. left_steps is 0
// exactly when the right branch already lands in Y (first cell, eta = 0).
struct InducedStep {
  double landing = 0.0;
  std::size_t left_steps = 0;
  double derivative = 0.0;  // chain-rule product along the excursion
  bool censored = false;    // cap reached, or absorbed below fp resolution
};

inline constexpr std::size_t kDefaultInducedCap = 10000;

InducedStep induced_step(const RandomMapSystem& sys, double x, double beta,
                         AlphaStream& alphas, std::size_t cap = kDefaultInducedCap);
// hot-path overload drawing alphas straight from nu_A
InducedStep induced_step(const RandomMapSystem& sys, double x, double beta, RngStream& rng,
                         std::size_t cap = kDefaultInducedCap);

// Common return step count eta + n - 1 shared by the cell (y_{n+1}, y_n],
// verified on three interior points; throws on mismatch.
std::size_t cell_return_steps(const RandomMapSystem& sys, std::size_t cell, double beta,
                              AlphaStream& alphas, std::size_t cap = kDefaultInducedCap);

}  // namespace rpcm
