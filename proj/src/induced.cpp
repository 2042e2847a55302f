#include "rpcm/induced.hpp"

#include <cmath>
#include <stdexcept>

namespace rpcm {

namespace {

template <typename NextAlpha>
InducedStep induced_step_impl(const RandomMapSystem& sys, double x, double beta,
                              NextAlpha&& next_alpha, std::size_t cap) {
  if (!(x > 0.5 && x <= 1.0))
    throw std::domain_error("induced_step: x must lie in (1/2,1]; the return from 1/2 "
                            "never happens");
  RightBranch s = sys.right(beta);
  double d = s.deriv(x);
  double z = s.eval(x);
  InducedStep out;
  if (z == 0.0) {  // below floating-point resolution of the flat region: absorbed
    out.censored = true;
    out.landing = 0.0;
    out.derivative = d;
    return out;
  }
  std::size_t steps = 0;
  while (z <= 0.5) {
    if (steps == cap) {
      out.censored = true;
      out.landing = z;
      out.left_steps = steps;
      out.derivative = d;
      return out;
    }
    LeftBranch tau = sys.left(next_alpha());
    d *= tau.deriv(z);
    z = tau.eval(z);
    ++steps;
    if (z == 0.0) {  // absorbed at the fixed point
      out.censored = true;
      out.landing = 0.0;
      out.left_steps = steps;
      out.derivative = d;
      return out;
    }
  }
  out.landing = z;
  out.left_steps = steps;
  out.derivative = d;
  out.censored = false;
  return out;
}

}  // namespace

InducedStep induced_step(const RandomMapSystem& sys, double x, double beta,
                         AlphaStream& alphas, std::size_t cap) {
  return induced_step_impl(sys, x, beta, [&alphas] { return alphas.next(); }, cap);
}

InducedStep induced_step(const RandomMapSystem& sys, double x, double beta, RngStream& rng,
                         std::size_t cap) {
  const ParameterMeasure& nu = sys.nu_a();
  return induced_step_impl(sys, x, beta, [&] { return nu.sample(rng); }, cap);
}

std::size_t cell_return_steps(const RandomMapSystem& sys, std::size_t cell, double beta,
                              AlphaStream& alphas, std::size_t cap) {
  if (cell < 1) throw std::invalid_argument("cell_return_steps: cells are 1-indexed");
  if (!alphas.constant_mode())
    throw std::invalid_argument("cell_return_steps: needs a constant alpha reference "
                                "(the cell system depends on the whole stream otherwise)");
  PartitionSequences ps = make_partition_sequences(sys, alphas, beta, cell + 1);
  double hi = ps.ys[cell - 1];  // y_cell
  double lo = ps.ys[cell];      // y_{cell+1}
  std::size_t expected = ps.eta + cell - 1;
  for (double t : {0.25, 0.5, 0.75}) {
    double x = lo + t * (hi - lo);
    AlphaStream probe = AlphaStream::constant(alphas.constant_value());
    InducedStep st = induced_step(sys, x, beta, probe, cap);
    if (st.censored || st.left_steps != expected)
      throw std::runtime_error("cell_return_steps: sampled interior point of the cell "
                               "disagrees with eta + n - 1; sequences and inversions are "
                               "inconsistent");
  }
  return expected;
}

}  // namespace rpcm
