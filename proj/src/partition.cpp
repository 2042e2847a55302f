#include "rpcm/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rpcm {

IntervalPartition IntervalPartition::from_breakpoints(std::vector<double> bps) {
  if (bps.size() < 2) throw std::invalid_argument("partition: need at least one cell");
  for (std::size_t i = 1; i < bps.size(); ++i)
    if (!(bps[i] > bps[i - 1]))
      throw std::invalid_argument("partition: breakpoints not strictly increasing");
  IntervalPartition p;
  p.bps_ = std::move(bps);
  return p;
}

IntervalPartition IntervalPartition::uniform(double lo, double hi, std::size_t cells) {
  if (cells == 0 || !(hi > lo)) throw std::invalid_argument("partition: bad uniform spec");
  std::vector<double> bps(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i)
    bps[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
  bps.front() = lo;
  bps.back() = hi;
  return from_breakpoints(std::move(bps));
}

IntervalPartition IntervalPartition::x_adapted(const std::vector<double>& xs,
                                               std::size_t depth, std::size_t subdivide,
                                               const IntervalPartition& y_cells) {
  if (depth < 1 || subdivide < 1) throw std::invalid_argument("partition: bad adapted spec");
  if (xs.size() < depth + 1)
    throw std::invalid_argument("partition: x-sequence shorter than requested depth");
  if (std::abs(y_cells.span_lo() - 0.5) > 1e-12 || std::abs(y_cells.span_hi() - 1.0) > 1e-12)
    throw std::invalid_argument("partition: Y cells must span [1/2, 1]");

  std::vector<double> bps;
  bps.push_back(0.0);
  bps.push_back(xs[depth]);  // x_{depth+1}
  for (std::size_t n = depth; n >= 1; --n) {
    double lo = xs[n], hi = xs[n - 1];
    for (std::size_t k = 1; k <= subdivide; ++k)
      bps.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(subdivide));
    bps.back() = hi;
  }
  // bps now ends at x_1 = 1/2; append the Y breakpoints past 1/2
  const auto& yb = y_cells.breakpoints();
  bps.insert(bps.end(), yb.begin() + 1, yb.end());
  return from_breakpoints(std::move(bps));
}

std::ptrdiff_t IntervalPartition::locate(double x) const {
  if (x <= bps_.front() || x > bps_.back()) return -1;
  auto it = std::lower_bound(bps_.begin(), bps_.end(), x);
  return static_cast<std::ptrdiff_t>(it - bps_.begin()) - 1;
}

bool IntervalPartition::has_breakpoint(double v, double tol) const {
  auto it = std::lower_bound(bps_.begin(), bps_.end(), v - tol);
  return it != bps_.end() && std::abs(*it - v) <= tol;
}

bool IntervalPartition::refines(const IntervalPartition& coarse, double tol) const {
  for (double b : coarse.bps_)
    if (!has_breakpoint(b, tol)) return false;
  return true;
}

}  // namespace rpcm
