#pragma once

#include <cstddef>
#include <vector>

namespace rpcm {

// Half-open interval cells (b_{i-1}, b_i] over strictly increasing breakpoints.
class IntervalPartition {
 public:
  IntervalPartition() = default;
  static IntervalPartition from_breakpoints(std::vector<double> bps);
  static IntervalPartition uniform(double lo, double hi, std::size_t cells);
  // Excursion-adapted partition of (0, 1/2] joined with the given Y cells:
  // one coarse tail cell (0, x_{depth+1}], then each (x_{n+1}, x_n] split into
  // `subdivide` equal cells for n = depth..1. The Y partition must start at 1/2.
  static IntervalPartition x_adapted(const std::vector<double>& xs, std::size_t depth,
                                     std::size_t subdivide, const IntervalPartition& y_cells);

  std::size_t size() const { return bps_.empty() ? 0 : bps_.size() - 1; }
  double left(std::size_t i) const { return bps_[i]; }
  double right(std::size_t i) const { return bps_[i + 1]; }
  double width(std::size_t i) const { return bps_[i + 1] - bps_[i]; }
  double span_lo() const { return bps_.front(); }
  double span_hi() const { return bps_.back(); }
  const std::vector<double>& breakpoints() const { return bps_; }

  // cell index containing x, or -1 when x <= lo or x > hi
  std::ptrdiff_t locate(double x) const;

  // every breakpoint of `coarse` appears here (within tol)
  bool refines(const IntervalPartition& coarse, double tol = 1e-12) const;
  bool has_breakpoint(double v, double tol = 1e-12) const;

 private:
  std::vector<double> bps_;
};

}  // namespace rpcm
