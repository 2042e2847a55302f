#include "rpcm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rpcm/parallel.hpp"

namespace rpcm {

std::vector<OccupationCell> standard_cells(const RandomMapSystem& sys,
                                           double reference_alpha, std::size_t n_cells) {
  AlphaStream ref = AlphaStream::constant(reference_alpha);
  XSequence xs = x_sequence(sys, ref, n_cells + 1);
  if (xs.count() < n_cells + 1)
    throw std::invalid_argument("standard_cells: x-sequence too short for n_cells");
  std::vector<OccupationCell> cells;
  cells.push_back({0.5, 1.0, "Y", -1});
  for (std::size_t n = 1; n <= n_cells; ++n)
    cells.push_back({xs.x(n + 1), xs.x(n), "X_" + std::to_string(n), static_cast<int>(n)});
  return cells;
}

OccupationEstimate run_orbit(const RandomMapSystem& sys, double x0, std::uint64_t steps,
                             std::uint64_t seed, const std::vector<OccupationCell>& cells,
                             int threads, std::uint64_t burn_in, std::size_t batches) {
  if (steps < 10000) throw std::invalid_argument("run_orbit: need at least 1e4 steps");
  if (!(x0 > 0.0 && x0 <= 1.0)) throw std::invalid_argument("run_orbit: x0 outside (0,1]");
  if (batches < 2) throw std::invalid_argument("run_orbit: need at least 2 batches");

  std::size_t y_index = cells.size();
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (std::abs(cells[c].left - 0.5) <= 1e-12 && std::abs(cells[c].right - 1.0) <= 1e-12)
      y_index = c;
  if (y_index == cells.size())
    throw std::invalid_argument("run_orbit: reporting cells must include Y = (1/2, 1]");

  const std::size_t nc = cells.size();
  const std::uint64_t shard_steps = steps / batches;
  std::vector<std::vector<std::uint64_t>> shard_counts(batches,
                                                       std::vector<std::uint64_t>(nc, 0));
  std::vector<std::uint64_t> shard_effective(batches, 0);
  std::vector<std::uint8_t> shard_absorbed(batches, 0);

  // one independent orbit per batch; seeds fixed by (seed, shard), so the
  // result does not depend on the worker count
  parallel_for(batches, threads, [&](std::size_t s) {
    RngStream rng(derive_seed(seed, "orbit", "shard", s));
    auto& counts = shard_counts[s];
    double x = x0;
    // Sub-resolution multiplicative dither: branches that are exact binary
    // shifts (2x, 2^-beta(2x-1)) otherwise exhaust the mantissa within ~53
    // steps and collapse onto spurious dyadic cycles. The perturbation is
    // ~3e-14 relative, far below any reporting cell.
    auto step = [&](double z) {
      double alpha = sys.nu_a().sample(rng);
      double beta = sys.nu_b().sample(rng);
      double w = z <= 0.5 ? sys.left(alpha).eval(z) : sys.right(beta).eval(z);
      // a flat-point right branch underflows to 0 for points just past 1/2;
      // the true image is a positive value beyond fp range, so clamp to the
      // smallest positive double (the orbit then sits in an astronomically
      // long excursion, which is what such systems actually do)
      if (w == 0.0 && z > 0.5) w = std::numeric_limits<double>::denorm_min();
      w *= 1.0 + (rng.next_unit() - 0.5) * 0x1.0p-45;
      return w > 1.0 ? 1.0 : w;
    };
    std::uint64_t k = 0;
    for (std::uint64_t b = 0; b < burn_in && x != 0.0; ++b) x = step(x);
    for (; k < shard_steps; ++k) {
      if (x == 0.0) {
        shard_absorbed[s] = 1;
        break;
      }
      x = step(x);
      for (std::size_t c = 0; c < nc; ++c)
        if (x > cells[c].left && x <= cells[c].right) ++counts[c];
    }
    shard_effective[s] = k;
  });

  OccupationEstimate est;
  est.cells = cells;
  est.counts.assign(nc, 0);
  est.steps = steps;
  est.seed = seed;
  est.y_index = y_index;
  for (std::size_t s = 0; s < batches; ++s) {
    est.absorbed = est.absorbed || shard_absorbed[s];
    est.effective_steps += shard_effective[s];
    for (std::size_t c = 0; c < nc; ++c) est.counts[c] += shard_counts[s][c];
  }

  est.ratios.assign(nc, 0.0);
  est.ci_halfwidth.assign(nc, 0.0);
  double y_total = static_cast<double>(est.counts[y_index]);
  if (y_total == 0.0) {
    est.reliable = false;
    return est;
  }
  for (std::size_t c = 0; c < nc; ++c)
    est.ratios[c] = static_cast<double>(est.counts[c]) / y_total;

  for (std::size_t s = 0; s < batches; ++s)
    if (shard_counts[s][y_index] < 30) est.reliable = false;

  for (std::size_t c = 0; c < nc; ++c) {
    double mean = 0.0, m2 = 0.0;
    std::size_t used = 0;
    for (std::size_t s = 0; s < batches; ++s) {
      double yc = static_cast<double>(shard_counts[s][y_index]);
      if (yc == 0.0) continue;
      double r = static_cast<double>(shard_counts[s][c]) / yc;
      ++used;
      double d = r - mean;
      mean += d / used;
      m2 += d * (r - mean);
    }
    if (used > 1)
      est.ci_halfwidth[c] = 1.96 * std::sqrt(m2 / (used - 1) / used);
  }
  return est;
}

ReturnTimeHistogram return_time_histogram(const RandomMapSystem& sys, std::size_t n_returns,
                                          std::size_t cap, std::uint64_t seed) {
  if (n_returns < 1000) throw std::invalid_argument("return_time_histogram: need >= 1e3 returns");
  RngStream rng(derive_seed(seed, "return-times", "draws"));
  ReturnTimeHistogram h;
  h.total = n_returns;
  std::vector<std::uint64_t>& counts = h.counts;
  double sum = 0.0;
  std::uint64_t kept = 0;
  for (std::size_t k = 0; k < n_returns; ++k) {
    double u = rng.next_unit();
    while (u == 0.0) u = rng.next_unit();
    double x = 0.5 + 0.5 * u;
    double beta = sys.nu_b().sample(rng);
    InducedStep st = induced_step(sys, x, beta, rng, cap);
    if (st.censored) {
      ++h.censored;
      continue;
    }
    std::size_t rt = st.left_steps + 1;  // count the right-branch step too
    if (counts.size() <= rt) counts.resize(rt + 1, 0);
    ++counts[rt];
    sum += static_cast<double>(rt);
    ++kept;
  }
  if (kept > 0) h.mean = sum / static_cast<double>(kept);

  // survival-function slope over the decade(s) where it is resolved
  std::vector<double> logn, logs;
  double denom = static_cast<double>(kept);
  if (denom > 0) {
    std::vector<double> survival(counts.size() + 1, 0.0);
    double acc = 0.0;
    for (std::size_t t = counts.size(); t-- > 1;) {
      acc += static_cast<double>(counts[t]);
      survival[t] = acc / denom;
    }
    // stay a decade below the cap: conditioning on rt <= cap steepens the
    // very end of the empirical survival function
    std::size_t t_max = std::min(survival.size(), cap / 8 + 1);
    for (std::size_t t = 2; t < t_max; ++t) {
      double s = survival[t];
      if (s <= 0.5 && s * denom >= 5.0) {
        logn.push_back(std::log(static_cast<double>(t)));
        logs.push_back(std::log(s));
      }
    }
  }
  if (logn.size() >= 3) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < logn.size(); ++i) {
      mx += logn[i];
      my += logs[i];
    }
    mx /= logn.size();
    my /= logn.size();
    double sxx = 0, sxy = 0, sse = 0;
    for (std::size_t i = 0; i < logn.size(); ++i) {
      sxx += (logn[i] - mx) * (logn[i] - mx);
      sxy += (logn[i] - mx) * (logs[i] - my);
    }
    if (sxx > 0) {
      h.tail_exponent = sxy / sxx;
      for (std::size_t i = 0; i < logn.size(); ++i) {
        double r = logs[i] - (my + h.tail_exponent * (logn[i] - mx));
        sse += r * r;
      }
      if (logn.size() > 2)
        h.tail_std_error = std::sqrt(sse / (logn.size() - 2) / sxx);
      h.heavy_tail = h.tail_exponent >= -1.0;
    }
  }
  return h;
}

std::vector<ComparisonRow> occupation_vs_prediction(
    const OccupationEstimate& est,
    const std::vector<std::pair<std::size_t, double>>& predictor) {
  std::vector<ComparisonRow> rows;
  double sp = 0.0, sep = 0.0;
  for (const auto& [n, p] : predictor) {
    for (std::size_t c = 0; c < est.cells.size(); ++c) {
      if (est.cells[c].index == static_cast<int>(n) && est.ratios[c] > 0.0 && p > 0.0) {
        rows.push_back({n, est.ratios[c], p, 0.0});
        sp += p * p;
        sep += est.ratios[c] * p;
      }
    }
  }
  if (rows.empty())
    throw std::invalid_argument("occupation_vs_prediction: no overlap between estimate "
                                "cells and predictor indices");
  double scale = sep / sp;
  for (auto& r : rows) r.rescaled_ratio = r.empirical / (scale * r.predicted);
  return rows;
}

}  // namespace rpcm
