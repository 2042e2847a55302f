#include "rpcm/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rpcm/parallel.hpp"

namespace rpcm {

double UlamOperator::row_sum(std::size_t i) const {
  double s = overflow.empty() ? 0.0 : overflow[i];
  for (const auto& [j, v] : rows[i]) s += v;
  return s;
}

void UlamOperator::apply_mass(const std::vector<double>& in, std::vector<double>& out) const {
  out.assign(size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double m = in[i];
    if (m == 0.0) continue;
    for (const auto& [j, v] : rows[i]) out[j] += m * v;
  }
}

namespace {

void sparsify_row(std::vector<double>& counts, double denom, double min_entry,
                  std::vector<std::pair<std::uint32_t, double>>& row) {
  row.clear();
  double kept = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] <= 0.0) continue;
    double v = counts[j] / denom;
    if (v >= min_entry) {
      row.push_back({static_cast<std::uint32_t>(j), v});
      kept += v;
    }
  }
  if (kept > 0.0)
    for (auto& [j, v] : row) v /= kept;  // renormalize after dropping dust
}

}  // namespace

UlamOperator build_ulam_p(const RandomMapSystem& sys, const IntervalPartition& partition,
                          std::size_t samples_per_cell, std::uint64_t seed, int threads) {
  if (samples_per_cell < 100)
    throw std::invalid_argument("build_ulam_p: need at least 100 samples per cell");
  UlamOperator op;
  op.partition = partition;
  op.samples_per_cell = samples_per_cell;
  op.rows.resize(partition.size());
  op.overflow.assign(partition.size(), 0.0);
  op.effective_samples.assign(partition.size(), static_cast<double>(samples_per_cell));

  const double min_entry = 1.0 / static_cast<double>(samples_per_cell);
  parallel_for(partition.size(), threads, [&](std::size_t i) {
    RngStream rng(derive_seed(seed, "ulam-p", "row", i));
    const double a = partition.left(i), w = partition.width(i);
    std::vector<double> counts(partition.size(), 0.0);
    double over = 0.0;
    for (std::size_t k = 0; k < samples_per_cell; ++k) {
      double x = a + w * (static_cast<double>(k) + rng.next_unit()) / samples_per_cell;
      double alpha = sys.nu_a().sample(rng);
      double beta = sys.nu_b().sample(rng);
      double y = x <= 0.5 ? sys.left(alpha).eval(x) : sys.right(beta).eval(x);
      std::ptrdiff_t j = partition.locate(y);
      if (j < 0)
        over += 1.0;
      else
        counts[static_cast<std::size_t>(j)] += 1.0;
    }
    sparsify_row(counts, static_cast<double>(samples_per_cell), min_entry, op.rows[i]);
    op.overflow[i] = over / static_cast<double>(samples_per_cell);
    // overflow stays in the row sum: rescale kept entries to 1 - overflow
    if (op.overflow[i] > 0.0)
      for (auto& [j, v] : op.rows[i]) v *= 1.0 - op.overflow[i];
  });
  return op;
}

UlamOperator build_ulam_py(const RandomMapSystem& sys, const IntervalPartition& y_partition,
                           std::size_t samples_per_cell, std::size_t cap,
                           std::uint64_t seed, int threads) {
  if (samples_per_cell < 100)
    throw std::invalid_argument("build_ulam_py: need at least 100 samples per cell");
  if (cap < 100) throw std::invalid_argument("build_ulam_py: cap too small");
  if (std::abs(y_partition.span_lo() - 0.5) > 1e-12 ||
      std::abs(y_partition.span_hi() - 1.0) > 1e-12)
    throw std::invalid_argument("build_ulam_py: partition must span (1/2, 1]");

  UlamOperator op;
  op.partition = y_partition;
  op.samples_per_cell = samples_per_cell;
  op.induced = true;
  op.rows.resize(y_partition.size());
  op.censored_fraction.assign(y_partition.size(), 0.0);
  op.unreliable.assign(y_partition.size(), 0);
  op.effective_samples.assign(y_partition.size(), 0.0);

  const double min_entry = 1.0 / static_cast<double>(samples_per_cell);
  parallel_for(y_partition.size(), threads, [&](std::size_t i) {
    RngStream rng(derive_seed(seed, "ulam-py", "row", i));
    const double a = y_partition.left(i), w = y_partition.width(i);
    std::vector<double> counts(y_partition.size(), 0.0);
    std::size_t censored = 0;
    for (std::size_t k = 0; k < samples_per_cell; ++k) {
      double x = a + w * (static_cast<double>(k) + rng.next_unit()) / samples_per_cell;
      if (x <= 0.5) x = std::nextafter(0.5, 1.0);
      double beta = sys.nu_b().sample(rng);
      InducedStep st = induced_step(sys, x, beta, rng, cap);
      if (st.censored) {
        ++censored;
        continue;
      }
      std::ptrdiff_t j = y_partition.locate(st.landing);
      if (j < 0)
        ++censored;  // landing at exactly 1/2 is a measure-zero boundary case
      else
        counts[static_cast<std::size_t>(j)] += 1.0;
    }
    std::size_t kept = samples_per_cell - censored;
    op.effective_samples[i] = static_cast<double>(kept);
    op.censored_fraction[i] =
        static_cast<double>(censored) / static_cast<double>(samples_per_cell);
    if (kept == 0) {
      // no usable data; fall back to a uniform (monotone-neutral) row
      auto& row = op.rows[i];
      for (std::size_t j = 0; j < y_partition.size(); ++j)
        row.push_back({static_cast<std::uint32_t>(j),
                       y_partition.width(j) / (y_partition.span_hi() - y_partition.span_lo())});
      op.unreliable[i] = 1;
      return;
    }
    sparsify_row(counts, static_cast<double>(kept), min_entry, op.rows[i]);
    if (op.censored_fraction[i] > 0.5) op.unreliable[i] = 1;
  });
  return op;
}

DensityEstimate induced_invariant_density(const UlamOperator& py, std::size_t max_iters,
                                          double tol) {
  const std::size_t n = py.size();
  if (n == 0) throw std::invalid_argument("induced_invariant_density: empty operator");

  std::vector<double> m(n), sum(n), avg(n), avg_prev(n), scratch(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = py.partition.width(i);
  sum = m;
  avg = m;

  auto residual_of = [&](const std::vector<double>& a) {
    py.apply_mass(a, scratch);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += std::abs(scratch[i] - a[i]);
    double total = 0.0;
    for (double v : a) total += v;
    return total > 0.0 ? r / total : r;  // as if the density were normalized to integral 1
  };

  DensityEstimate est;
  est.y_partition = py.partition;
  double diff = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  while (k < max_iters) {
    ++k;
    py.apply_mass(m, scratch);
    m.swap(scratch);
    avg_prev = avg;
    diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum[i] += m[i];
      avg[i] = sum[i] / static_cast<double>(k + 1);
      diff += std::abs(avg[i] - avg_prev[i]);
    }
    if (diff < tol && k % 16 == 0 && residual_of(avg) <= 2.0 * tol) {
      est.converged = true;
      break;
    }
  }
  est.iterations = k;
  if (!est.converged && diff < tol && residual_of(avg) <= 2.0 * tol) est.converged = true;

  double total = 0.0;
  for (double v : avg) total += v;
  est.h0.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    est.h0[i] = avg[i] / total / py.partition.width(i);

  // residual of the normalized fixed point, in cell mass
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) mass[i] = est.h0[i] * py.partition.width(i);
  py.apply_mass(mass, scratch);
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) r += std::abs(scratch[i] - mass[i]);
  est.residual_l1 = r;
  return est;
}

void extend_density(DensityEstimate& est, const UlamOperator& ulam_p,
                    const IntervalPartition& x_partition, std::size_t n_trunc) {
  if (n_trunc < 1) throw std::invalid_argument("extend_density: n_trunc >= 1 required");
  if (ulam_p.partition.breakpoints() != x_partition.breakpoints())
    throw std::invalid_argument("extend_density: operator partition differs from x_partition");
  if (!x_partition.refines(est.y_partition))
    throw std::invalid_argument(
        "extend_density: x_partition does not contain the Y partition as a refinement");

  const std::size_t n = x_partition.size();
  std::vector<double> v(n, 0.0);
  // embed h0: Y-cell mass spread over the x-cells covering it
  for (std::size_t i = 0; i < est.y_partition.size(); ++i) {
    double lo = est.y_partition.left(i), hi = est.y_partition.right(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (x_partition.left(j) >= lo - 1e-15 && x_partition.right(j) <= hi + 1e-15)
        v[j] = est.h0[i] * x_partition.width(j);
    }
  }

  std::vector<double> accum = v, cur = v, scratch(n);
  std::vector<int> grow_streak(n, 0);
  est.divergent.assign(n, 0);
  est.tail_mass = 0.0;
  std::size_t t = 0;
  for (; t < n_trunc; ++t) {
    ulam_p.apply_mass(cur, scratch);
    cur.swap(scratch);
    // keep only the excursion side (cells inside (0,1/2])
    for (std::size_t j = 0; j < n; ++j)
      if (x_partition.right(j) > 0.5 + 1e-12) cur[j] = 0.0;
    double term = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (cur[j] > 0.0) {
        if (accum[j] > 0.0 && cur[j] >= 0.005 * accum[j]) {
          if (++grow_streak[j] >= 50) est.divergent[j] = 1;
        } else {
          grow_streak[j] = 0;
        }
        accum[j] += cur[j];
        term += cur[j];
      }
    }
    est.tail_mass = term;
    double total = 0.0;
    for (double a : accum) total += a;
    if (term < 1e-6 * total) {
      ++t;
      break;
    }
  }
  est.truncation_depth = t;
  est.x_partition = x_partition;
  est.h_ext.resize(n);
  for (std::size_t j = 0; j < n; ++j) est.h_ext[j] = accum[j] / x_partition.width(j);
}

double measure_between(const IntervalPartition& part, const std::vector<double>& density,
                       double lo, double hi) {
  if (!part.has_breakpoint(lo) || !part.has_breakpoint(hi))
    throw std::invalid_argument("measure_between: endpoints must be partition breakpoints");
  double s = 0.0;
  for (std::size_t j = 0; j < part.size(); ++j)
    if (part.left(j) >= lo - 1e-12 && part.right(j) <= hi + 1e-12)
      s += density[j] * part.width(j);
  return s;
}

namespace {

// one-sided standard normal quantile by bisection on erfc
double normal_upper_quantile(double p) {
  double lo = 0.0, hi = 12.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(mid / std::sqrt(2.0)) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MonotoneReport check_monotone_preservation(const UlamOperator& op, std::size_t trials,
                                           std::uint64_t seed) {
  if (trials < 10) throw std::invalid_argument("check_monotone_preservation: trials >= 10");
  const std::size_t n = op.size();

  MonotoneReport rep;
  rep.trials = trials;
  rep.pass = true;
  rep.comparisons = trials * (n - 1);
  rep.z_critical =
      std::max(3.0, normal_upper_quantile(0.01 / static_cast<double>(rep.comparisons)));

  RngStream rng(derive_seed(seed, "monotone", "trials"));
  std::vector<double> f(n), g(n), varg(n), cov(n);

  for (std::size_t t = 0; t < trials; ++t) {
    if (t == 0) {
      std::fill(f.begin(), f.end(), 1.0);
    } else if (t == 1) {
      std::fill(f.begin(), f.end(), 0.0);
      f[0] = 1.0;
    } else {
      // random non-increasing nonnegative step density via suffix sums
      double acc = 0.0;
      for (std::size_t i = n; i-- > 0;) {
        acc += rng.next_unit();
        f[i] = acc;
      }
      for (auto& v : f) v /= acc;
    }

    std::fill(g.begin(), g.end(), 0.0);
    std::fill(varg.begin(), varg.end(), 0.0);
    std::fill(cov.begin(), cov.end(), 0.0);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) {
      double mass = f[i] * op.partition.width(i);
      if (mass == 0.0) continue;
      const auto& row = op.rows[i];
      for (const auto& [j, p] : row) g[j] += mass * p / op.partition.width(j);
      if (op.exact) continue;
      double m = op.effective_samples.empty() ? static_cast<double>(op.samples_per_cell)
                                              : op.effective_samples[i];
      if (!(m > 0)) continue;  // synthetic fallback row: deterministic entries
      // Laplace-smoothed entry probabilities, so columns the row never hit
      // still contribute their sampling uncertainty
      std::fill(q.begin(), q.end(), 0.5 / (m + 1.0));
      for (const auto& [j, p] : row) q[j] = (p * m + 0.5) / (m + 1.0);
      for (std::size_t j = 0; j < n; ++j) {
        double wj = op.partition.width(j);
        varg[j] += mass * mass * q[j] * (1.0 - q[j]) / (m * wj * wj);
        if (j + 1 < n)
          cov[j] += mass * mass * q[j] * q[j + 1] / (m * wj * op.partition.width(j + 1));
      }
    }

    for (std::size_t j = 0; j + 1 < n; ++j) {
      double inc = g[j + 1] - g[j];
      rep.max_increase = std::max(rep.max_increase, inc);
      double sigma = std::sqrt(std::max(0.0, varg[j] + varg[j + 1] + 2.0 * cov[j]));
      rep.max_excess = std::max(rep.max_excess, inc - (1e-6 + 3.0 * sigma));
      double z;
      if (sigma > 0.0)
        z = (inc - 1e-6) / sigma;
      else
        z = inc > 1e-6 ? std::numeric_limits<double>::infinity() : 0.0;
      if (z > rep.max_z) rep.max_z = z;
      if (z > rep.z_critical) rep.pass = false;
    }
  }
  rep.max_excess = std::max(rep.max_excess, 0.0);
  return rep;
}

}  // namespace rpcm
