#include "rpcm/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace rpcm {

namespace {

struct LinFit {
  double slope = 0.0, se = 0.0;
  std::size_t n = 0;
};

LinFit line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinFit f;
  f.n = x.size();
  if (f.n < 2) return f;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < f.n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= f.n;
  my /= f.n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < f.n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  if (f.n > 2) {
    double sse = 0;
    for (std::size_t i = 0; i < f.n; ++i) {
      double r = y[i] - (my + f.slope * (x[i] - mx));
      sse += r * r;
    }
    f.se = std::sqrt(sse / (f.n - 2) / sxx);
  }
  return f;
}

}  // namespace

ExponentFit fit_exponent(const std::vector<std::pair<std::size_t, double>>& series,
                         std::size_t window_lo, std::size_t window_hi) {
  if (window_lo < 1 || window_hi < window_lo)
    throw std::invalid_argument("fit_exponent: bad window");
  std::vector<double> lx, ly;
  for (const auto& [n, a] : series) {
    if (n < window_lo || n > window_hi) continue;
    if (!(a > 0.0)) throw std::invalid_argument("fit_exponent: nonpositive series value");
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(a));
  }
  if (lx.size() < 2) throw std::invalid_argument("fit_exponent: fewer than 2 points in window");

  LinFit full = line_fit(lx, ly);
  ExponentFit out;
  out.exponent = full.slope;
  out.std_error = full.se;
  out.points = lx.size();

  // split at the geometric midpoint; a genuine power law fits both halves alike
  double mid = 0.5 * (std::log(static_cast<double>(window_lo)) +
                      std::log(static_cast<double>(window_hi)));
  std::vector<double> x1, y1, x2, y2;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    if (lx[i] <= mid) {
      x1.push_back(lx[i]);
      y1.push_back(ly[i]);
    } else {
      x2.push_back(lx[i]);
      y2.push_back(ly[i]);
    }
  }
  if (x1.size() >= 2 && x2.size() >= 2) {
    out.first_half = line_fit(x1, y1).slope;
    out.second_half = line_fit(x2, y2).slope;
    double gap = std::abs(out.second_half - out.first_half);
    out.slow_variation =
        gap > 0.1 || (gap > 0.1 * std::abs(out.exponent) && gap > 0.01);
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::finite:
      return "finite";
    case Verdict::infinite:
      return "infinite";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

VerdictReport finiteness_verdict(const std::vector<std::pair<std::size_t, double>>& series,
                                 const SystemTraits* traits, std::size_t window_lo,
                                 std::size_t window_hi) {
  VerdictReport rep;
  if (traits && traits->always_infinite) {
    rep.verdict = Verdict::infinite;
    rep.analytic_rule = true;
    rep.detail = "family rule: the invariant measure is infinite for all parameters";
    return rep;
  }
  std::size_t in_window = 0;
  for (const auto& [n, a] : series)
    if (n >= window_lo && n <= window_hi) ++in_window;
  if (in_window < 4) {
    rep.verdict = Verdict::inconclusive;
    rep.detail = "window shorter than 4 points";
    return rep;
  }
  rep.fit = fit_exponent(series, window_lo, window_hi);
  double p = rep.fit.exponent, band = 2.0 * rep.fit.std_error;
  if (p + band < -1.0) {
    rep.verdict = Verdict::finite;
    rep.detail = "decay exponent below -1";
  } else if (p - band > -1.0) {
    rep.verdict = Verdict::infinite;
    rep.detail = "decay exponent above -1";
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.detail = "decay exponent within the guard band around -1";
  }
  if (rep.fit.slow_variation)
    rep.detail += "; slow variation detected, consider a log-scale model";
  return rep;
}

SandwichReport sandwich_report(const RandomMapSystem& sys, double alpha_major,
                               double alpha_minor, std::size_t n_lo, std::size_t n_hi,
                               std::size_t points, double envelope_c) {
  SandwichReport rep;
  rep.dominance = check_dominance(sys, alpha_major, alpha_minor, envelope_c);
  if (!rep.dominance.pass)
    throw std::runtime_error("sandwich_report: envelope condition failed (" +
                             rep.dominance.detail + "); the comparison does not apply");

  std::vector<std::size_t> ns = log_spaced_indices(std::max<std::size_t>(2, n_lo), n_hi, points);
  RandomMapSystem lower_sys = sys.with_constant_alpha(alpha_major);
  RandomMapSystem upper_sys = sys.with_constant_alpha(alpha_minor);

  rep.lower.alpha = alpha_major;
  rep.lower.series = predicted_cell_measure_series(lower_sys, alpha_major, ns);
  rep.lower.verdict = finiteness_verdict(rep.lower.series, &lower_sys.traits(), n_lo, n_hi);
  rep.upper.alpha = alpha_minor;
  rep.upper.series = predicted_cell_measure_series(upper_sys, alpha_minor, ns);
  rep.upper.verdict = finiteness_verdict(rep.upper.series, &upper_sys.traits(), n_lo, n_hi);

  bool low_inf = rep.lower.verdict.verdict == Verdict::infinite;
  bool up_fin = rep.upper.verdict.verdict == Verdict::finite;
  if (low_inf && up_fin) {
    rep.overall = Verdict::inconclusive;
    rep.detail = "contradictory bounds; estimates too coarse";
  } else if (low_inf) {
    rep.overall = Verdict::infinite;
    rep.detail = "lower reference system already infinite";
  } else if (up_fin) {
    rep.overall = Verdict::finite;
    rep.detail = "upper reference system already finite";
  } else {
    rep.overall = Verdict::inconclusive;
    rep.detail = "neither bound is decisive";
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < rep.lower.series.size() && i < rep.upper.series.size(); ++i) {
    double lo = rep.lower.series[i].second, up = rep.upper.series[i].second;
    if (up > 0.0) worst = std::max(worst, lo / up);
  }
  rep.ratio_bound = worst;
  return rep;
}

}  // namespace rpcm
