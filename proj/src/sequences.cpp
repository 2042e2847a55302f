#include "rpcm/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rpcm {

AlphaStream AlphaStream::constant(double alpha) {
  AlphaStream s;
  s.constant_ = true;
  s.value_ = alpha;
  return s;
}

AlphaStream AlphaStream::iid(ParameterMeasure nu_a, std::uint64_t seed) {
  AlphaStream s;
  s.constant_ = false;
  s.nu_ = std::move(nu_a);
  s.rng_ = RngStream(seed);
  return s;
}

double AlphaStream::at(std::size_t n) {
  if (n == 0) throw std::invalid_argument("AlphaStream: indices start at 1");
  if (constant_) return value_;
  while (draws_.size() < n) draws_.push_back(nu_.sample(rng_));
  return draws_[n - 1];
}

double AlphaStream::constant_value() const {
  if (!constant_) throw std::logic_error("AlphaStream: not in constant mode");
  return value_;
}

XSequence x_sequence(const RandomMapSystem& sys, AlphaStream& alphas, std::size_t n_terms) {
  if (n_terms < 1) throw std::invalid_argument("x_sequence: need n_terms >= 1");
  XSequence xs;
  xs.values.reserve(n_terms + 1);
  xs.values.push_back(0.5);
  for (std::size_t n = 1; n <= n_terms; ++n) {
    double next = sys.left(alphas.at(n)).invert(xs.values.back());
    if (!(next > 0.0) || next >= xs.values.back()) {
      xs.truncated = true;
      break;
    }
    xs.values.push_back(next);
  }
  return xs;
}

std::size_t eta_index(const RandomMapSystem& sys, std::span<const double> xs, double beta) {
  double s1 = sys.right(beta).top();
  if (!(s1 > 0.0)) throw std::domain_error("eta_index: S_beta(1) = 0, degenerate right branch");
  if (s1 > 0.5) return 0;  // X_0 = (1/2, 1]
  // first k with x_k < s1 gives eta = k-1; ties x_k == s1 belong to X_k
  for (std::size_t k = 1; k <= xs.size(); ++k)
    if (xs[k - 1] < s1) return k - 1;
  throw std::runtime_error("eta_index: x-sequence too short to bracket S_beta(1); extend it");
}

std::vector<double> y_sequence(const RandomMapSystem& sys, std::span<const double> xs,
                               std::size_t eta, double beta, std::size_t m_terms) {
  if (xs.size() < eta + m_terms)
    throw std::invalid_argument("y_sequence: x-sequence does not cover eta + m_terms");
  std::vector<double> ys;
  ys.reserve(m_terms + 1);
  ys.push_back(1.0);
  RightBranch s = sys.right(beta);
  for (std::size_t n = 1; n <= m_terms; ++n) {
    auto y = s.invert(xs[eta + n - 1]);
    if (!y)
      throw std::runtime_error("y_sequence: x_{eta+n} above the right-branch image; "
                               "eta is inconsistent with the inversion");
    if (!(*y < ys.back()))
      throw std::runtime_error("y_sequence: lost strict monotonicity");
    ys.push_back(*y);
  }
  return ys;
}

PartitionSequences make_partition_sequences(const RandomMapSystem& sys, AlphaStream& alphas,
                                            double beta, std::size_t m_terms,
                                            std::size_t x_cap) {
  std::size_t len = std::max<std::size_t>(64, m_terms + 1);
  for (;;) {
    XSequence xs = x_sequence(sys, alphas, len);
    std::optional<std::size_t> eta;
    try {
      eta = eta_index(sys, xs.values, beta);
    } catch (const std::runtime_error&) {
      if (xs.truncated)
        throw std::runtime_error(
            "make_partition_sequences: x-sequence exhausted floating point before "
            "bracketing S_beta(1)");
    }
    if (eta && xs.values.size() >= *eta + m_terms) {
      PartitionSequences ps;
      ps.eta = *eta;
      ps.ys = y_sequence(sys, xs.values, *eta, beta, m_terms);
      ps.xs = std::move(xs);
      ps.beta = beta;
      return ps;
    }
    if (len >= x_cap)
      throw std::runtime_error("make_partition_sequences: x-sequence cap reached");
    len *= 2;
  }
}

std::size_t tail_index(const RandomMapSystem& sys, double delta, int quadrature_nodes) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("tail_index: delta outside (0,1)");
  constexpr std::size_t kCap = 1000000;

  // quadrature nodes over alpha (constant stream per node) and beta
  std::vector<std::pair<double, double>> anodes;  // (alpha, weight)
  const ParameterMeasure& na = sys.nu_a();
  if (na.is_discrete())
    for (const auto& a : na.atoms()) anodes.push_back({a.param, a.weight});
  else
    for (int k = 0; k < quadrature_nodes; ++k)
      anodes.push_back({na.quantile((k + 0.5) / quadrature_nodes), 1.0 / quadrature_nodes});
  std::vector<std::pair<double, double>> bnodes;
  const ParameterMeasure& nb = sys.nu_b();
  if (nb.is_discrete())
    for (const auto& b : nb.atoms()) bnodes.push_back({b.param, b.weight});
  else
    for (int k = 0; k < quadrature_nodes; ++k)
      bnodes.push_back({nb.quantile((k + 0.5) / quadrature_nodes), 1.0 / quadrature_nodes});

  // nodes whose eta cannot be bracketed within fp range have image intervals
  // far below resolution: their integrand contribution is 0
  constexpr std::size_t kNegligible = static_cast<std::size_t>(-1);
  struct NodeState {
    XSequence xs;
    double gap;  // x_1 - x_2
    std::vector<std::size_t> eta;  // per beta node
  };
  std::vector<NodeState> states(anodes.size());
  for (std::size_t i = 0; i < anodes.size(); ++i) {
    AlphaStream s = AlphaStream::constant(anodes[i].first);
    states[i].xs = x_sequence(sys, s, 64);
    states[i].gap = states[i].xs.x(1) - states[i].xs.x(2);
    states[i].eta.resize(bnodes.size());
    for (std::size_t j = 0; j < bnodes.size(); ++j) {
      double s1 = sys.right(bnodes[j].first).top();
      if (!(s1 > 0.0)) {
        states[i].eta[j] = kNegligible;
        continue;
      }
      while (true) {
        try {
          states[i].eta[j] = eta_index(sys, states[i].xs.values, bnodes[j].first);
          break;
        } catch (const std::runtime_error&) {
          if (states[i].xs.truncated || states[i].xs.count() > kCap) {
            states[i].eta[j] = kNegligible;
            break;
          }
          AlphaStream s2 = AlphaStream::constant(anodes[i].first);
          states[i].xs = x_sequence(sys, s2, states[i].xs.count() * 2);
        }
      }
    }
  }

  auto integral_at = [&](std::size_t n0) {
    double total = 0.0;
    for (std::size_t i = 0; i < anodes.size(); ++i) {
      NodeState& st = states[i];
      for (std::size_t j = 0; j < bnodes.size(); ++j) {
        if (st.eta[j] == kNegligible) continue;
        std::size_t need = st.eta[j] + n0;
        while (st.xs.count() < need) {
          if (st.xs.truncated) return 0.0;  // deep terms below resolution: integrand ~ 0
          AlphaStream s2 = AlphaStream::constant(anodes[i].first);
          std::size_t len = std::min<std::size_t>(std::max(st.xs.count() * 2, need), kCap + 1);
          st.xs = x_sequence(sys, s2, len);
          if (st.xs.count() < need && st.xs.count() >= kCap) return 0.0;
          if (st.xs.count() < need && st.xs.truncated) break;
        }
        double u = st.xs.count() >= need ? st.xs.x(need) : 0.0;
        auto y = sys.right(bnodes[j].first).invert(u);
        double yv = y ? *y : 0.5;
        total += anodes[i].second * bnodes[j].second * (yv - 0.5) / st.gap;
      }
    }
    return total;
  };

  // the integrand decreases in N0, so exponential search plus bisection
  // returns the same smallest index as a linear scan
  if (integral_at(1) < delta) return 1;
  std::size_t lo = 1, hi = 2;
  while (integral_at(hi) >= delta) {
    lo = hi;
    if (hi > kCap / 2) throw TailIndexNotFound("tail_index: cap of 1e6 exceeded");
    hi *= 2;
  }
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    (integral_at(mid) >= delta ? lo : hi) = mid;
  }
  return hi;
}

namespace {

// Locate, in quantile space of nu_B, the boundary where S_beta(1) crosses
// level x; assumes S_beta(1) is monotone in beta (verified by the caller).
// Returns u such that {S(1) > x} = (u,1] if increasing, [0,u) if decreasing.
double crossing_quantile(const RandomMapSystem& sys, const ParameterMeasure& nb,
                         double level, bool increasing) {
  auto s_top = [&](double u) { return sys.right(nb.quantile(u)).top(); };
  double lo = 0.0, hi = 1.0;
  // predicate: S(1) <= level on the "low" side of the boundary
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double v = s_top(mid);
    bool below = increasing ? (v <= level) : (v > level);
    (below ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<std::pair<std::size_t, double>> predicted_cell_measure_series(
    const RandomMapSystem& sys, double reference_alpha, const std::vector<std::size_t>& ns) {
  if (ns.empty()) return {};
  std::size_t n_max = *std::max_element(ns.begin(), ns.end());
  if (*std::min_element(ns.begin(), ns.end()) < 2)
    throw std::invalid_argument("predicted_cell_measure: n must be >= 2");

  AlphaStream ref = AlphaStream::constant(reference_alpha);
  XSequence xs = x_sequence(sys, ref, n_max);
  if (xs.count() < n_max)
    throw std::runtime_error("predicted_cell_measure: x-sequence hit floating-point "
                             "resolution before n; shrink the window");

  const ParameterMeasure& nb = sys.nu_b();
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(ns.size());

  if (nb.is_discrete()) {
    for (std::size_t n : ns) {
      double total = 0.0;
      for (const auto& atom : nb.atoms()) {
        // S(1) at or below the deepest computed x already implies eta >= n
        double s1 = sys.right(atom.param).top();
        if (!(s1 > 0.0))
          throw std::domain_error("predicted_cell_measure: degenerate right branch");
        if (s1 <= xs.values.back()) {
          total += atom.weight;
          continue;
        }
        std::size_t eta = eta_index(sys, xs.values, atom.param);
        if (eta >= n) {
          total += atom.weight;
        } else if (eta == n - 1) {
          total += atom.weight * 0.5;  // y_1 - 1/2
        } else {
          auto y = sys.right(atom.param).invert(xs.x(n - 1));
          if (!y) throw std::runtime_error("predicted_cell_measure: inversion failed");
          total += atom.weight * (*y - 0.5);
        }
      }
      out.push_back({n, total});
    }
    return out;
  }

  // continuous nu_B: S.(1) monotone direction from the support corners,
  // cross-checked on interior quantiles (the level-set bisection needs it)
  double t_lo = sys.right(nb.quantile(1e-9)).top();
  double t_hi = sys.right(nb.quantile(1.0 - 1e-9)).top();
  bool constant_top = std::abs(t_hi - t_lo) <= 1e-14 * std::max(1.0, std::abs(t_hi));
  bool increasing = t_hi > t_lo;
  if (!constant_top) {
    double prev = t_lo;
    for (double u : {0.2, 0.4, 0.6, 0.8}) {
      double t = sys.right(nb.quantile(u)).top();
      if (increasing ? t < prev - 1e-14 : t > prev + 1e-14)
        throw std::runtime_error(
            "predicted_cell_measure: S_beta(1) is not monotone in beta; level sets "
            "cannot be located by bisection");
      prev = t;
    }
  }

  for (std::size_t n : ns) {
    double total = 0.0;
    if (constant_top) {
      // single level set
      std::size_t eta = eta_index(sys, xs.values, nb.quantile(0.5));
      if (eta >= n)
        total = 1.0;
      else if (eta == n - 1)
        total = 0.5;
      else {
        double xlevel = xs.x(n - 1);
        total = nb.expectation([&](double b) {
          auto y = sys.right(b).invert(xlevel);
          return y ? *y - 0.5 : 0.0;
        });
      }
    } else {
      // split the quantile axis at eta = n-2 | n-1 | >= n
      double level_hi = xs.x(n - 1);  // eta <= n-2  <=>  S(1) > x_{n-1}
      double level_lo = xs.x(n);      // eta >= n    <=>  S(1) <= x_n
      double u_hi = crossing_quantile(sys, nb, level_hi, increasing);
      double u_lo = crossing_quantile(sys, nb, level_lo, increasing);
      double xlevel = xs.x(n - 1);
      auto integrand = [&](double b) {
        auto y = sys.right(b).invert(xlevel);
        return y ? *y - 0.5 : 0.0;
      };
      if (increasing) {
        // [0,u_lo): eta >= n; [u_lo,u_hi): eta = n-1; (u_hi,1]: eta <= n-2
        total += u_lo;
        total += 0.5 * std::max(0.0, u_hi - u_lo);
        total += nb.expectation_on_quantile_range(u_hi, 1.0, integrand);
      } else {
        total += 1.0 - u_lo;
        total += 0.5 * std::max(0.0, u_lo - u_hi);
        total += nb.expectation_on_quantile_range(0.0, u_hi, integrand);
      }
    }
    out.push_back({n, total});
  }
  return out;
}

double predicted_cell_measure(const RandomMapSystem& sys, double reference_alpha,
                              std::size_t n) {
  return predicted_cell_measure_series(sys, reference_alpha, {n}).front().second;
}

std::vector<std::size_t> log_spaced_indices(std::size_t lo, std::size_t hi,
                                            std::size_t count) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("log_spaced_indices: bad range");
  std::set<std::size_t> vals;
  for (std::size_t k = 0; k < count; ++k) {
    double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    double v = std::exp(std::log(static_cast<double>(lo)) +
                        t * (std::log(static_cast<double>(hi)) - std::log(static_cast<double>(lo))));
    vals.insert(static_cast<std::size_t>(std::llround(v)));
  }
  return {vals.begin(), vals.end()};
}

}  // namespace rpcm
