#include "rpcm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rpcm {

ParameterMeasure ParameterMeasure::dirac(double p) {
  return discrete({{p, 1.0}});
}

ParameterMeasure ParameterMeasure::discrete(std::vector<Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("measure: no atoms");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.param < b.param; });
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (a.weight < 0.0) throw std::invalid_argument("measure: negative weight");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("measure: weights sum to " + std::to_string(total) +
                                ", expected 1");
  ParameterMeasure m;
  m.discrete_ = true;
  m.atoms_ = std::move(atoms);
  m.cum_.reserve(m.atoms_.size());
  double c = 0.0;
  for (const Atom& a : m.atoms_) m.cum_.push_back(c += a.weight);
  m.cum_.back() = 1.0;
  return m;
}

ParameterMeasure ParameterMeasure::continuous(Continuous c) {
  if (!c.quantile || !c.cdf) throw std::invalid_argument("measure: quantile and cdf required");
  if (c.quad_nodes < 2) throw std::invalid_argument("measure: quad_nodes < 2");
  if (!(c.lo < c.hi)) throw std::invalid_argument("measure: empty support");
  ParameterMeasure m;
  m.discrete_ = false;
  m.cont_ = std::move(c);
  if (std::abs(m.total_mass() - 1.0) > 1e-10)
    throw std::invalid_argument("measure: cdf does not span unit mass");
  return m;
}

ParameterMeasure ParameterMeasure::uniform(double lo, double hi, int quad_nodes) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("uniform measure: bad support");
  Continuous c;
  c.lo = lo;
  c.hi = hi;
  c.density = [lo, hi](double) { return 1.0 / (hi - lo); };
  c.cdf = [lo, hi](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); };
  c.quantile = [lo, hi](double u) { return lo + u * (hi - lo); };
  c.quad_nodes = quad_nodes;
  c.label = "uniform";
  return continuous(std::move(c));
}

ParameterMeasure ParameterMeasure::power_law(double lo, double hi, double exponent,
                                             int quad_nodes) {
  bool unbounded = std::isinf(hi);
  double e1 = exponent + 1.0;
  if (!(lo > 0.0) && e1 <= 0.0)
    throw std::invalid_argument("power-law measure: not integrable at 0");
  if (unbounded && e1 >= 0.0)
    throw std::invalid_argument("power-law measure: not normalizable on unbounded support");
  if (e1 == 0.0) {
    // density ~ 1/x: log CDF
    double z = std::log(hi / lo);
    Continuous c;
    c.lo = lo;
    c.hi = hi;
    c.density = [lo, z](double x) { return 1.0 / (x * z); };
    c.cdf = [lo, z](double x) { return std::log(x / lo) / z; };
    c.quantile = [lo, z](double u) { return lo * std::exp(u * z); };
    c.quad_nodes = quad_nodes;
    c.label = "power-law";
    return continuous(std::move(c));
  }
  double a = std::pow(lo, e1);
  double b = unbounded ? 0.0 : std::pow(hi, e1);
  double z = b - a;  // negative when e1<0 and hi<lo^...: handled by ratio below
  Continuous c;
  c.lo = lo;
  c.hi = hi;
  c.density = [exponent, z](double x) { return (exponent + 1.0) * std::pow(x, exponent) / z; };
  c.cdf = [a, z, e1](double x) { return std::clamp((std::pow(x, e1) - a) / z, 0.0, 1.0); };
  c.quantile = [a, z, e1](double u) { return std::pow(a + u * z, 1.0 / e1); };
  c.quad_nodes = quad_nodes;
  c.label = "power-law";
  return continuous(std::move(c));
}

double ParameterMeasure::singleton_value() const {
  if (!is_singleton()) throw std::logic_error("measure: not a singleton");
  return atoms_.front().param;
}

double ParameterMeasure::support_lo() const {
  return discrete_ ? atoms_.front().param : cont_.lo;
}

double ParameterMeasure::support_hi() const {
  return discrete_ ? atoms_.back().param : cont_.hi;
}

bool ParameterMeasure::contains(double p, double tol) const {
  if (discrete_) {
    for (const Atom& a : atoms_)
      if (std::abs(a.param - p) <= tol) return true;
    return false;
  }
  return p >= cont_.lo - tol && p <= cont_.hi + tol;
}

double ParameterMeasure::sample(RngStream& rng) const {
  if (discrete_) {
    if (atoms_.size() == 1) return atoms_.front().param;
    double u = rng.next_unit();
    auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    if (it == cum_.end()) --it;
    return atoms_[static_cast<std::size_t>(it - cum_.begin())].param;
  }
  return cont_.quantile(rng.next_unit());
}

double ParameterMeasure::expectation(const std::function<double(double)>& f) const {
  if (discrete_) {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.weight * f(a.param);
    return s;
  }
  return expectation_on_quantile_range(0.0, 1.0, f);
}

double ParameterMeasure::expectation_on_quantile_range(
    double u0, double u1, const std::function<double(double)>& f) const {
  if (discrete_) throw std::logic_error("measure: quantile range on discrete measure");
  if (u1 <= u0) return 0.0;
  int n = std::max(4, static_cast<int>(std::ceil(cont_.quad_nodes * (u1 - u0))));
  double h = (u1 - u0) / n;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += f(cont_.quantile(u0 + (k + 0.5) * h));
  return s * h;
}

double ParameterMeasure::cdf(double p) const {
  if (discrete_) {
    double s = 0.0;
    for (const Atom& a : atoms_)
      if (a.param <= p) s += a.weight;
    return s;
  }
  if (p <= cont_.lo) return 0.0;
  if (p >= cont_.hi) return 1.0;
  return cont_.cdf(p);
}

double ParameterMeasure::quantile(double u) const {
  if (discrete_) throw std::logic_error("measure: quantile on discrete measure");
  return cont_.quantile(std::clamp(u, 0.0, 1.0));
}

double ParameterMeasure::total_mass() const {
  if (discrete_) return cum_.back();
  double hi = std::isinf(cont_.hi) ? std::numeric_limits<double>::max() : cont_.hi;
  return cont_.cdf(hi) - cont_.cdf(cont_.lo);
}

}  // namespace rpcm
