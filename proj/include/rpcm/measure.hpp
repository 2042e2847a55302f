#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpcm/rng.hpp"

namespace rpcm {

// Probability measure on a parameter space: either finitely many atoms or a
// continuous law given through its quantile function. Sampling draws
// quantile(U); expectations use composite midpoint quadrature in quantile
// space, so unit mass is exact and unbounded or singular densities
// (e.g. power laws) are handled without special cases.
class ParameterMeasure {
 public:
  struct Atom {
    double param;
    double weight;
  };

  struct Continuous {
    double lo = 0.0;
    double hi = 0.0;  // may be +inf
    std::function<double(double)> density;   // for reporting/validation
    std::function<double(double)> cdf;       // support -> [0,1]
    std::function<double(double)> quantile;  // [0,1] -> support
    int quad_nodes = 256;
    std::string label;
  };

  static ParameterMeasure dirac(double p);
  static ParameterMeasure discrete(std::vector<Atom> atoms);
  static ParameterMeasure continuous(Continuous c);
  static ParameterMeasure uniform(double lo, double hi, int quad_nodes = 256);
  // density proportional to x^exponent on [lo,hi]; hi may be +inf if exponent < -1
  static ParameterMeasure power_law(double lo, double hi, double exponent,
                                    int quad_nodes = 256);

  bool is_discrete() const { return discrete_; }
  bool is_singleton() const { return discrete_ && atoms_.size() == 1; }
  double singleton_value() const;
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Continuous& law() const { return cont_; }

  double support_lo() const;
  double support_hi() const;
  bool contains(double p, double tol = 1e-12) const;

  double sample(RngStream& rng) const;
  double expectation(const std::function<double(double)>& f) const;
  // integral of f over the quantile slice (u0,u1], with node count scaled down
  double expectation_on_quantile_range(double u0, double u1,
                                       const std::function<double(double)>& f) const;
  double cdf(double p) const;       // mass of {param <= p}
  double quantile(double u) const;  // continuous only

  double total_mass() const;  // 1 up to construction tolerance

 private:
  bool discrete_ = true;
  std::vector<Atom> atoms_;     // sorted by param
  std::vector<double> cum_;     // cumulative weights
  Continuous cont_;
};

}  // namespace rpcm
