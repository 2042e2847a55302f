#pragma once

#include <functional>
#include <optional>

namespace rpcm {

// Solve f(x)=u for increasing convex f on [lo,hi] with f(lo)<=u<=f(hi).
// Safeguarded Newton with a bisection bracket; converges to floating-point
// resolution, well inside the documented 1e-13 absolute tolerance.
double solve_increasing(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo,
                        double hi, double u);

// Left branch tau: [0,1/2] -> [0,1], increasing, convex, tau(0)=0, tau(1/2)=1.
struct LeftBranch {
  enum class Kind {
    doubling,   // 2x
    lsv,        // x(1 + (2x)^alpha)
    sqrt_ramp,  // 1 - sqrt(1-2x); derivative unbounded at 1/2
  };

  Kind kind = Kind::doubling;
  double alpha = 0.0;

  double eval(double x) const;
  double deriv(double x) const;  // right derivative at 0; may be +inf at 1/2
  double invert(double u) const; // closed form where available, else solver
  bool has_closed_inverse() const;
};

// Right branch S: [1/2,1] -> [0, S(1)], increasing, convex, S(1/2)=0.
// Not necessarily surjective: invert() reports values above S(1) as empty.
struct RightBranch {
  enum class Kind {
    scaled_dyadic,   // 2^-beta (2x-1); beta=0 is the plain dyadic branch
    linear_contract, // beta (x - 1/2)
    power_crit,      // 2^beta (x-1/2)^beta, beta>1: critical point at 1/2
    flat_exp,        // exp(2^beta - (x-1/2)^-beta): flat point at 1/2
    power_wide,      // (x-1/2)^beta, beta>=1
    contract2,       // beta (2x-1), beta in (0,1)
  };

  Kind kind = Kind::scaled_dyadic;
  double beta = 0.0;

  double eval(double x) const;
  double deriv(double x) const;
  double top() const;  // S(1)
  std::optional<double> invert(double u) const;
};

}  // namespace rpcm
