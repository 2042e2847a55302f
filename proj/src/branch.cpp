#include "rpcm/branch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rpcm {

double solve_increasing(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo,
                        double hi, double u) {
  double flo = f(lo) - u;
  double fhi = f(hi) - u;
  if (flo > 0.0 || fhi < 0.0) throw std::domain_error("solve_increasing: root not bracketed");
  if (flo == 0.0) return lo;
  if (fhi == 0.0 && !(f(std::nextafter(hi, lo)) - u > 0.0)) return hi;

  double x = hi;
  for (int it = 0; it < 300; ++it) {
    double fx = f(x) - u;
    if (fx == 0.0) return x;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;

    double d = df(x);
    double xn = (d > 0.0 && std::isfinite(d)) ? x - fx / d : x;
    if (!(xn > lo && xn < hi)) xn = lo + 0.5 * (hi - lo);  // bisection safeguard
    if (xn == x || xn == lo || xn == hi) {
      // interval collapsed to adjacent doubles
      if (hi - lo <= std::abs(x) * 4e-16 + 5e-324) break;
      xn = lo + 0.5 * (hi - lo);
      if (xn == lo || xn == hi) break;
    }
    x = xn;
  }
  return lo + 0.5 * (hi - lo);
}

double LeftBranch::eval(double x) const {
  switch (kind) {
    case Kind::doubling:
      return 2.0 * x;
    case Kind::lsv:
      return x * (1.0 + std::pow(2.0 * x, alpha));
    case Kind::sqrt_ramp:
      return 1.0 - std::sqrt(1.0 - 2.0 * x);
  }
  return 0.0;
}

double LeftBranch::deriv(double x) const {
  switch (kind) {
    case Kind::doubling:
      return 2.0;
    case Kind::lsv:
      // alpha=0 degenerates to the doubling branch
      return 1.0 + (1.0 + alpha) * std::pow(2.0 * x, alpha);
    case Kind::sqrt_ramp: {
      double r = 1.0 - 2.0 * x;
      if (r <= 0.0) return std::numeric_limits<double>::infinity();
      return 1.0 / std::sqrt(r);
    }
  }
  return 0.0;
}

bool LeftBranch::has_closed_inverse() const {
  if (kind == Kind::lsv) return alpha == 0.0 || alpha == 1.0;
  return true;
}

double LeftBranch::invert(double u) const {
  switch (kind) {
    case Kind::doubling:
      return 0.5 * u;
    case Kind::lsv:
      if (alpha == 0.0) return 0.5 * u;
      if (alpha == 1.0) return 0.25 * (std::sqrt(1.0 + 8.0 * u) - 1.0);
      return solve_increasing([this](double x) { return eval(x); },
                              [this](double x) { return deriv(x); }, 0.0, 0.5, u);
    case Kind::sqrt_ramp: {
      double r = 1.0 - u;
      return 0.5 * (1.0 - r * r);
    }
  }
  return 0.0;
}

double RightBranch::eval(double x) const {
  double t = x - 0.5;
  switch (kind) {
    case Kind::scaled_dyadic:
      return std::exp2(-beta) * (2.0 * x - 1.0);
    case Kind::linear_contract:
      return beta * t;
    case Kind::power_crit:
      return std::exp2(beta) * std::pow(t, beta);
    case Kind::flat_exp:
      if (t <= 0.0) return 0.0;
      return std::exp(std::exp2(beta) - std::pow(t, -beta));
    case Kind::power_wide:
      return std::pow(t, beta);
    case Kind::contract2:
      return beta * (2.0 * x - 1.0);
  }
  return 0.0;
}

double RightBranch::deriv(double x) const {
  double t = x - 0.5;
  switch (kind) {
    case Kind::scaled_dyadic:
      return std::exp2(1.0 - beta);
    case Kind::linear_contract:
      return beta;
    case Kind::power_crit:
      if (t <= 0.0) return beta > 1.0 ? 0.0 : std::exp2(beta) * beta;
      return std::exp2(beta) * beta * std::pow(t, beta - 1.0);
    case Kind::flat_exp:
      if (t <= 0.0) return 0.0;
      return eval(x) * beta * std::pow(t, -beta - 1.0);
    case Kind::power_wide:
      if (t <= 0.0) return beta > 1.0 ? 0.0 : (beta == 1.0 ? 1.0 : std::numeric_limits<double>::infinity());
      return beta * std::pow(t, beta - 1.0);
    case Kind::contract2:
      return 2.0 * beta;
  }
  return 0.0;
}

double RightBranch::top() const {
  switch (kind) {
    case Kind::scaled_dyadic:
      return std::exp2(-beta);
    case Kind::linear_contract:
      return 0.5 * beta;
    case Kind::power_crit:
      return 1.0;
    case Kind::flat_exp:
      return 1.0;
    case Kind::power_wide:
      return std::exp2(-beta);
    case Kind::contract2:
      return beta;
  }
  return 0.0;
}

std::optional<double> RightBranch::invert(double u) const {
  if (u < 0.0) throw std::domain_error("RightBranch::invert: negative value");
  if (u > top()) return std::nullopt;
  switch (kind) {
    case Kind::scaled_dyadic:
      return 0.5 + std::exp2(beta - 1.0) * u;
    case Kind::linear_contract:
      if (beta == 0.0) return std::nullopt;  // image is {0}
      return 0.5 + u / beta;
    case Kind::power_crit:
      return 0.5 + 0.5 * std::pow(u, 1.0 / beta);
    case Kind::flat_exp:
      if (u == 0.0) return 0.5;
      return 0.5 + std::pow(std::exp2(beta) - std::log(u), -1.0 / beta);
    case Kind::power_wide:
      return 0.5 + std::pow(u, 1.0 / beta);
    case Kind::contract2:
      return 0.5 + 0.5 * u / beta;
  }
  return std::nullopt;
}

}  // namespace rpcm
