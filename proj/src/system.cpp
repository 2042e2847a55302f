#include "rpcm/system.hpp"

#include <cmath>
#include <stdexcept>

namespace rpcm {

double eval_map(const RandomMapSystem& sys, double alpha, double beta, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("eval_map: x outside [0,1]");
  if (!sys.nu_a().contains(alpha))
    throw std::domain_error("eval_map: alpha outside the support of nu_A");
  if (!sys.nu_b().contains(beta))
    throw std::domain_error("eval_map: beta outside the support of nu_B");
  return x <= 0.5 ? sys.left(alpha).eval(x) : sys.right(beta).eval(x);
}

double invert_left(const RandomMapSystem& sys, double alpha, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("invert_left: value outside [0,1]");
  return sys.left(alpha).invert(u);
}

std::optional<double> invert_right(const RandomMapSystem& sys, double beta, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("invert_right: value outside [0,1]");
  return sys.right(beta).invert(u);
}

DominanceReport check_dominance(const RandomMapSystem& sys, double alpha_major,
                                double alpha_minor, double c, int grid_size,
                                std::uint64_t seed) {
  if (!(c > 0.0 && c < 0.5)) throw std::invalid_argument("check_dominance: c outside (0,1/2)");
  if (!sys.nu_a().contains(alpha_major) || !sys.nu_a().contains(alpha_minor))
    throw std::domain_error("check_dominance: reference parameter outside supp nu_A");

  const LeftBranch major = sys.left(alpha_major);
  const LeftBranch minor = sys.left(alpha_minor);
  const double tol = 1e-12;

  // parameters to probe: atoms, or a quantile grid plus random draws
  std::vector<std::pair<double, double>> probes;  // (alpha, weight)
  const ParameterMeasure& nu = sys.nu_a();
  if (nu.is_discrete()) {
    for (const auto& a : nu.atoms()) probes.push_back({a.param, a.weight});
  } else {
    int m = std::max(grid_size, 64);
    for (int k = 0; k < m; ++k) probes.push_back({nu.quantile((k + 0.5) / m), 1.0 / m});
    RngStream rng(derive_seed(seed, "dominance", "alpha"));
    for (int k = 0; k < 64; ++k) probes.push_back({nu.sample(rng), 0.0});
  }

  auto dominated_by_major = [&](double a) {
    LeftBranch b = sys.left(a);
    for (int i = 1; i <= grid_size; ++i) {
      double x = c * i / (grid_size + 1.0);
      if (b.eval(x) > major.eval(x) + tol) return false;
    }
    return true;
  };
  auto dominates_minor = [&](double a) {
    LeftBranch b = sys.left(a);
    for (int i = 1; i <= grid_size; ++i) {
      double x = c * i / (grid_size + 1.0);
      if (b.eval(x) < minor.eval(x) - tol) return false;
    }
    return true;
  };

  DominanceReport rep;
  rep.majorant_ok = true;
  for (const auto& [a, w] : probes) {
    if (!dominated_by_major(a)) {
      rep.majorant_ok = false;
      rep.witness = a;
      break;
    }
  }
  // The almost-sure clause: sampling plus the family's declared ordering.
  // With a monotone family it suffices that both support endpoints pass.
  if (rep.majorant_ok && !nu.is_discrete() && sys.traits().left_alpha_order != 0) {
    if (!dominated_by_major(nu.support_lo()) || !dominated_by_major(nu.support_hi())) {
      rep.majorant_ok = false;
      rep.witness = dominated_by_major(nu.support_lo()) ? nu.support_hi() : nu.support_lo();
    }
  }

  for (const auto& [a, w] : probes)
    if (w > 0.0 && dominates_minor(a)) rep.minorant_mass += w;

  rep.pass = rep.majorant_ok && rep.minorant_mass > 0.0;
  if (!rep.majorant_ok)
    rep.detail = "majorant violated at alpha=" + std::to_string(rep.witness.value_or(0.0));
  else if (rep.minorant_mass <= 0.0)
    rep.detail = "no sampled alpha dominates the minorant";
  else
    rep.detail = sys.traits().left_alpha_order != 0 ? "pass" : "pass (sampled)";
  return rep;
}

}  // namespace rpcm
