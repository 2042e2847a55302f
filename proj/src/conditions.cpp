#include <cmath>
#include <stdexcept>
#include <vector>

#include "rpcm/system.hpp"

namespace rpcm {

namespace {

using Status = ConditionCheck::Status;

std::vector<std::pair<double, double>> probe_params(const ParameterMeasure& nu,
                                                    int count, std::uint64_t seed,
                                                    const char* tag) {
  std::vector<std::pair<double, double>> out;  // (param, weight)
  if (nu.is_discrete()) {
    for (const auto& a : nu.atoms()) out.push_back({a.param, a.weight});
    return out;
  }
  for (int k = 0; k < count; ++k) out.push_back({nu.quantile((k + 0.5) / count), 1.0 / count});
  out.push_back({nu.support_lo(), 0.0});
  if (std::isfinite(nu.support_hi())) out.push_back({nu.support_hi(), 0.0});
  RngStream rng(derive_seed(seed, "conditions", tag));
  for (int k = 0; k < 64; ++k) out.push_back({nu.sample(rng), 0.0});
  return out;
}

void fail(ConditionCheck& c, double witness, const std::string& msg) {
  if (c.status == Status::fail) return;  // keep the first witness
  c.status = Status::fail;
  c.witness = witness;
  c.detail = msg;
}

}  // namespace

bool ConditionReport::all_pass() const {
  return measurable.ok() && endpoints_smooth.ok() && convexity.ok() &&
         bounded_slope_a.ok() && integrable_gap_b.ok();
}

ConditionReport check_conditions(const RandomMapSystem& sys, int grid_size,
                                 int quadrature_nodes, double slope_ceiling,
                                 std::uint64_t seed) {
  if (grid_size < 64) throw std::invalid_argument("check_conditions: grid_size < 64");
  if (quadrature_nodes < 2) throw std::invalid_argument("check_conditions: quadrature_nodes < 2");

  ConditionReport rep;
  rep.measurable.status = Status::pass;
  rep.measurable.detail = "parameter dependence is continuous by construction";
  rep.endpoints_smooth.status = Status::pass;
  rep.convexity.status = Status::pass;
  rep.bounded_slope_a.status = Status::pass;
  rep.integrable_gap_b.status = Status::pass;

  auto alphas = probe_params(sys.nu_a(), std::max(64, grid_size / 4), seed, "alpha");
  auto betas = probe_params(sys.nu_b(), std::max(64, grid_size / 4), seed, "beta");

  const double ep_tol = 1e-12;

  for (const auto& [a, w] : alphas) {
    LeftBranch tau = sys.left(a);
    double t0 = tau.eval(0.0), th = tau.eval(0.5);
    if (!std::isfinite(t0) || !std::isfinite(th)) {
      fail(rep.endpoints_smooth, a, "non-finite left-branch evaluation");
      continue;
    }
    if (std::abs(t0) > ep_tol) fail(rep.endpoints_smooth, a, "tau(0) != 0");
    if (std::abs(th - 1.0) > ep_tol) fail(rep.endpoints_smooth, a, "tau(1/2) != 1");

    // derivative sanity against central differences on the interior
    for (double x : {0.1, 0.25, 0.4}) {
      double d = tau.deriv(x);
      if (d < 1e6) {
        double h = 1e-6;
        double fd = (tau.eval(x + h) - tau.eval(x - h)) / (2.0 * h);
        if (std::abs(fd - d) > 2e-3 * std::max(1.0, std::abs(d)))
          fail(rep.endpoints_smooth, a, "declared derivative disagrees with finite differences");
      }
    }

    // (2): derivative non-decreasing, > 1 on the interior, >= 1 at 0
    double d0 = tau.deriv(0.0);
    if (!(d0 >= 1.0 - ep_tol)) fail(rep.convexity, a, "tau'(0) < 1");
    double prev = d0;
    for (int i = 1; i < grid_size; ++i) {
      double x = 0.5 * i / grid_size;
      double d = tau.deriv(x);
      if (std::isnan(d)) {
        fail(rep.convexity, a, "non-finite left derivative");
        break;
      }
      if (!(d > 1.0)) fail(rep.convexity, a, "tau' not above 1 on (0,1/2)");
      if (d < prev * (1.0 - 1e-9) - 1e-12) {
        fail(rep.convexity, a, "tau' decreasing");
        break;
      }
      prev = d;
    }

    // (A): slope at the discontinuity
    double dh = tau.deriv(0.5);
    if (std::isfinite(dh)) rep.max_left_slope_at_half = std::max(rep.max_left_slope_at_half, dh);
    if (!std::isfinite(dh) || dh > slope_ceiling)
      fail(rep.bounded_slope_a, a, "tau'(1/2) unbounded at sampled alpha");
  }

  for (const auto& [b, w] : betas) {
    RightBranch s = sys.right(b);
    double sh = s.eval(0.5);
    if (!std::isfinite(sh)) {
      fail(rep.endpoints_smooth, b, "non-finite right-branch evaluation");
      continue;
    }
    if (std::abs(sh) > ep_tol) fail(rep.endpoints_smooth, b, "S(1/2) != 0");

    for (double x : {0.6, 0.75, 0.9}) {
      double d = s.deriv(x);
      if (d < 1e6 && d > 1e-12) {
        double h = 1e-6;
        double fd = (s.eval(x + h) - s.eval(x - h)) / (2.0 * h);
        if (std::abs(fd - d) > 2e-3 * std::max(1.0, std::abs(d)))
          fail(rep.endpoints_smooth, b, "declared derivative disagrees with finite differences");
      }
    }

    double dh = s.deriv(0.5);
    if (std::isnan(dh) || dh < 0.0) fail(rep.convexity, b, "S'(1/2) < 0");
    double prev = std::isfinite(dh) ? dh : 0.0;
    for (int i = 1; i < grid_size; ++i) {
      double x = 0.5 + 0.5 * i / grid_size;
      double d = s.deriv(x);
      if (std::isnan(d)) {
        fail(rep.convexity, b, "non-finite right derivative");
        break;
      }
      // S underflows to exactly 0 near a flat point; that stretch is below
      // floating-point resolution and is skipped by the positivity check.
      if (!(d > 0.0) && s.eval(x) > 0.0) fail(rep.convexity, b, "S' not positive on (1/2,1)");
      if (d < prev * (1.0 - 1e-9) - 1e-12) {
        fail(rep.convexity, b, "S' decreasing");
        break;
      }
      prev = d;
    }
  }

  if (sys.traits().condition_a_fails)
    fail(rep.bounded_slope_a, sys.nu_a().support_hi(),
         "ess sup tau'(1/2) declared infinite by the family");
  if (rep.bounded_slope_a.ok())
    rep.bounded_slope_a.detail =
        "pass (sampled); max tau'(1/2) = " + std::to_string(rep.max_left_slope_at_half);

  // (B): E[ 1/(x1 - x2) ] over nu_A
  try {
    ParameterMeasure nu = sys.nu_a();
    auto integrand = [&](double a) {
      double x2 = sys.left(a).invert(0.5);
      double gap = 0.5 - x2;
      if (!(gap > 0.0)) throw std::runtime_error("x2 reaches 1/2");
      return 1.0 / gap;
    };
    if (!nu.is_discrete()) {
      ParameterMeasure::Continuous law = nu.law();
      law.quad_nodes = quadrature_nodes;
      nu = ParameterMeasure::continuous(std::move(law));
    }
    rep.gap_integral = nu.expectation(integrand);
    if (!std::isfinite(rep.gap_integral))
      fail(rep.integrable_gap_b, sys.nu_a().support_lo(), "gap integral diverges");
    else
      rep.integrable_gap_b.detail =
          "integral of 1/(x1-x2) = " + std::to_string(rep.gap_integral);
  } catch (const std::exception& e) {
    fail(rep.integrable_gap_b, sys.nu_a().support_lo(), e.what());
  }

  return rep;
}

}  // namespace rpcm
