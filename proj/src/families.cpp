#include "rpcm/families.hpp"

#include <cmath>
#include <stdexcept>

namespace rpcm {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_integer_atoms(const ParameterMeasure& nu, double lo, double hi,
                           const std::string& family) {
  require(nu.is_discrete(), family + ": nu_B must be discrete");
  for (const auto& a : nu.atoms()) {
    require(std::abs(a.param - std::round(a.param)) < 1e-9,
            family + ": beta atoms must be integers");
    require(a.param >= lo && a.param <= hi,
            family + ": beta outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  }
}

void require_support(const ParameterMeasure& nu, double lo, double hi,
                     const std::string& what) {
  require(nu.support_lo() >= lo && nu.support_hi() <= hi,
          what + " support must lie in [" + std::to_string(lo) + "," +
              std::to_string(hi) + "]");
}

}  // namespace

RandomMapSystem make_system(const std::string& id, ParameterMeasure nu_a,
                            ParameterMeasure nu_b) {
  SystemTraits traits;
  if (id == "dyadic") {
    require(nu_a.is_singleton() && nu_b.is_singleton(),
            "dyadic: parameter measures must be singletons");
    return RandomMapSystem("dyadic", LeftBranch::Kind::doubling,
                           RightBranch::Kind::scaled_dyadic,
                           ParameterMeasure::dirac(0.0), ParameterMeasure::dirac(0.0),
                           traits);
  }
  if (id == "linear-low-slope") {
    require(nu_a.is_singleton(), "linear-low-slope: nu_A must be a singleton");
    // 2^beta arithmetic caps beta at 60
    require_integer_atoms(nu_b, 1.0, 60.0, "linear-low-slope");
    return RandomMapSystem(id, LeftBranch::Kind::doubling,
                           RightBranch::Kind::scaled_dyadic, std::move(nu_a),
                           std::move(nu_b), traits);
  }
  if (id == "lsv") {
    require_support(nu_a, 0.0, 64.0, "lsv: alpha");
    traits.left_alpha_order = -1;
    return RandomMapSystem(id, LeftBranch::Kind::lsv, RightBranch::Kind::scaled_dyadic,
                           std::move(nu_a), ParameterMeasure::dirac(0.0), traits);
  }
  if (id == "lsv-contract") {
    require_support(nu_a, 0.0, 64.0, "lsv-contract: alpha");
    require_support(nu_b, 0.0, 1.0, "lsv-contract: beta");
    traits.left_alpha_order = -1;
    return RandomMapSystem(id, LeftBranch::Kind::lsv, RightBranch::Kind::linear_contract,
                           std::move(nu_a), std::move(nu_b), traits);
  }
  if (id == "critical") {
    require_support(nu_a, 0.0, 64.0, "critical: alpha");
    require(nu_b.support_lo() > 1.0, "critical: beta must exceed 1");
    require_support(nu_b, 1.0, 64.0, "critical: beta");
    traits.left_alpha_order = -1;
    return RandomMapSystem(id, LeftBranch::Kind::lsv, RightBranch::Kind::power_crit,
                           std::move(nu_a), std::move(nu_b), traits);
  }
  if (id == "flat") {
    require_support(nu_a, 0.0, 64.0, "flat: alpha");
    require_support(nu_b, 1.0, 64.0, "flat: beta");
    traits.left_alpha_order = -1;
    traits.always_infinite = true;
    return RandomMapSystem(id, LeftBranch::Kind::lsv, RightBranch::Kind::flat_exp,
                           std::move(nu_a), std::move(nu_b), traits);
  }
  if (id == "wide-entrance") {
    require_support(nu_a, 0.0, 64.0, "wide-entrance: alpha");
    require(nu_b.support_lo() >= 1.0, "wide-entrance: beta must be >= 1");
    traits.left_alpha_order = -1;
    return RandomMapSystem(id, LeftBranch::Kind::lsv, RightBranch::Kind::power_wide,
                           std::move(nu_a), std::move(nu_b), traits);
  }
  if (id == "counterexample") {
    require(nu_a.is_singleton(), "counterexample: nu_A must be a singleton");
    require(nu_b.support_lo() > 0.0 && nu_b.support_hi() < 1.0,
            "counterexample: beta must lie in (0,1)");
    traits.condition_a_fails = true;
    return RandomMapSystem(id, LeftBranch::Kind::sqrt_ramp, RightBranch::Kind::contract2,
                           ParameterMeasure::dirac(0.0), std::move(nu_b), traits);
  }
  throw std::invalid_argument("unknown family id: " + id);
}

const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids = {
      "dyadic",   "linear-low-slope", "lsv",           "lsv-contract",
      "critical", "flat",             "wide-entrance", "counterexample"};
  return ids;
}

RandomMapSystem dyadic_system() {
  return make_system("dyadic", ParameterMeasure::dirac(0.0), ParameterMeasure::dirac(0.0));
}

RandomMapSystem linear_low_slope_system(std::vector<ParameterMeasure::Atom> beta_atoms) {
  return make_system("linear-low-slope", ParameterMeasure::dirac(0.0),
                     ParameterMeasure::discrete(std::move(beta_atoms)));
}

RandomMapSystem lsv_system(ParameterMeasure nu_a) {
  return make_system("lsv", std::move(nu_a), ParameterMeasure::dirac(0.0));
}

}  // namespace rpcm
