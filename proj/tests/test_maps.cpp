#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "rpcm/families.hpp"

using namespace rpcm;

namespace {

// independent bisection oracle for inverse checks
double bisect_oracle(const std::function<double(double)>& f, double lo, double hi,
                     double target) {
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RandomMapSystem counterexample_system(double beta = 0.8) {
  return make_system("counterexample", ParameterMeasure::dirac(0.0),
                     ParameterMeasure::dirac(beta));
}

}  // namespace

TEST_CASE("eval_map matches the branch formulas") {
  auto dy = dyadic_system();
  CHECK(eval_map(dy, 0.0, 0.0, 0.3) == doctest::Approx(0.6).epsilon(1e-15));

  auto lls = linear_low_slope_system({{2.0, 1.0}});
  CHECK(eval_map(lls, 0.0, 2.0, 0.75) == doctest::Approx(0.125).epsilon(1e-15));

  auto lsv = lsv_system(ParameterMeasure::dirac(1.0));
  CHECK(eval_map(lsv, 1.0, 0.0, 0.25) == doctest::Approx(0.375).epsilon(1e-15));
}

TEST_CASE("eval_map rejects parameters outside the support") {
  auto lsv = lsv_system(ParameterMeasure::dirac(1.0));
  CHECK_THROWS_AS(eval_map(lsv, 2.0, 0.0, 0.25), std::domain_error);
  CHECK_THROWS_AS(eval_map(lsv, 1.0, 0.0, 1.5), std::domain_error);
}

TEST_CASE("invert_left: closed forms against the bisection oracle") {
  auto dy = dyadic_system();
  CHECK(invert_left(dy, 0.0, 0.5) == doctest::Approx(0.25).epsilon(1e-15));

  auto lsv = lsv_system(ParameterMeasure::dirac(1.0));
  double root = invert_left(lsv, 1.0, 0.5);
  CHECK(root == doctest::Approx((std::sqrt(5.0) - 1.0) / 4.0).epsilon(1e-13));
  double oracle = bisect_oracle([](double x) { return x * (1.0 + 2.0 * x); }, 0.0, 0.5, 0.5);
  CHECK(root == doctest::Approx(oracle).epsilon(1e-12));

  auto ce = counterexample_system();
  CHECK(invert_left(ce, 0.0, 0.5) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(1.0 - std::sqrt(1.0 - 2.0 * 0.375) == doctest::Approx(0.5));
}

TEST_CASE("invert_left: solver path for non-closed-form exponents") {
  for (double alpha : {0.3, 0.7, 2.0, 3.5}) {
    auto lsv = lsv_system(ParameterMeasure::dirac(alpha));
    for (double u : {1e-8, 1e-3, 0.2, 0.5, 0.9, 1.0}) {
      double x = invert_left(lsv, alpha, u);
      CHECK(eval_map(lsv, alpha, 0.0, x) == doctest::Approx(u).epsilon(1e-12));
    }
  }
}

TEST_CASE("invert_right: image boundary behavior") {
  auto lls = linear_low_slope_system({{2.0, 1.0}});
  auto y = invert_right(lls, 2.0, std::exp2(-3.0));
  REQUIRE(y.has_value());
  CHECK(*y == doctest::Approx(0.75).epsilon(1e-15));

  auto dy = dyadic_system();
  auto y0 = invert_right(dy, 0.0, 0.0);
  REQUIRE(y0.has_value());
  CHECK(*y0 == doctest::Approx(0.5));

  CHECK_FALSE(invert_right(lls, 2.0, 0.5).has_value());  // S_2(1) = 1/4 < 1/2
}

TEST_CASE("conditions: dyadic passes everything") {
  ConditionReport rep = check_conditions(dyadic_system(), 128, 64);
  CHECK(rep.all_pass());
  CHECK(rep.max_left_slope_at_half == doctest::Approx(2.0));
  CHECK(rep.gap_integral == doctest::Approx(4.0));  // 1/(1/2 - 1/4)
}

TEST_CASE("conditions: counterexample fails the slope bound but not the gap integral") {
  ConditionReport rep = check_conditions(counterexample_system(), 512, 128);
  CHECK_FALSE(rep.bounded_slope_a.ok());
  CHECK(rep.integrable_gap_b.ok());
  CHECK(rep.gap_integral == doctest::Approx(8.0));  // x2 = 3/8
  CHECK(rep.endpoints_smooth.ok());
  CHECK(rep.convexity.ok());
}

TEST_CASE("conditions: critical family on compact parameter boxes passes") {
  auto sys = make_system("critical", ParameterMeasure::uniform(0.5, 2.0),
                         ParameterMeasure::uniform(1.5, 3.0));
  ConditionReport rep = check_conditions(sys, 128, 64);
  CHECK(rep.all_pass());
  // tau'(1/2) = 2 + alpha stays finite on the box
  CHECK(rep.max_left_slope_at_half <= 4.0 + 1e-9);
}

TEST_CASE("conditions: grid precondition enforced") {
  CHECK_THROWS_AS(check_conditions(dyadic_system(), 32, 64), std::invalid_argument);
}

TEST_CASE("dominance: envelope ordering of the intermittent lefts") {
  auto sys = lsv_system(ParameterMeasure::uniform(0.5, 2.0));
  DominanceReport ok = check_dominance(sys, 0.5, 2.0, 0.4);
  CHECK(ok.pass);
  CHECK(ok.minorant_mass > 0.0);

  DominanceReport flipped = check_dominance(sys, 2.0, 0.5, 0.4);
  CHECK_FALSE(flipped.pass);
  REQUIRE(flipped.witness.has_value());
  CHECK(*flipped.witness < 2.0);

  auto single = lsv_system(ParameterMeasure::dirac(1.0));
  CHECK(check_dominance(single, 1.0, 1.0, 0.4).pass);
}

TEST_CASE("branch identities over sampled parameters and points") {
  struct Named {
    RandomMapSystem sys;
    bool skip_underflowed_right;
  };
  std::vector<Named> systems;
  systems.push_back({dyadic_system(), false});
  systems.push_back({linear_low_slope_system({{1.0, 0.5}, {3.0, 0.5}}), false});
  systems.push_back({lsv_system(ParameterMeasure::uniform(0.3, 2.5)), false});
  systems.push_back({make_system("lsv-contract", ParameterMeasure::uniform(0.5, 2.0),
                                 ParameterMeasure::uniform(0.1, 1.0)),
                     false});
  systems.push_back({make_system("critical", ParameterMeasure::uniform(0.5, 2.0),
                                 ParameterMeasure::uniform(1.5, 3.0)),
                     false});
  systems.push_back({make_system("flat", ParameterMeasure::uniform(0.2, 1.0),
                                 ParameterMeasure::uniform(1.0, 2.0)),
                     true});
  systems.push_back({make_system("wide-entrance", ParameterMeasure::uniform(0.0, 1.0),
                                 ParameterMeasure::uniform(1.0, 4.0)),
                     true});
  systems.push_back({counterexample_system(), false});

  for (auto& [sys, skip_underflow] : systems) {
    CAPTURE(sys.name());
    RngStream rng(derive_seed(7, "test", sys.name()));
    for (int k = 0; k < 1000; ++k) {
      double alpha = sys.nu_a().sample(rng);
      double beta = sys.nu_b().sample(rng);
      double x = rng.next_unit();
      double v = eval_map(sys, alpha, beta, x);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);

      double xl = 0.5 * rng.next_unit();
      double u = sys.left(alpha).eval(xl);
      CHECK(invert_left(sys, alpha, u) == doctest::Approx(xl).epsilon(1e-10));

      double xr = 0.5 + 0.5 * rng.next_unit();
      double ur = sys.right(beta).eval(xr);
      if (skip_underflow && ur == 0.0) continue;  // below fp resolution near the flat point
      auto back = invert_right(sys, beta, ur);
      REQUIRE(back.has_value());
      CHECK(*back == doctest::Approx(xr).epsilon(1e-10));
    }
  }
}

TEST_CASE("chord slopes grow as the window slides right (convexity surrogate)") {
  auto check_branch = [](const std::function<double(double)>& f, double lo, double hi) {
    const int windows = 64;
    double prev = -1e300;
    for (int k = 0; k < windows; ++k) {
      double a = lo + (hi - lo) * k / (windows + 1.0);
      double b = lo + (hi - lo) * (k + 2.0) / (windows + 1.0);
      double chord = (f(b) - f(a)) / (b - a);
      CHECK(chord >= prev * (1.0 - 1e-9) - 1e-12);
      prev = chord;
    }
  };
  RngStream rng(derive_seed(11, "test", "chords"));
  auto lsv = lsv_system(ParameterMeasure::uniform(0.3, 2.5));
  auto crit = make_system("critical", ParameterMeasure::uniform(0.5, 2.0),
                          ParameterMeasure::uniform(1.5, 3.0));
  for (int k = 0; k < 16; ++k) {
    double a = lsv.nu_a().sample(rng);
    check_branch([&](double x) { return lsv.left(a).eval(x); }, 0.0, 0.5);
    double b = crit.nu_b().sample(rng);
    check_branch([&](double x) { return crit.right(b).eval(x); }, 0.5, 1.0);
  }
}

TEST_CASE("measures: mass, sampling consistency, quadrature") {
  auto uni = ParameterMeasure::uniform(0.5, 2.0);
  CHECK(uni.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  auto pow = ParameterMeasure::power_law(1.0, std::numeric_limits<double>::infinity(), -2.5);
  CHECK(pow.total_mass() == doctest::Approx(1.0).epsilon(1e-10));

  // Kolmogorov-Smirnov distance of the empirical law against the declared cdf
  for (const ParameterMeasure* m : {&uni, &pow}) {
    RngStream rng(derive_seed(3, "test", "ks"));
    std::vector<double> xs(100000);
    for (auto& v : xs) v = m->sample(rng);
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double F = m->cdf(xs[i]);
      ks = std::max(ks, std::abs(F - (i + 1.0) / xs.size()));
      ks = std::max(ks, std::abs(F - static_cast<double>(i) / xs.size()));
    }
    CHECK(ks < 0.01);
  }

  // quadrature in quantile space integrates smooth functions accurately
  CHECK(uni.expectation([](double b) { return b * b; }) ==
        doctest::Approx((8.0 - 0.125) / 3.0 / 1.5).epsilon(1e-4));

  auto disc = ParameterMeasure::discrete({{1.0, 0.25}, {2.0, 0.75}});
  CHECK(disc.expectation([](double b) { return b; }) == doctest::Approx(1.75));
  RngStream rng(derive_seed(5, "test", "disc"));
  int ones = 0;
  for (int k = 0; k < 100000; ++k)
    if (disc.sample(rng) == 1.0) ++ones;
  CHECK(std::abs(ones / 100000.0 - 0.25) < 0.01);

  CHECK_THROWS_AS(ParameterMeasure::discrete({{1.0, 0.5}, {2.0, 0.6}}),
                  std::invalid_argument);
}
