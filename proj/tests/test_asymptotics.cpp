#include <doctest.h>

#include <cmath>

#include "rpcm/asymptotics.hpp"
#include "rpcm/families.hpp"

using namespace rpcm;

namespace {

std::vector<std::pair<std::size_t, double>> power_series(double c, double p, std::size_t lo,
                                                         std::size_t hi) {
  std::vector<std::pair<std::size_t, double>> s;
  for (std::size_t n : log_spaced_indices(lo, hi, 64))
    s.push_back({n, c * std::pow(static_cast<double>(n), p)});
  return s;
}

}  // namespace

TEST_CASE("exact power laws are recovered to machine precision") {
  ExponentFit f = fit_exponent(power_series(1.0, -2.0, 10, 100), 10, 100);
  CHECK(f.exponent == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(f.std_error <= 1e-10);
  CHECK_FALSE(f.slow_variation);

  // scale invariance over sampled (C, p)
  RngStream rng(derive_seed(101, "test", "powers"));
  for (int k = 0; k < 50; ++k) {
    double c = std::exp(rng.uniform(-5.0, 5.0));
    double p = rng.uniform(-3.0, 0.0);
    ExponentFit g = fit_exponent(power_series(c, p, 10, 10000), 10, 10000);
    CHECK(g.exponent == doctest::Approx(p).epsilon(1e-10));
    CHECK_FALSE(g.slow_variation);
  }
}

TEST_CASE("fit input validation") {
  CHECK_THROWS_AS(fit_exponent({{10, 1.0}, {20, -1.0}}, 10, 20), std::invalid_argument);
  CHECK_THROWS_AS(fit_exponent({{10, 1.0}}, 10, 20), std::invalid_argument);
}

TEST_CASE("logarithmic decay is flagged as slowly varying") {
  std::vector<std::pair<std::size_t, double>> s;
  for (std::size_t n : log_spaced_indices(100, 10000, 64))
    s.push_back({n, 1.0 / std::log(static_cast<double>(n))});
  ExponentFit f = fit_exponent(s, 100, 10000);
  CHECK(f.exponent > -0.25);
  CHECK(f.exponent < 0.0);
  CHECK(f.slow_variation);
}

TEST_CASE("finiteness verdicts from decay exponents and analytic rules") {
  // geometric decay: summable
  std::vector<std::pair<std::size_t, double>> geo;
  for (std::size_t n = 2; n <= 40; ++n) geo.push_back({n, std::exp2(1.0 - double(n))});
  CHECK(finiteness_verdict(geo, nullptr, 2, 40).verdict == Verdict::finite);

  // n^{-1/2}: diverges
  CHECK(finiteness_verdict(power_series(1.0, -0.5, 10, 10000), nullptr, 10, 10000).verdict ==
        Verdict::infinite);

  // analytic rule wins regardless of the series
  auto flat = make_system("flat", ParameterMeasure::dirac(0.5), ParameterMeasure::dirac(1.0));
  VerdictReport v = finiteness_verdict(geo, &flat.traits(), 2, 40);
  CHECK(v.verdict == Verdict::infinite);
  CHECK(v.analytic_rule);

  // short windows are forced inconclusive
  CHECK(finiteness_verdict({{2, 1.0}, {3, 0.5}, {4, 0.25}}, nullptr, 2, 4).verdict ==
        Verdict::inconclusive);

  // multiplying a series by a positive constant never flips the verdict
  for (double scale : {1e-6, 1.0, 1e6}) {
    auto scaled = power_series(scale, -0.5, 10, 10000);
    CHECK(finiteness_verdict(scaled, nullptr, 10, 10000).verdict == Verdict::infinite);
    auto scaled2 = power_series(scale, -2.0, 10, 10000);
    CHECK(finiteness_verdict(scaled2, nullptr, 10, 10000).verdict == Verdict::finite);
  }
}

TEST_CASE("sandwich verdicts on the intermittent interval families") {
  {
    auto sys = lsv_system(ParameterMeasure::uniform(0.5, 0.9));
    SandwichReport rep = sandwich_report(sys, 0.5, 0.9, 1000, 10000);
    CHECK(rep.overall == Verdict::finite);
    CHECK(rep.upper.verdict.fit.exponent == doctest::Approx(-1.0 / 0.9).epsilon(0.05));
  }
  {
    auto sys = lsv_system(ParameterMeasure::uniform(1.05, 2.0));
    SandwichReport rep = sandwich_report(sys, 1.05, 2.0, 1000, 10000);
    CHECK(rep.overall == Verdict::infinite);
  }
  {
    // alpha = 1 puts the lower system exactly on the summability boundary;
    // the guard band must never call that finite
    auto sys = lsv_system(ParameterMeasure::uniform(1.0, 2.0));
    SandwichReport rep = sandwich_report(sys, 1.0, 2.0, 1000, 10000);
    CHECK(rep.overall != Verdict::finite);
  }
  {
    // singleton: the sandwich collapses to the single system's verdict
    auto sys = lsv_system(ParameterMeasure::dirac(2.0));
    SandwichReport rep = sandwich_report(sys, 2.0, 2.0, 1000, 10000);
    CHECK(rep.overall == Verdict::infinite);
    REQUIRE(rep.lower.series.size() == rep.upper.series.size());
    for (std::size_t i = 0; i < rep.lower.series.size(); ++i)
      CHECK(rep.lower.series[i].second == rep.upper.series[i].second);
  }
  {
    // a failed envelope check refuses the comparison
    auto sys = lsv_system(ParameterMeasure::uniform(0.5, 2.0));
    CHECK_THROWS_AS(sandwich_report(sys, 2.0, 0.5, 1000, 10000), std::runtime_error);
  }
}

TEST_CASE("sandwich sides stay within a bounded ratio over the window") {
  auto sys = lsv_system(ParameterMeasure::uniform(0.8, 1.6));
  SandwichReport rep = sandwich_report(sys, 0.8, 1.6, 100, 10000);
  CHECK(rep.ratio_bound > 0.0);
  CHECK(rep.ratio_bound <= 1.0 + 1e-9);  // the lower series sits below the upper one
  for (std::size_t i = 0; i < rep.lower.series.size(); ++i)
    CHECK(rep.lower.series[i].second <=
          rep.ratio_bound * rep.upper.series[i].second + 1e-15);
}
