#include <doctest.h>

#include <cmath>
#include <limits>

#include "rpcm/families.hpp"
#include "rpcm/asymptotics.hpp"

using namespace rpcm;

TEST_CASE("x_sequence: doubling left gives exact powers of two") {
  auto lls = linear_low_slope_system({{1.0, 1.0}});
  AlphaStream as = AlphaStream::constant(0.0);
  XSequence xs = x_sequence(lls, as, 5);
  REQUIRE(xs.count() == 6);
  const double expect[] = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  for (std::size_t i = 0; i < 6; ++i) CHECK(xs.values[i] == expect[i]);
  CHECK_FALSE(xs.truncated);
}

TEST_CASE("x_sequence: second terms of the other left branches") {
  auto lsv = lsv_system(ParameterMeasure::dirac(1.0));
  AlphaStream a1 = AlphaStream::constant(1.0);
  XSequence xs = x_sequence(lsv, a1, 1);
  CHECK(xs.x(2) == doctest::Approx((std::sqrt(5.0) - 1.0) / 4.0).epsilon(1e-12));

  auto ce = make_system("counterexample", ParameterMeasure::dirac(0.0),
                        ParameterMeasure::dirac(0.8));
  AlphaStream a2 = AlphaStream::constant(0.0);
  XSequence xs2 = x_sequence(ce, a2, 1);
  CHECK(xs2.x(2) == doctest::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("x_sequence truncates and flags at floating-point exhaustion") {
  auto lls = linear_low_slope_system({{1.0, 1.0}});
  AlphaStream as = AlphaStream::constant(0.0);
  XSequence xs = x_sequence(lls, as, 5000);  // 2^-n dies near n ~ 1074
  CHECK(xs.truncated);
  CHECK(xs.count() < 1100);
  for (std::size_t i = 1; i < xs.count(); ++i) CHECK(xs.values[i] < xs.values[i - 1]);
}

TEST_CASE("eta_index: cell of S(1), ties to the lower set") {
  auto lls3 = linear_low_slope_system({{3.0, 1.0}});
  AlphaStream as = AlphaStream::constant(0.0);
  XSequence xs = x_sequence(lls3, as, 16);
  CHECK(eta_index(lls3, xs.values, 3.0) == 3);

  auto dy = dyadic_system();
  AlphaStream as2 = AlphaStream::constant(0.0);
  XSequence xs2 = x_sequence(dy, as2, 16);
  CHECK(eta_index(dy, xs2.values, 0.0) == 0);

  // S(1) = x_k exactly lands in the lower level set (closed right endpoint)
  auto wide = make_system("wide-entrance", ParameterMeasure::dirac(0.0),
                          ParameterMeasure::uniform(1.0, 16.0));
  AlphaStream as3 = AlphaStream::constant(0.0);
  XSequence xs3 = x_sequence(wide, as3, 32);
  for (int k = 1; k <= 6; ++k) {
    CHECK(eta_index(wide, xs3.values, static_cast<double>(k)) ==
          static_cast<std::size_t>(k));  // S(1) = 2^-k = x_k
    CHECK(eta_index(wide, xs3.values, k + 0.5) == static_cast<std::size_t>(k));
  }

  CHECK_THROWS_AS(eta_index(lls3, std::span<const double>(xs.values.data(), 2), 60.0),
                  std::runtime_error);
}

TEST_CASE("y_sequence closed forms") {
  auto lls2 = linear_low_slope_system({{2.0, 1.0}});
  AlphaStream as = AlphaStream::constant(0.0);
  PartitionSequences ps = make_partition_sequences(lls2, as, 2.0, 10);
  CHECK(ps.ys[0] == 1.0);
  CHECK(ps.ys[1] == doctest::Approx(0.75).epsilon(1e-15));
  for (std::size_t n = 1; n <= 10; ++n)
    CHECK(ps.ys[n] == doctest::Approx(0.5 + std::exp2(-(static_cast<double>(n) + 1.0)))
                          .epsilon(1e-14));

  auto dy = dyadic_system();
  AlphaStream as2 = AlphaStream::constant(0.0);
  PartitionSequences ps2 = make_partition_sequences(dy, as2, 0.0, 10);
  for (std::size_t n = 1; n <= 10; ++n)
    CHECK(ps2.ys[n] == doctest::Approx(0.5 + std::exp2(-(static_cast<double>(n) + 1.0)))
                           .epsilon(1e-14));
}

TEST_CASE("sequence consistency over random parameter streams") {
  struct Sys {
    RandomMapSystem sys;
    double beta_lo, beta_hi;
  };
  std::vector<Sys> systems;
  systems.push_back({lsv_system(ParameterMeasure::uniform(0.3, 2.0)), 0.0, 0.0});
  systems.push_back({make_system("lsv-contract", ParameterMeasure::uniform(0.5, 1.5),
                                 ParameterMeasure::uniform(0.2, 1.0)),
                     0.2, 1.0});
  systems.push_back({make_system("critical", ParameterMeasure::uniform(0.5, 2.0),
                                 ParameterMeasure::uniform(1.5, 3.0)),
                     1.5, 3.0});

  for (auto& [sys, blo, bhi] : systems) {
    CAPTURE(sys.name());
    RngStream brng(derive_seed(13, "test", sys.name()));
    for (int rep = 0; rep < 34; ++rep) {
      std::uint64_t seed = derive_seed(17, "test-seq", sys.name(), rep);
      double beta = blo == bhi ? blo : blo + (bhi - blo) * brng.next_unit();
      AlphaStream as = AlphaStream::iid(sys.nu_a(), seed);
      PartitionSequences ps = make_partition_sequences(sys, as, beta, 50);

      // identical seed reproduces the identical prefix
      AlphaStream as2 = AlphaStream::iid(sys.nu_a(), seed);
      for (std::size_t n = 1; n <= 20; ++n) CHECK(as2.at(n) == as.at(n));

      for (std::size_t n = 1; n + 1 <= std::min<std::size_t>(ps.xs.count(), 51); ++n) {
        double back = sys.left(as.at(n)).eval(ps.xs.x(n + 1));
        CHECK(back == doctest::Approx(ps.xs.x(n)).epsilon(1e-10));
        CHECK(ps.xs.x(n + 1) < ps.xs.x(n));
      }
      for (std::size_t n = 1; n <= 50; ++n) {
        double back = sys.right(beta).eval(ps.ys[n]);
        CHECK(back == doctest::Approx(ps.xs.x(ps.eta + n)).epsilon(1e-10));
        CHECK(ps.ys[n] < ps.ys[n - 1]);
        CHECK(ps.ys[n] > 0.5);
      }
    }
  }
}

TEST_CASE("tail_index on the dyadic oracle") {
  auto dy = dyadic_system();
  CHECK(tail_index(dy, 0.1, 64) == 5);   // integrand 2^(1-N)
  CHECK(tail_index(dy, 0.9, 64) == 2);
  CHECK(tail_index(dy, 0.51, 64) == 2);  // 2^-1 < 0.51 <= 2^0
  CHECK(tail_index(dy, 0.26, 64) == 3);  // 2^-2 < 0.26 <= 2^-1
}

TEST_CASE("tail index tolerates extreme parameter tails") {
  auto wide = make_system("wide-entrance", ParameterMeasure::dirac(0.5),
                          ParameterMeasure::power_law(
                              1.0, std::numeric_limits<double>::infinity(), -2.5));
  std::size_t n0 = tail_index(wide, 0.5, 64);
  CHECK(n0 >= 1);
  CHECK(n0 < 1000000);
}

TEST_CASE("predicted cell measure: atoms deeper than the window count as tail mass") {
  auto lls = linear_low_slope_system({{1.0, 0.5}, {40.0, 0.5}});
  // eta(40) = 40 >> n: that atom contributes its full weight
  double p = predicted_cell_measure(lls, 0.0, 6);
  CHECK(p == doctest::Approx(0.5 * std::exp2(-5.0) + 0.5).epsilon(1e-12));
}

TEST_CASE("predicted cell measure: single and double atoms") {
  auto lls1 = linear_low_slope_system({{1.0, 1.0}});
  CHECK(predicted_cell_measure(lls1, 0.0, 6) == doctest::Approx(std::exp2(-5.0)));

  auto lls12 = linear_low_slope_system({{1.0, 0.5}, {2.0, 0.5}});
  CHECK(predicted_cell_measure(lls12, 0.0, 6) == doctest::Approx(3.0 / 64.0));

  // once n exceeds every eta the trailing mass term vanishes
  double p10 = predicted_cell_measure(lls12, 0.0, 10);
  double direct = 0.5 * std::exp2(-(10.0 - 1.0)) + 0.5 * std::exp2(-(10.0 - 2.0));
  CHECK(p10 == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("predicted cell measure: continuous nu_B against a Riemann oracle") {
  auto wide = make_system("wide-entrance", ParameterMeasure::dirac(0.0),
                          ParameterMeasure::uniform(1.0, 4.0));
  for (std::size_t n : {4u, 7u, 12u}) {
    double predicted = predicted_cell_measure(wide, 0.0, n);
    // brute-force Riemann sum over beta: g(beta) per the level of S_beta(1)
    const int m = 200000;
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
      double beta = 1.0 + 3.0 * (k + 0.5) / m;
      double s1 = std::exp2(-beta);
      double xn1 = std::exp2(-(static_cast<double>(n) - 1.0));
      double xn = std::exp2(-static_cast<double>(n));
      double g;
      if (s1 > xn1)
        g = std::exp2(-(static_cast<double>(n) - 1.0) / beta);  // y_{n-eta} - 1/2
      else if (s1 > xn)
        g = 0.5;
      else
        g = 1.0;
      acc += g / m;
    }
    CHECK(predicted == doctest::Approx(acc).epsilon(2e-3));
  }
}

TEST_CASE("decay laws of the named families (short windows)") {
  // intermittent left: slope -1/alpha
  for (double alpha : {0.5, 1.0, 2.0}) {
    auto lsv = lsv_system(ParameterMeasure::dirac(alpha));
    AlphaStream as = AlphaStream::constant(alpha);
    XSequence xs = x_sequence(lsv, as, 20000);
    std::vector<std::pair<std::size_t, double>> series;
    for (std::size_t n = 1; n <= xs.count(); ++n) series.push_back({n, xs.x(n)});
    ExponentFit fit = fit_exponent(series, 1000, 20000);
    CHECK(std::abs(fit.exponent + 1.0 / alpha) <= 0.05 / alpha);
  }
  // critical right: slope -1/(alpha beta)
  {
    auto crit = make_system("critical", ParameterMeasure::dirac(1.0),
                            ParameterMeasure::dirac(2.0));
    AlphaStream as = AlphaStream::constant(1.0);
    PartitionSequences ps = make_partition_sequences(crit, as, 2.0, 20000);
    std::vector<std::pair<std::size_t, double>> series;
    for (std::size_t n = 1; n < ps.ys.size(); ++n) series.push_back({n, ps.ys[n] - 0.5});
    ExponentFit fit = fit_exponent(series, 1000, 20000);
    CHECK(std::abs(fit.exponent + 0.5) <= 0.05 * 0.5);
  }
}

TEST_CASE("predictor decay for the contracting family under a power-law beta") {
  // nu_B with density (1-l) beta^-l on [0,1]: the predictor decays like
  // n^{-(1-l)/alpha}
  const double l = 0.6, alpha = 1.0;
  auto sys = make_system("lsv-contract", ParameterMeasure::dirac(alpha),
                         ParameterMeasure::power_law(0.0, 1.0, -l));
  auto ns = log_spaced_indices(1000, 10000, 25);
  auto series = predicted_cell_measure_series(sys, alpha, ns);
  ExponentFit fit = fit_exponent(series, 1000, 10000);
  CHECK(fit.exponent == doctest::Approx(-(1.0 - l) / alpha).epsilon(0.12));
  CHECK(finiteness_verdict(series, nullptr, 1000, 10000).verdict == Verdict::infinite);
}

TEST_CASE("degenerate right branch is rejected") {
  auto contract = make_system("lsv-contract", ParameterMeasure::dirac(1.0),
                              ParameterMeasure::uniform(0.0, 1.0));
  AlphaStream as = AlphaStream::constant(1.0);
  XSequence xs = x_sequence(contract, as, 32);
  CHECK_THROWS_AS(eta_index(contract, xs.values, 0.0), std::domain_error);
}
