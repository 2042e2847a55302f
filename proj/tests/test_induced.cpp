#include <doctest.h>

#include <cmath>

#include "rpcm/families.hpp"
#include "rpcm/induced.hpp"

using namespace rpcm;

TEST_CASE("induced_step on the dyadic oracle") {
  auto dy = dyadic_system();
  AlphaStream as = AlphaStream::constant(0.0);

  InducedStep a = induced_step(dy, 0.75, 0.0, as);
  CHECK_FALSE(a.censored);
  CHECK(a.landing == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.left_steps == 1);

  InducedStep b = induced_step(dy, 0.6, 0.0, as);
  CHECK_FALSE(b.censored);
  CHECK(b.landing == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(b.left_steps == 2);
  CHECK(b.derivative == doctest::Approx(8.0).epsilon(1e-12));

  InducedStep c = induced_step(dy, 0.5 + std::exp2(-52.0), 0.0, as, 30);
  CHECK(c.censored);

  CHECK_THROWS_AS(induced_step(dy, 0.5, 0.0, as), std::domain_error);
}

TEST_CASE("left step count 0 happens exactly on the first cell when S is onto") {
  auto dy = dyadic_system();
  AlphaStream as = AlphaStream::constant(0.0);
  InducedStep st = induced_step(dy, 0.9, 0.0, as);  // S(0.9) = 0.8 already in Y
  CHECK(st.left_steps == 0);
  CHECK(st.landing == doctest::Approx(0.8));
}

TEST_CASE("common return steps per cell: eta + n - 1") {
  auto lls2 = linear_low_slope_system({{2.0, 1.0}});
  AlphaStream as = AlphaStream::constant(0.0);
  CHECK(cell_return_steps(lls2, 2, 2.0, as) == 3);  // eta = 2

  auto dy = dyadic_system();
  AlphaStream as2 = AlphaStream::constant(0.0);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u})
    CHECK(cell_return_steps(dy, n, 0.0, as2) == n - 1);  // eta = 0
}

TEST_CASE("induced branches map cells onto Y") {
  struct Case {
    RandomMapSystem sys;
    double beta;
  };
  std::vector<Case> cases;
  cases.push_back({dyadic_system(), 0.0});
  cases.push_back({linear_low_slope_system({{1.0, 1.0}}), 1.0});
  for (auto& [sys, beta] : cases) {
    CAPTURE(sys.name());
    AlphaStream as = AlphaStream::constant(0.0);
    PartitionSequences ps = make_partition_sequences(sys, as, beta, 12);
    for (std::size_t n = 2; n <= 10; ++n) {
      double lo = ps.ys[n], hi = ps.ys[n - 1];
      AlphaStream probe = AlphaStream::constant(0.0);
      // right endpoint maps to the top of Y
      InducedStep top = induced_step(sys, hi, beta, probe);
      CHECK(top.landing == doctest::Approx(1.0).epsilon(1e-8));
      // just inside the left endpoint maps near the bottom of Y
      double x = lo + (hi - lo) * 1e-9;
      InducedStep bot = induced_step(sys, x, beta, probe);
      CHECK(bot.landing == doctest::Approx(0.5).epsilon(2e-8));
    }
  }
}

TEST_CASE("induced derivative dominates the cell-width ratio") {
  struct Case {
    RandomMapSystem sys;
    double beta;
  };
  std::vector<Case> cases;
  cases.push_back({dyadic_system(), 0.0});
  cases.push_back({linear_low_slope_system({{2.0, 1.0}}), 2.0});
  for (auto& [sys, beta] : cases) {
    CAPTURE(sys.name());
    AlphaStream as = AlphaStream::constant(0.0);
    PartitionSequences ps = make_partition_sequences(sys, as, beta, 14);
    double lambda_x1 = ps.xs.x(1) - ps.xs.x(2);
    RngStream rng(derive_seed(23, "test", sys.name()));
    for (int k = 0; k < 100; ++k) {
      std::size_t n = 1 + static_cast<std::size_t>(rng.next_unit() * 12);
      double lo = ps.ys[n], hi = ps.ys[n - 1];
      double x = lo + (hi - lo) * std::max(1e-6, rng.next_unit());
      AlphaStream probe = AlphaStream::constant(0.0);
      InducedStep st = induced_step(sys, x, beta, probe);
      REQUIRE_FALSE(st.censored);
      double width_y_next = ps.ys[n] - ps.ys[n + 1];  // lambda(Y_{n+1})
      CHECK(st.derivative * (1.0 + 1e-6) >= lambda_x1 / width_y_next);
    }
  }
}

TEST_CASE("raising the cap never changes a non-censored result") {
  auto lsv = lsv_system(ParameterMeasure::uniform(0.5, 2.0));
  RngStream rng(derive_seed(29, "test", "cap"));
  for (int k = 0; k < 200; ++k) {
    double x = 0.5 + 0.5 * std::max(1e-12, rng.next_unit());
    std::uint64_t seed = derive_seed(31, "test-cap", "s", k);
    AlphaStream a_small = AlphaStream::iid(lsv.nu_a(), seed);
    AlphaStream a_big = AlphaStream::iid(lsv.nu_a(), seed);
    InducedStep small = induced_step(lsv, x, 0.0, a_small, 10);
    InducedStep big = induced_step(lsv, x, 0.0, a_big, 10000);
    if (!small.censored) {
      CHECK(small.landing == big.landing);
      CHECK(small.left_steps == big.left_steps);
      CHECK(small.derivative == big.derivative);
    }
  }
}
