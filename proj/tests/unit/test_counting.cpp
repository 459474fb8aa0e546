#include <catch_amalgamated.hpp>

#include <cmath>

#include "malign/counting.hpp"
#include "malign/metrics.hpp"

using namespace malign;
using Catch::Matchers::WithinAbs;

namespace {

CountMatrix pair_thresholds(std::size_t n, std::int64_t d12) {
  CountMatrix d(2, static_cast<std::int64_t>(n));
  d(0, 1) = d(1, 0) = d12;
  return d;
}

}  // namespace

TEST_CASE("count F by exhaustion over S3", "[counting]") {
  const Alignment truth = Alignment::identity(3, 2);
  CHECK(count_F(3, 2, pair_thresholds(3, 3), truth) == 1);
  CHECK(count_F(3, 2, pair_thresholds(3, 0), truth) == 6);
  CHECK(count_F(3, 2, pair_thresholds(3, 1), truth) == 4);
}

TEST_CASE("census matches direct counting", "[counting]") {
  const Alignment truth = Alignment::parse("1 2 3 4;2 1 4 3;3 4 1 2");
  const DijCensus census(4, 3, truth);
  CountMatrix d(3, 4);
  d(0, 1) = d(1, 0) = 1;
  d(0, 2) = d(2, 0) = 2;
  d(1, 2) = d(2, 1) = 0;
  std::uint64_t direct = 0;
  for (const auto& s : enumerate_alignments(4, 3)) {
    const CountMatrix m = dij_matrix(s, truth);
    direct += (m(0, 1) >= 1 && m(0, 2) >= 2) ? 1 : 0;
  }
  CHECK(census.count(d) == direct);
  CHECK(count_F(4, 3, d, truth) == direct);
}

TEST_CASE("usable bound by hand", "[counting]") {
  const DijCensus census(3, 2);
  const BoundCheck full = check_usable_bound(census, pair_thresholds(3, 3));
  CHECK(full.count == 1);
  CHECK_THAT(full.log_bound, WithinAbs(0.0, 1e-12));
  CHECK(full.ok);
  const BoundCheck one = check_usable_bound(census, pair_thresholds(3, 1));
  CHECK(one.count == 4);
  CHECK_THAT(std::exp(one.log_bound), WithinAbs(6.0, 1e-9));
  CHECK(one.ok);
}

TEST_CASE("permutation-order bound", "[counting]") {
  const DijCensus census(4, 2);
  const Permutation swap = Permutation::from_one_based(std::vector<int>{2, 1});
  for (std::int64_t d12 = 0; d12 <= 4; ++d12) {
    // p = 2: n!/d₁₂! for either order.
    const double expected = std::log(24.0) - log_factorial(static_cast<std::size_t>(d12));
    for (const Permutation& tau : {Permutation::identity(2), swap}) {
      const BoundCheck c = check_permcount_bound(census, pair_thresholds(4, d12), tau);
      CHECK_THAT(c.log_bound, WithinAbs(expected, 1e-12));
      CHECK(c.ok);
    }
  }
  const BoundCheck zero = check_permcount_bound(DijCensus(4, 3), CountMatrix(3, 0), Permutation::identity(3));
  CHECK_THAT(zero.log_bound, WithinAbs(2 * std::log(24.0), 1e-12));
  CHECK(zero.count == 576);
  CHECK(zero.ok);
}

TEST_CASE("usable and permcount sweeps at n = 4, p = 3", "[counting][slow]") {
  const DijCensus census(4, 3);
  std::size_t checked = 0;
  std::vector<Permutation> orders;
  for (std::uint64_t r = 0; r < 6; ++r) orders.push_back(permutation_unrank(3, r));
  for (std::int64_t a = 0; a <= 4; ++a) {
    for (std::int64_t b = 0; b <= 4; ++b) {
      for (std::int64_t c = 0; c <= 4; ++c) {
        CountMatrix d(3, 4);
        d(0, 1) = d(1, 0) = a;
        d(0, 2) = d(2, 0) = b;
        d(1, 2) = d(2, 1) = c;
        CHECK(check_usable_bound(census, d).ok);
        for (const auto& tau : orders) CHECK(check_permcount_bound(census, d, tau).ok);
        CHECK(check_order_averaging(d).ok);
        ++checked;
      }
    }
  }
  CHECK(checked == 125);
}

TEST_CASE("threshold validation", "[counting]") {
  CountMatrix bad(2, 3);
  bad(0, 1) = 1;
  bad(1, 0) = 2;
  CHECK_THROWS_AS(validate_thresholds(3, 2, bad), std::invalid_argument);
  CHECK_THROWS_AS(validate_thresholds(3, 2, pair_thresholds(3, 4)), std::invalid_argument);
  CHECK_THROWS_AS(count_F(8, 3, pair_thresholds(8, 1), Alignment::identity(8, 3), 1000), std::exception);
}

TEST_CASE("log factorial", "[counting]") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(1) == 0.0);
  CHECK_THAT(log_factorial(10), WithinAbs(std::log(3628800.0), 1e-12));
}
