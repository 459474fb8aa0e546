#include <catch_amalgamated.hpp>

#include "malign/metrics.hpp"
#include "malign/models.hpp"
#include "malign/rng.hpp"
#include "malign/trace_identity.hpp"

using namespace malign;

TEST_CASE("trace identity at the truth", "[trace_identity]") {
  Rng rng = seeded_rng(1);
  const Alignment truth = random_alignment(5, 3, rng);
  const TraceIdentityCheck c = trace_identity_check(truth, truth);
  CHECK(c.lhs == 0);
  CHECK(c.rhs == 0);
  CHECK(c.ok);
}

TEST_CASE("trace identity on random alignments", "[trace_identity]") {
  Rng rng = seeded_rng(2);
  for (int k = 0; k < 100; ++k) {
    const Alignment truth = random_alignment(6, 3, rng);
    const Alignment sigma = random_alignment(6, 3, rng);
    const TraceIdentityCheck c = trace_identity_check(sigma, truth);
    CHECK(c.lhs == c.rhs);
    std::int64_t expected = 0;
    const CountMatrix d = edge_fixed_points(sigma, truth);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) expected += 15 - d(i, j);
    CHECK(c.rhs == expected);
  }
}

TEST_CASE("trace identity size cap", "[trace_identity]") {
  CHECK_THROWS_AS(trace_identity_check(Alignment::identity(13, 2), Alignment::identity(13, 2)), StateSpaceTooLarge);
}
