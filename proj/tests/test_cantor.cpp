#include <doctest.h>

#include <cmath>

#include "finehull/cantor.hpp"
#include "finehull/error.hpp"

using namespace finehull;

TEST_CASE("c rules") {
  CRule affine = CRule::affine(5.0);
  CHECK(affine.c(3) == 15.0);
  CHECK(affine.jc(3) == 45.0);
  CRule fact = CRule::factorial();
  CHECK(fact.c(1) == 6.0);
  CHECK(fact.jc(3) == 360.0);
  CRule values = CRule::explicit_values({1.0, 2.0});
  CHECK(values.c(2) == 2.0);
  CHECK_THROWS_AS(values.c(3), Error);
  // sum_{j>J} 1/(5 j^2) <= 1/(5 J)
  auto tail = affine.reciprocal_tail(10);
  REQUIRE(tail);
  double exact = 0.0;
  for (int j = 11; j < 1000000; ++j) exact += 1.0 / (5.0 * j * j);
  CHECK(*tail >= exact);
  CHECK(*tail < 2.0 * exact);
}

TEST_CASE("build with no gaps") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, 0);
  CHECK(spec.max_index() == 0);
  auto rest = spec.remaining_intervals(0);
  REQUIRE(rest.size() == 1);
  CHECK(rest[0].lo == 0.0);
  CHECK(rest[0].hi == 1.0);
  CHECK(cantor_length(spec, 0) == 1.0);
}

TEST_CASE("first gap is centred with length e^-5") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, 1);
  CHECK(spec.gap(1).center == 0.5);
  CHECK(spec.gap(1).length() == doctest::Approx(std::exp(-5.0)).epsilon(1e-15));
  CHECK(spec.gap(1).length() == doctest::Approx(6.7379e-3).epsilon(1e-4));
  CHECK(cantor_length(spec, 1) == doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-15));
}

TEST_CASE("underflowing gaps keep their log length") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::factorial(), Placement::Bisect, 3);
  CHECK(spec.gap(1).log_length == -6.0);
  CHECK(spec.gap(2).log_length == -48.0);
  CHECK(spec.gap(3).log_length == -360.0);
  CHECK(spec.gap(3).length() == doctest::Approx(std::exp(-360.0)).epsilon(1e-12));
}

TEST_CASE("bisect places each gap in the longest remaining interval") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, 3);
  double b1 = 0.5 + std::exp(-5.0) / 2.0;
  CHECK(spec.gap(2).center == doctest::Approx((b1 + 1.0) / 2.0).epsilon(1e-15));
  double a1 = 0.5 - std::exp(-5.0) / 2.0;
  CHECK(spec.gap(3).center == doctest::Approx(a1 / 2.0).epsilon(1e-15));
  CHECK(spec.remaining_intervals(3).size() == 4);
}

TEST_CASE("length drops by exactly one gap per step") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, 6);
  for (int N = 1; N <= 6; ++N) {
    double diff = cantor_length(spec, N - 1) - cantor_length(spec, N);
    CHECK(diff == doctest::Approx(spec.gap(N).length()).epsilon(1e-12));
  }
  double oracle = 1.0;
  for (int j = 1; j <= 6; ++j) oracle -= std::exp(-5.0 * j * j);
  CHECK(cantor_length(spec, 6) == doctest::Approx(oracle).epsilon(1e-15));
}

TEST_CASE("condition sums") {
  ConditionSum affine = condition_sum(CRule::affine(5.0), 50);
  CHECK(affine.verdict == Verdict::Satisfied);
  REQUIRE(affine.certified_upper());
  CHECK(affine.partial <= M_PI * M_PI / 30.0);
  CHECK(*affine.certified_upper() >= M_PI * M_PI / 30.0);
  CHECK(*affine.certified_upper() == doctest::Approx(0.32899).epsilon(0.01));

  ConditionSum unit = condition_sum(CRule::affine(1.0), 50);
  CHECK(unit.verdict == Verdict::Violated);

  ConditionSum fact = condition_sum(CRule::factorial(), 10);
  double oracle = 0.0;
  double f = 2.0;
  for (int j = 1; j <= 10; ++j) {
    f *= (j + 2);
    oracle += 1.0 / (j * f);
  }
  CHECK(fact.partial == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(fact.verdict == Verdict::Satisfied);
}

TEST_CASE("gap distances") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, 4);
  CHECK(distance_to_gaps(spec, {2.0, 0.0}, 0) == doctest::Approx(1.0));
  CHECK(distance_to_remaining(spec, {0.0, 1.0}, 0) == doctest::Approx(1.0));
  CHECK(distance_to_gaps(spec, {0.5, 0.0}, 1) < 1e-15);
  CHECK(spec.in_closed_gap(0.5, 1));
  CHECK(spec.open_gap_containing(0.5, 1) == 1);
  CHECK(spec.open_gap_containing(0.25, 1) == 0);
}

TEST_CASE("oversized gaps are rejected") {
  CHECK_THROWS_AS(CantorSpec::build(0.0, 1.0, CRule::affine(0.01), Placement::Bisect, 4), Error);
}
