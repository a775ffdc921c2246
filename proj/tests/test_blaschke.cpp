#include <doctest.h>

#include <cmath>

#include "finehull/blaschke.hpp"
#include "finehull/error.hpp"

using namespace finehull;

namespace {

BlaschkeSpec quarter(int n, CRule rule = CRule::affine(5.0)) {
  return BlaschkeSpec::build(0, 0.0, M_PI / 2.0, rule, n);
}

}  // namespace

TEST_CASE("radius solutions") {
  CHECK(solve_radius(std::log(0.1)).r == doctest::Approx((-0.1 + std::sqrt(0.01 + 4.0)) / 2.0).epsilon(1e-15));
  CHECK(solve_radius(std::log(0.1)).r == doctest::Approx(0.951249).epsilon(1e-6));
  RadiusSolution j1 = solve_radius(-5.0);
  CHECK(1.0 - j1.r == doctest::Approx(3.36897e-3).epsilon(1e-5));
  RadiusSolution tiny = solve_radius(-800.0);
  CHECK(tiny.r == 1.0);
  CHECK(tiny.log_one_minus_r == doctest::Approx(-800.0 - std::log(2.0)).epsilon(1e-15));
  for (int j = 1; j <= 10; ++j) {
    RadiusSolution s = solve_radius(-5.0 * j);
    CHECK(s.log_one_minus_r <= -5.0 * j);
  }
}

TEST_CASE("dyadic placement") {
  BlaschkeSpec spec = quarter(7);
  CHECK(spec.zero(1).theta == doctest::Approx(M_PI / 4.0));
  CHECK(spec.zero(2).theta == doctest::Approx(M_PI / 8.0));
  CHECK(spec.zero(3).theta == doctest::Approx(3.0 * M_PI / 8.0));
  CHECK(spec.zero(4).theta == doctest::Approx(M_PI / 16.0));
  CHECK(spec.blaschke_sum() < 0.01);
}

TEST_CASE("values at zeros and at the origin") {
  BlaschkeSpec spec = quarter(4);
  CHECK(eval_blaschke(spec, 1, spec.zero(1).value()).is_zero());
  LogComplex at0 = eval_blaschke(spec, 4, {0.0, 0.0});
  double prod = 1.0;
  for (int j = 1; j <= 4; ++j) prod *= spec.zero(j).r();
  CHECK(std::abs(at0.value() - prod) < 1e-15);
  CHECK(std::abs(eval_blaschke(spec, 0, {0.0, 0.0}).value() - 1.0) < 1e-16);
}

TEST_CASE("unimodular on the circle and bounded inside") {
  BlaschkeSpec spec = quarter(64);
  for (int k = 0; k < 997; ++k) {
    complex z = std::polar(1.0, 2.0 * M_PI * (k + 0.5) / 997.0);
    CHECK(std::abs(eval_blaschke(spec, 64, z).log_mag()) < 1e-12);
    complex inside = 0.93 * z;
    CHECK(eval_blaschke(spec, 64, inside).log_mag() <= 0.0);
    double reflect = eval_blaschke(spec, 64, inside).log_mag() +
                     eval_blaschke(spec, 64, 1.0 / std::conj(inside)).log_mag();
    CHECK(std::abs(reflect) < 1e-10);
  }
}

TEST_CASE("tails") {
  BlaschkeSpec spec = quarter(64);
  CHECK(blaschke_tail_bound(spec, 64, {0.0, 0.0}) == 0.0);
  double far = blaschke_tail_bound(spec, 8, {10.0, 0.0});
  CHECK(far > 0.0);
  CHECK(far < 1e-30);
  CHECK_THROWS_AS(blaschke_tail_bound(spec, 1, spec.zero(5).pole().value()), Error);
}

TEST_CASE("extra zeros") {
  auto extra = BlaschkeSpec::extra_zero_generator(3, 0.0, M_PI / 2.0);
  REQUIRE(extra.size() == 3);
  for (complex a : extra) {
    double arg = std::arg(a);
    CHECK_FALSE((arg >= 0.0 && arg <= M_PI / 2.0));
  }
  CHECK(std::abs(extra[0]) == doctest::Approx(0.5));
  BlaschkeSpec spec = BlaschkeSpec::build(0, 0.0, M_PI / 2.0, CRule::affine(5.0), 8, extra);
  CHECK(eval_blaschke(spec, 0, extra[1]).is_zero());
  CHECK(std::abs(eval_blaschke(spec, 8, std::polar(1.0, 2.0)).log_mag()) < 1e-12);
}

TEST_CASE("disk capacity chain") {
  FineSets eight = disk_fine_sets(quarter(64), 8);
  CHECK(eight.closes);
  CHECK(std::exp(eight.log_target) == doctest::Approx(std::sin(M_PI / 8.0)).epsilon(1e-14));
  CHECK(close_disk_chain(quarter(64, CRule::affine(1.0)), 32).N >= 1);
  BlaschkeSpec thin = BlaschkeSpec::build(0, 0.0, 1e-200, CRule::affine(5.0), 16);
  CHECK_THROWS_AS(close_disk_chain(thin, 16), Error);
}

TEST_CASE("arc E-sample") {
  BlaschkeSpec spec = quarter(64);
  FineSets sets = disk_fine_sets(spec, 8);
  ArcSample s = sample_arc_E(spec, build_witness(sets), 256);
  REQUIRE_FALSE(s.points.empty());
  for (const auto& p : s.points) {
    CHECK(p.theta >= 0.0);
    CHECK(p.theta <= M_PI / 2.0);
    CHECK(p.u > 0.0);
    CHECK(blaschke_in_en(spec, 8, std::polar(1.0, p.theta)));
  }
}

TEST_CASE("sheets of f B") {
  BlaschkeSpec spec = quarter(32);
  Sheets origin = fb_sheets(spec, {0.0, 0.0}, 20);
  CHECK(std::abs(origin.value(0) - std::log(2.0) * origin.b.value()) < 1e-15);

  complex z{0.3, 0.2};
  Sheets s = fb_sheets(spec, z, 20);
  CHECK(std::abs(s.step - complex(0.0, 2.0 * M_PI) * s.b.value()) < 1e-15);
  for (int k = -3; k < 3; ++k) CHECK(std::abs((s.value(k + 1) - s.value(k)) - s.step) < 1e-14);

  complex edge = std::polar(0.999, 3.0);
  Sheets near_circle = fb_sheets(spec, edge, 20);
  CHECK(std::abs(near_circle.step) == doctest::Approx(2.0 * M_PI).epsilon(1e-2));

  CHECK_THROWS_AS(fb_sheets(spec, {-2.5, 0.0}, 20), Error);
  CHECK_THROWS_AS(fb_sheets(spec, {0.0, 2.5}, 20), Error);
}
