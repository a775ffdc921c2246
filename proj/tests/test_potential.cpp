#include <doctest.h>

#include <cmath>

#include "finehull/error.hpp"
#include "finehull/potential.hpp"
#include "finehull/product.hpp"

using namespace finehull;

namespace {

CompactUnion single(Shape s) { return CompactUnion{{std::move(s)}}; }

CantorSpec affine_spec(int n) {
  return CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, n);
}

}  // namespace

TEST_CASE("exact capacities") {
  CHECK(exact_capacity(Shape::interval(0.0, 1.0)) == 0.25);
  CHECK(exact_capacity(Shape::disk({1.0, 2.0}, 0.3)) == doctest::Approx(0.3));
  CHECK(log_exact_capacity(Shape::disk_log({0.5, 0.0}, {0.0, 0.0}, -22.5)) == -22.5);
  CHECK(exact_capacity(Shape::arc(0.0, M_PI / 2.0)) == doctest::Approx(std::sin(M_PI / 8.0)).epsilon(1e-15));
}

TEST_CASE("union bound") {
  UnionBound two = union_capacity_bound(
      CompactUnion{{Shape::disk({0.1, 0.0}, 0.1), Shape::disk({0.9, 0.0}, 0.1)}});
  CHECK(std::exp(two.log_bound) == doctest::Approx(std::pow(10.0, -0.5)).epsilon(1e-12));

  Shape tiny = Shape::interval(0.0, std::exp(-4.0));
  UnionBound one = union_capacity_bound(single(tiny));
  CHECK(one.log_bound == log_exact_capacity(tiny));
  CHECK(std::exp(one.log_bound) == doctest::Approx(std::exp(-4.0) / 4.0).epsilon(1e-14));
}

TEST_CASE("the Cantor capacity chain closes") {
  CantorSpec spec = affine_spec(12);
  FineSets six = cantor_fine_sets(spec, 6);
  CHECK(six.closes);
  CHECK(std::exp(six.bound.log_bound) < 0.25);
  CHECK_FALSE(cantor_fine_sets(spec, 1).closes);
  CHECK(close_cantor_chain(spec, 12).N == 2);
  CapacitySums sums = cantor_capacity_sums(spec, 6);
  CHECK(sums.total() > 0.0);
  CHECK_THROWS_AS(close_cantor_chain(CantorSpec::build(0.0, 1.0, CRule::affine(0.2, 1.0),
                                                       Placement::Bisect, 6),
                                     6),
                  Error);
}

TEST_CASE("Leja estimates") {
  GreenModel disk2 = leja_points(single(Shape::disk({0.0, 0.0}, 1.0)), 2);
  CHECK(std::abs(disk2.points[0].value() + disk2.points[1].value()) < 1e-12);
  CHECK(std::exp(disk2.log_d_n()) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK(leja_points(single(Shape::interval(-2.0, 2.0)), 64).cap_estimate() ==
        doctest::Approx(1.0).epsilon(0.05));
  CHECK(leja_points(single(Shape::disk({0.0, 0.0}, 1.0)), 64).cap_estimate() ==
        doctest::Approx(1.0).epsilon(0.02));
  CHECK(leja_points(single(Shape::interval(0.0, 1.0)), 64).cap_estimate() ==
        doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("transfinite diameters decrease") {
  for (const Shape& s : {Shape::disk({0.0, 0.0}, 1.0), Shape::interval(0.0, 1.0)}) {
    double prev = INFINITY;
    for (int n : {8, 16, 32, 64}) {
      double d = leja_points(single(s), n).log_d_n();
      CHECK(d <= prev + 1e-12);
      prev = d;
    }
  }
}

TEST_CASE("Green functions") {
  GreenModel seg = leja_points(single(Shape::interval(-1.0, 1.0)), 64);
  CHECK(green_eval(seg, {2.0, 0.0}) == doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(0.05));
  GreenModel disk = leja_points(single(Shape::disk({0.0, 0.0}, 1.0)), 64);
  CHECK(green_eval(disk, {2.0, 0.0}) == doctest::Approx(std::log(2.0)).epsilon(0.02));
  for (const auto& node : seg.points) CHECK(green_eval_at(seg, node) <= seg.support_tolerance);

  // mean value over a small circle off the support
  for (complex c : {complex(0.0, 0.5), complex(1.5, 0.3), complex(-2.0, -1.0)}) {
    double mean = 0.0;
    for (int k = 0; k < 16; ++k) mean += green_eval(seg, c + std::polar(0.05, 2.0 * M_PI * k / 16.0));
    mean /= 16.0;
    CHECK(std::abs(mean - green_eval(seg, c)) <= 1e-3 * std::max(1.0, green_eval(seg, c)));
  }
}

TEST_CASE("Leja estimate sits below the union bound on F_N") {
  FineSets sets = cantor_fine_sets(affine_spec(12), 2);
  GreenModel F = leja_points(sets.F, 64);
  CHECK(F.log_cap <= sets.bound.log_bound + std::log(1.1));
}

TEST_CASE("fine witness") {
  CantorSpec spec = affine_spec(12);
  FineWitness w = build_witness(cantor_fine_sets(spec, 6));
  CHECK(w.u_infinity() == doctest::Approx(w.log_cap_ratio()).epsilon(0.05));
  complex in_F = w.F.points.front().value();
  CHECK(w.u(in_F) <= 1e-6);

  ESample e = sample_E(spec, w, 512);
  REQUIRE_FALSE(e.points.empty());
  for (const auto& p : e.points) {
    CHECK(p.u > 0.0);
    CHECK(p.in_en);
  }
  CHECK_THROWS_AS(sample_E(CantorSpec::build(0.0, 1.0, CRule::affine(1.0), Placement::Bisect, 6), 2, 64),
                  Error);
}

TEST_CASE("E_N conditions relax as N grows") {
  CantorSpec spec = affine_spec(12);
  for (int N = 1; N < 8; ++N) {
    for (int i = 0; i < 300; ++i) {
      double x = (3.0 * i + 1.0) / 900.0;
      if (satisfies_en(spec, x, N)) CHECK(satisfies_en(spec, x, N + 1));
    }
  }
}
