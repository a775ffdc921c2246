#include <doctest.h>

#include <cmath>

#include "finehull/error.hpp"
#include "finehull/hull.hpp"
#include "finehull/potential.hpp"
#include "finehull/product.hpp"

using namespace finehull;

namespace {

CantorSpec affine_spec(int n) {
  return CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, n);
}

double e_point() { return 0.17064604906008862; }

bool near(const HullGrid& g, const Dip& d, complex target) {
  return std::abs((d.w - target).real()) <= g.cell_width() &&
         std::abs((d.w - target).imag()) <= g.cell_height();
}

}  // namespace

TEST_CASE("v_n at depth zero") {
  CantorSpec spec = affine_spec(4);
  CHECK(v_n(spec, 0, {2.0, 0.0}, {0.5, 0.0}) == -INFINITY);
  CHECK(v_n(spec, 0, {2.0, 0.0}, {1.5, 0.0}) == doctest::Approx(std::log(2.0)));
  PolynomialPair pq = polynomial_pair(spec, 2, {0.3, 0.4});
  complex w{0.7, -0.2};
  CHECK(v_n(spec, 2, {0.3, 0.4}, w) == doctest::Approx(std::log(std::abs(w * pq.Q.value() - pq.P.value()))));
}

TEST_CASE("weights") {
  WeightSet fact = build_weights(CRule::factorial(), 8);
  CHECK(fact.sum_converges);
  CHECK(fact.weighted_floor_diverges);
  CHECK(fact.ratio[0] == doctest::Approx(2.0 * 24.0 / 6.0));
  CHECK(fact.e[2] == doctest::Approx(1.0 / 9.0));
  CHECK_THROWS_AS(build_weights(CRule::affine(5.0), 8), Error);
  WeightSet one = build_weights(CRule::factorial(), 1);
  CHECK(one.e.size() == 1);
  CHECK(one.e[0] == 1.0);
  WeightSet unit = build_weights(CRule::affine(5.0), 4, WeightMode::UnitCoefficient);
  CHECK(unit.e[3] == 4.0 * 20.0);
}

TEST_CASE("graph distance stays below the floor on E-points") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::factorial(), Placement::Bisect, 8);
  ESample e = sample_E(spec, 1, 32);
  REQUIRE_FALSE(e.points.empty());
  for (const auto& p : e.points) {
    for (int n = 2; n <= 6; ++n) {
      CHECK(graph_distance(spec, n, {p.x, 0.0}).log_bound <= kLog2 + log_floor(spec.c_rule(), n));
    }
  }
}

TEST_CASE("product deviation matches direct evaluation") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::affine(0.5, 1.0), Placement::Bisect, 4);
  complex z{0.3, 0.2};
  Deviation d = product_deviation(spec, 1, 4, z);
  complex direct = 1.0;
  for (int j = 2; j <= 4; ++j) direct *= (z - spec.gap(j).a()) / (z - spec.gap(j).b());
  CHECK(d.log_value == doctest::Approx(std::log(std::abs(direct - 1.0))).epsilon(1e-9));
  CHECK(d.log_value <= d.log_bound);
}

TEST_CASE("v is unbounded below on the graph and bounded off it") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::factorial(), Placement::Bisect, 8);
  double x = sample_E(spec, 1, 32).points.front().x;
  complex z{x, 0.0};
  double prev = INFINITY;
  double floor_sum = 0.0;
  for (int M = 1; M <= 8; ++M) {
    HullPotentialSpec hps = make_hull_spec(spec, M);
    floor_sum += hps.coefficient(M) * (kLog2 + log_floor(spec.c_rule(), M));
    double v = eval_v_on_graph(hps, z);
    CHECK(v < prev);
    CHECK(v <= floor_sum + 1e-9);
    prev = v;
  }
  complex f = eval_partial_product(spec, 8, z).value();
  double off4 = eval_v(make_hull_spec(spec, 4), z, f + 0.1);
  double off8 = eval_v(make_hull_spec(spec, 8), z, f + 0.1);
  CHECK(std::isfinite(off8));
  CHECK(std::abs(off8 - off4) < 1.0);
}

TEST_CASE("fiber at z = 2") {
  CantorSpec spec = affine_spec(12);
  complex g = sqrt_branch(spec, 12, {2.0, 0.0}, BranchTag::DPlus).value();
  HullPotentialSpec hps = make_hull_spec(spec, 4, WeightMode::UnitCoefficient);
  HullGrid grid = fiber_scan(hps, {2.0, 0.0}, {-3.0, 3.0, -3.0, 3.0}, 64, true, 2);
  REQUIRE(grid.dips.size() == 2);
  CHECK((near(grid, grid.dips[0], g) || near(grid, grid.dips[0], -g)));
  CHECK((near(grid, grid.dips[1], g) || near(grid, grid.dips[1], -g)));
  CHECK(grid.dips[0].depth == doctest::Approx(grid.dips[1].depth));
}

TEST_CASE("fiber over an E-point") {
  CantorSpec spec = affine_spec(12);
  double x = e_point();
  complex g = fine_boundary_value(spec, x, BranchTag::HPlus, 1e-14, 6).value.value();
  HullPotentialSpec hps = make_hull_spec(spec, 4, WeightMode::UnitCoefficient);
  double h = 1.5 * std::abs(g);
  HullGrid coarse = fiber_scan(hps, {x, 0.0}, {-h, h, -h, h}, 64, true, 1);
  HullGrid fine = fiber_scan(hps, {x, 0.0}, {-h, h, -h, h}, 128, true, 3);
  CHECK(coarse.dips.size() == 2);
  CHECK(fine.dips.size() == 2);
  for (const auto& d : fine.dips) CHECK((near(fine, d, g) || near(fine, d, -g)));

  complex f = eval_partial_product(spec, 12, {x, 0.0}).value();
  double r = 1.5 * std::abs(f);
  HullGrid plain = fiber_scan(hps, {x, 0.0}, {-r, r, -r, r}, 128, false, 2);
  REQUIRE(plain.dips.size() == 1);
  CHECK(near(plain, plain.dips[0], f));
}

TEST_CASE("scans do not depend on the thread count") {
  CantorSpec spec = affine_spec(12);
  HullPotentialSpec hps = make_hull_spec(spec, 4, WeightMode::UnitCoefficient);
  HullGrid a = fiber_scan(hps, {2.0, 0.0}, {-3.0, 3.0, -3.0, 3.0}, 48, true, 1);
  HullGrid b = fiber_scan(hps, {2.0, 0.0}, {-3.0, 3.0, -3.0, 3.0}, 48, true, 5);
  CHECK(a.values == b.values);
  CHECK(a.median == b.median);
}

TEST_CASE("w to -w symmetry of the squared scan") {
  CantorSpec spec = affine_spec(12);
  HullPotentialSpec hps = make_hull_spec(spec, 4, WeightMode::UnitCoefficient);
  HullGrid g = fiber_scan(hps, {2.0, 0.0}, {-3.0, 3.0, -3.0, 3.0}, 32, true);
  for (int iy = 0; iy < 32; ++iy) {
    for (int ix = 0; ix < 32; ++ix) {
      double v = g.values[iy * 32 + ix];
      double mirrored = g.values[(31 - iy) * 32 + (31 - ix)];
      CHECK(v == doctest::Approx(mirrored).epsilon(1e-12));
    }
  }
}
