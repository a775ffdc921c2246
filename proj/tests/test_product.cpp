#include <doctest.h>

#include <cmath>
#include <complex>

#include "finehull/error.hpp"
#include "finehull/product.hpp"

using namespace finehull;

namespace {

CantorSpec affine_spec(int n) {
  return CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, n);
}

// Direct product of (z - b_j)/(z - a_j) for resolvable gaps.
complex naive_product(const CantorSpec& spec, int N, complex z) {
  complex f = (z - spec.b0()) / (z - spec.a0());
  for (int j = 1; j <= N; ++j) f *= (z - spec.gap(j).a()) / (z - spec.gap(j).b());
  return f;
}

}  // namespace

TEST_CASE("log complex arithmetic") {
  LogComplex a = LogComplex::from_complex({3.0, 4.0});
  CHECK(a.log_mag() == doctest::Approx(std::log(5.0)));
  CHECK(std::abs((a * a.conj()).value() - complex(25.0, 0.0)) < 1e-13);
  CHECK(std::abs(a.sqrt().value() - std::sqrt(complex(3.0, 4.0))) < 1e-15);
  CHECK(LogComplex::zero().is_zero());
  CHECK(std::abs(log1p_factor({1e-30, 0.0}).log_mag() - 1e-30) < 1e-45);
  LogAccumulator acc;
  for (int i = 0; i < 4; ++i) acc.add(LogComplex::from_complex({0.0, 1.0}));
  CHECK(std::abs(acc.result().value() - complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("partial product without gaps") {
  CantorSpec spec = affine_spec(0);
  CHECK(std::abs(eval_partial_product(spec, 0, {2.0, 0.0}).value() - 0.5) < 1e-16);
  CHECK(std::abs(eval_partial_product(spec, 0, {0.0, 1.0}).value() - complex(1.0, 1.0)) < 1e-15);
  EvalResult r = eval_f(spec, {0.0, 1.0}, 1e-12);
  CHECK(std::abs(r.value.value() - complex(1.0, 1.0)) <= 4.0 * 0x1p-52);
  CHECK(r.err == 0.0);
}

TEST_CASE("one gap at z = 2") {
  CantorSpec spec = affine_spec(1);
  double b1 = spec.gap(1).b();
  double oracle = 0.5 * (1.0 + std::exp(-5.0) / (2.0 - b1));
  CHECK(eval_partial_product(spec, 1, {2.0, 0.0}).value().real() ==
        doctest::Approx(oracle).epsilon(1e-15));
}

TEST_CASE("partial products agree with direct multiplication") {
  CantorSpec spec = affine_spec(3);
  for (complex z : {complex(2.0, 0.0), complex(0.3, 0.2), complex(-1.0, -0.5), complex(0.75, 1e-3)}) {
    complex direct = naive_product(spec, 3, z);
    complex logspace = eval_partial_product(spec, 3, z).value();
    CHECK(std::abs(logspace - direct) <= 1e-13 * std::abs(direct));
  }
}

TEST_CASE("sub-ulp gaps still perturb their factor") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::factorial(), Placement::Bisect, 4);
  complex z{0.9, 0.1};
  complex delta = spec.gap(3).length() / (z - spec.gap(3).b());
  LogComplex factor = product_factor(spec, 3, z);
  CHECK(spec.gap(3).length() < 1e-150);
  CHECK(factor.log_mag() != 0.0);
  CHECK(factor.log_mag() == doctest::Approx(delta.real()).epsilon(1e-12));
}

TEST_CASE("pole hits throw") {
  CantorSpec spec = affine_spec(0);
  CHECK_THROWS_AS(eval_partial_product(spec, 0, {0.0, 0.0}), Error);
}

TEST_CASE("tail bounds") {
  CHECK(product_tail_from_sum(1e-6) == doctest::Approx(1.0000005e-6).epsilon(1e-12));
  CantorSpec spec = affine_spec(12);
  CHECK(tail_bound(spec, 12, complex(2.0, 0.0)).bound == 0.0);
  TailBound t = tail_bound(spec, 1, complex(2.0, 0.0));
  double scale = std::exp(-10.0) / (1.0 - std::exp(-5.0)) / (1.0 - spec.gap(1).b());
  CHECK(t.bound > 0.0);
  CHECK(t.bound <= scale);
  CHECK(t.bound <= t.bound_p);
}

TEST_CASE("eval_f at z = 2 converges within tolerance") {
  CantorSpec spec = affine_spec(12);
  EvalResult r = eval_f(spec, {2.0, 0.0}, 1e-12);
  CHECK(r.err <= 1e-12);
  double b1 = spec.gap(1).b();
  double b2 = spec.gap(2).b();
  double oracle = 0.5 * (1.0 + std::exp(-5.0) / (2.0 - b1)) * (1.0 + std::exp(-20.0) / (2.0 - b2));
  CHECK(r.value.value().real() == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("f tends to one like 1 + c_1/z") {
  CantorSpec spec = affine_spec(12);
  double c1 = -cantor_length(spec, 12);
  double prev = INFINITY;
  for (double R : {1e3, 1e4, 1e5}) {
    complex f = eval_f(spec, {R, 0.0}, 1e-14).value.value();
    double scaled = std::abs(f - 1.0 - c1 / R) * R * R;
    CHECK(std::abs(f - 1.0 - c1 / R) < prev);
    prev = std::abs(f - 1.0 - c1 / R);
    CHECK(scaled < 10.0);
  }
}

TEST_CASE("square-root branches") {
  CantorSpec spec = affine_spec(0);
  CHECK(sqrt_branch(spec, 0, {2.0, 0.0}, BranchTag::DPlus).value().real() ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  complex h = sqrt_branch(spec, 0, {0.0, -1.0}, BranchTag::HPlus).value();
  CHECK(std::abs(h - complex(-1.098684, 0.455090)) < 1e-6);

  CantorSpec deep = affine_spec(12);
  int N = deep.max_index();
  CHECK(std::abs(sqrt_branch(deep, N, {1e6, 0.0}, BranchTag::DMinus).value() + 1.0) < 1e-5);
  CHECK(std::abs(sqrt_branch(deep, N, {0.0, 1e6}, BranchTag::HPlus).value() - 1.0) < 1e-5);

  for (complex z : {complex(0.3, 0.2), complex(-0.7, 1.1), complex(1.4, -0.3), complex(0.5, -2.0)}) {
    LogComplex f = eval_partial_product(deep, N, z);
    for (BranchTag t : {BranchTag::DPlus, BranchTag::DMinus, BranchTag::HPlus, BranchTag::HMinus}) {
      LogComplex s = sqrt_branch(deep, N, z, t);
      CHECK(std::abs((s * s / f).minus_one()) < 1e-10);
    }
    complex up = sqrt_branch(deep, N, z, BranchTag::DPlus).value();
    complex down = sqrt_branch(deep, N, std::conj(z), BranchTag::DPlus).value();
    CHECK(std::abs(down - std::conj(up)) < 1e-14);
  }
}

TEST_CASE("D branches are undefined on the Cantor interval") {
  CantorSpec spec = affine_spec(4);
  CHECK_THROWS_AS(sqrt_branch(spec, 4, {0.25, 0.0}, BranchTag::DPlus), Error);
}

TEST_CASE("Laurent coefficient equals minus the length") {
  CantorSpec none = affine_spec(0);
  LaurentC1 c0 = laurent_c1(none, 0);
  CHECK(c0.formula == -1.0);
  CHECK(c0.contour == doctest::Approx(-1.0).epsilon(1e-12));
  CantorSpec spec = affine_spec(8);
  for (int N = 0; N <= 8; ++N) {
    LaurentC1 c = laurent_c1(spec, N);
    CHECK(c.formula == -cantor_length(spec, N));
    CHECK(std::abs(c.contour - c.formula) < 1e-8);
  }
  CHECK(laurent_c1(spec, 1).formula == doctest::Approx(-0.993262).epsilon(1e-6));
}

TEST_CASE("log-derivative coefficients") {
  CantorSpec spec = affine_spec(4);
  CHECK(log_derivative_coeff(spec, 1, 0) == 1.0);
  for (int N = 0; N <= 4; ++N) {
    CHECK(log_derivative_coeff(spec, 1, N) == doctest::Approx(cantor_length(spec, N)).epsilon(1e-14));
  }
  double a = spec.gap(1).a();
  double b = spec.gap(1).b();
  CHECK(log_derivative_coeff(spec, 2, 1) == doctest::Approx(1.0 - (b * b - a * a)).epsilon(1e-14));

  complex z{0.4, 0.3};
  double h = 1e-6;
  complex fd = (eval_partial_product(spec, 4, z + h).value() - eval_partial_product(spec, 4, z - h).value()) /
               (2.0 * h) / eval_partial_product(spec, 4, z).value();
  CHECK(std::abs(log_derivative(spec, 4, z) - fd) < 1e-6 * std::abs(fd));
}

TEST_CASE("boundary values at Cantor points") {
  CantorSpec spec = affine_spec(12);
  double x = 0.17064604906008862;
  REQUIRE(satisfies_en(spec, x, 6));
  FineValue fv = fine_boundary_value(spec, x, BranchTag::HPlus, 1e-14, 6);
  LogComplex f = eval_partial_product(spec, spec.max_index(), {x, 0.0});
  CHECK(f.value().real() < 0.0);
  CHECK(std::abs(f.value().imag()) < 1e-12 * std::abs(f.value()));
  double prev = INFINITY;
  for (int k = 0; k <= 8; ++k) {
    double eps = 1e-2 * std::pow(4.0, -k);
    double d = std::abs(fv.value.value() -
                        sqrt_branch(spec, spec.max_index(), {x, eps}, BranchTag::HPlus).value());
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 10.0 * (fv.err + 1e-2 * std::pow(4.0, -8)));
  CHECK_THROWS_AS(fine_boundary_value(spec, spec.gap(1).b(), BranchTag::HPlus, 1e-14, 1), Error);
  CHECK_THROWS_AS(fine_boundary_value(spec, x, BranchTag::DPlus, 1e-14, 6), Error);
}

TEST_CASE("the H branch jumps across a gap") {
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::affine(0.05, 1.0), Placement::Bisect, 8);
  double x = spec.gap(1).center;
  double eps = 1e-8;
  complex up = sqrt_branch(spec, 8, {x, eps}, BranchTag::HPlus).value();
  complex down = sqrt_branch(spec, 8, {x, -eps}, BranchTag::HPlus).value();
  CHECK(std::abs(up + down) < 1e-6);
  double g = std::exp(0.5 * eval_partial_product(spec, 8, {x, 0.0}).log_mag());
  CHECK(std::abs(up - down) == doctest::Approx(2.0 * g).epsilon(1e-6));
}
