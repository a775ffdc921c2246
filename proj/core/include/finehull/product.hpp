#pragma once

#include <variant>

#include "finehull/cantor.hpp"
#include "finehull/geometry.hpp"
#include "finehull/log_complex.hpp"

namespace finehull {

/// Selects one of the four square roots of the partial product:
/// g_+ / g_- on D (normalised to +1 / -1 at infinity) and the upper/lower
/// half-plane elements g~_+ / g~_- (normalised from the upper half-plane).
enum class BranchTag { DPlus, DMinus, HPlus, HMinus };

/// f^N(z) = (z - b0)/(z - a0) prod_{i<=N} (z - a_i)/(z - b_i).
/// Throws PoleHit when z is a0 or one of b_1..b_N.
LogComplex eval_partial_product(const CantorSpec& spec, int N, complex z);

/// The i-th Moebius factor as a LogComplex with its principal argument
/// (i = 0 is (z - b0)/(z - a0)).
LogComplex product_factor(const CantorSpec& spec, int i, complex z);

using Region = std::variant<complex, CompactUnion>;

struct TailBound {
  double bound = 0.0;     // exp(sum q_n) - 1, q_n = sup |factor_n - 1| over the region
  double bound_p = 0.0;   // exp(sum p_n) - 1 with the default p_n = exp(-n c_n / 2)
  double sum_q = 0.0;
  double sum_p = 0.0;
};

/// Certified bound for sup |f / f^N - 1| over the region, where f is the
/// product over all materialised gaps. Throws RegionViolatesEN when some
/// n > N has b_n - a_n > p_n d(b_n, region).
TailBound tail_bound(const CantorSpec& spec, int N, const Region& region);

/// exp(s) - 1: the bound on prod(1 + q_n) - 1 given sum q_n = s.
double product_tail_from_sum(double s) noexcept;

struct EvalResult {
  LogComplex value;
  double err = 0.0;  // bound on |f / f^N - 1|
  int depth = 0;
};

/// Raises N until the certified tail is below tol. Throws NoConvergence when
/// max_depth (default: every materialised gap) is reached first.
EvalResult eval_f(const CantorSpec& spec, complex z, double tol, int max_depth = -1);

/// Square-root branch of f^N built from principal roots of the factors.
LogComplex sqrt_branch(const CantorSpec& spec, int N, complex z, BranchTag tag);

struct LaurentC1 {
  double formula = 0.0;  // -(b0 - a0) + sum_{j<=N} (b_j - a_j)
  double contour = 0.0;  // (1/2 pi i) oint (f^N - 1) dz by the trapezoid rule
  double radius = 0.0;
  int nodes = 0;
};

/// Throws QuadratureFailure when the two values differ by more than tol.
LaurentC1 laurent_c1(const CantorSpec& spec, int N, double tol = 1e-8, int nodes = 4096);

/// b0^k - a0^k - sum_{j<=N} (b_j^k - a_j^k), the k-th power-sum coefficient of
/// the logarithmic derivative of f at infinity.
double log_derivative_coeff(const CantorSpec& spec, int k, int N);

/// f^N'/f^N at z (the logarithmic derivative).
complex log_derivative(const CantorSpec& spec, int N, complex z);

struct FineValue {
  LogComplex value;
  double err = 0.0;
  int depth = 0;
};

/// Value of the H-family branch at a Cantor point x that satisfies the E_N
/// conditions |x - b_n| >= exp(-n c_n / 2) for every materialised n >= N.
/// Throws NotInEN otherwise and DomainViolation for D-family tags.
FineValue fine_boundary_value(const CantorSpec& spec, double x, BranchTag tag, double tol,
                              int N);

/// Whether x is a materialised Cantor point (in [a0, b0], outside every closed
/// gap) satisfying the E_N conditions and distinct from b_1..b_{N-1}.
bool satisfies_en(const CantorSpec& spec, double x, int N);

}  // namespace finehull
