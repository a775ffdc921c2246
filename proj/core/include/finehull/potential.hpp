#pragma once

#include <vector>

#include "finehull/cantor.hpp"
#include "finehull/geometry.hpp"
#include "finehull/log_complex.hpp"

namespace finehull {

/// log Cap: interval length/4, disk radius, arc of angle phi sin(phi/4).
double log_exact_capacity(const Shape& shape);
double exact_capacity(const Shape& shape);

struct UnionBound {
  double log_bound = 0.0;       // log of the capacity bound, in original scale
  double frame = 1.0;           // configuration rescaled by 1/frame (diameter <= 1)
  double reciprocal_sum = 0.0;  // sum_i 1/log(frame/cap_i) over the listed shapes
  double tail = 0.0;            // extra reciprocal mass for unlisted members
};

/// Capacity bound for a union from 1/log(1/Cap) <= sum 1/log(1/Cap_i) in a
/// frame of diameter <= 1. `tail` adds the reciprocal mass of members that are
/// not materialised. Throws BoundVacuous when a member fills the frame.
UnionBound union_capacity_bound(const CompactUnion& set, double tail = 0.0);

/// The compact sets F_N (small) and J_N (host) whose Green functions give the
/// witness u = g_F - g_J, with the capacity chain Cap F_N < Cap J_N.
struct FineSets {
  int N = 0;
  CompactUnion F;
  CompactUnion J;
  double tail = 0.0;          // reciprocal mass of F's unmaterialised members
  UnionBound bound;           // upper bound for Cap F_N
  double log_target = 0.0;    // lower bound for log Cap J_N
  bool closes = false;        // bound.log_bound < log_target
};

/// F_N = all gaps [a_j, b_j] plus the disks |z - b_n| <= exp(-n c_n / 2),
/// n >= N; J_N = [a0, b0] u F_N with Cap J_N >= (b0 - a0)/4.
FineSets cantor_fine_sets(const CantorSpec& spec, int N);

/// Smallest N in 1..max_N whose chain closes. Throws ChainNotClosed.
FineSets close_cantor_chain(const CantorSpec& spec, int max_N);

/// The two partial sums in the capacity estimate for F_N:
/// sum_{j<=max} 1/(j c_j + log 4) and sum_{N<=j<=max} 2/(j c_j), plus a bound
/// for both tails past max_index.
struct CapacitySums {
  double gap_sum = 0.0;
  double disk_sum = 0.0;
  double tail = 0.0;
  double total() const noexcept { return gap_sum + disk_sum + tail; }
};
CapacitySums cantor_capacity_sums(const CantorSpec& spec, int N);

struct LejaOptions {
  int candidates_per_node = 64;
  /// Shapes below this size enter as single reusable candidates.
  double resolution = 1e-12;
};

/// Greedy Leja nodes on the boundary of a compact union and the resulting
/// discrete equilibrium potential.
struct GreenModel {
  CompactUnion support;
  std::vector<AnchoredPoint> points;
  std::vector<double> log_d;     // log d_k for k = 2..n
  double log_cap = 0.0;          // log of the Leja step constant
  double support_tolerance = 0.0;

  int n() const noexcept { return static_cast<int>(points.size()); }
  double cap_estimate() const noexcept;
  double log_d_n() const noexcept { return log_d.empty() ? 0.0 : log_d.back(); }
};

/// First node: the candidate of largest modulus; then each node maximises the
/// product of distances to the previous ones. Ties go to the lowest index.
/// Throws DegenerateSet when the candidates coincide and InvalidArgument for n < 2.
GreenModel leja_points(const CompactUnion& set, int n, const LejaOptions& options = {});

/// (1/n) sum log|z - xi_k| - log cap_estimate, unclamped.
double green_raw(const GreenModel& model, complex z);
double green_raw_at(const GreenModel& model, const AnchoredPoint& z);
/// green_raw clamped at 0.
double green_eval(const GreenModel& model, complex z);
double green_eval_at(const GreenModel& model, const AnchoredPoint& z);

/// u = g_F - g_J.
double fine_witness_u(const GreenModel& F, const GreenModel& J, complex z);

/// A point at 10^6 times the configuration diameter from J.
complex infinity_proxy(const GreenModel& J);

/// Green models for a pair of fine sets.
struct FineWitness {
  FineSets sets;
  GreenModel F;
  GreenModel J;

  double u(complex z) const { return fine_witness_u(F, J, z); }
  /// u at the infinity proxy and the log-capacity ratio it should match.
  double u_infinity() const;
  double log_cap_ratio() const noexcept { return J.log_cap - F.log_cap; }
};

FineWitness build_witness(FineSets sets, int leja_n = 64, const LejaOptions& options = {});

struct EPoint {
  double x = 0.0;
  double u = 0.0;
  bool in_en = false;
};

struct ESample {
  int N = 0;
  std::vector<EPoint> points;  // certified: in E_N and u > 0
  int candidates = 0;
  int failed_en = 0;
  int failed_u = 0;
};

/// Candidate x at positions (3i+1)/(3m) inside each remaining interval of
/// depth N, kept when x satisfies the E_N conditions and u(x) > 0.
/// Throws PreconditionFailure when the summability condition fails or the
/// capacity chain does not close at N, EmptySample when nothing passes.
ESample sample_E(const CantorSpec& spec, int N, int samples, int leja_n = 64);

/// The same filter against an already built witness.
ESample sample_E(const CantorSpec& spec, const FineWitness& witness, int samples);

}  // namespace finehull
