#pragma once

#include <span>
#include <vector>

#include "finehull/c_rule.hpp"
#include "finehull/geometry.hpp"
#include "finehull/log_complex.hpp"
#include "finehull/potential.hpp"

namespace finehull {

/// Modulus r of a zero with (1 - r^2)/r = t, t = exp(log_t), together with
/// log(1 - r) computed without cancellation.
struct RadiusSolution {
  double r = 0.0;
  double log_one_minus_r = 0.0;
};
RadiusSolution solve_radius(double log_t);
/// r for t = exp(-j c_j).
double radius_from_condition(int j, const CRule& rule);

/// A zero a_j = r e^{i theta} of the arc family.
struct BlaschkeZero {
  int index = 0;
  double theta = 0.0;
  double log_t = 0.0;            // log |a_j - 1/conj(a_j)| = -j c_j
  double log_one_minus_r = 0.0;

  double one_minus_r() const noexcept;
  double r() const noexcept { return 1.0 - one_minus_r(); }
  complex value() const noexcept;
  /// 1/conj(a_j) as e^{i theta} + e^{i theta} (1 - r)/r.
  AnchoredPoint pole() const noexcept;
};

/// Blaschke product z^l prod (|a_j|/a_j)(a_j - z)/(1 - conj(a_j) z) whose
/// zeros sweep the arc S = {e^{i phi} : alpha <= phi <= beta} dyadically.
class BlaschkeSpec {
 public:
  /// zero j = 2^k + i (0 <= i < 2^k) sits at angle alpha + (beta - alpha)(2i+1)/2^{k+1}.
  static BlaschkeSpec build(int l, double alpha, double beta, CRule rule, int max_index,
                            std::vector<complex> extra_zeros = {});

  /// `count` zeros with arguments spread over the complement of [alpha, beta]
  /// and moduli 1 - 2^{-k}, k = 1..count.
  static std::vector<complex> extra_zero_generator(int count, double alpha, double beta);

  int l() const noexcept { return l_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const CRule& c_rule() const noexcept { return rule_; }
  int max_index() const noexcept { return static_cast<int>(zeros_.size()); }
  std::span<const BlaschkeZero> zeros() const noexcept { return zeros_; }
  const BlaschkeZero& zero(int j) const;  // 1-based
  const std::vector<complex>& extra_zeros() const noexcept { return extra_; }

  /// sum (1 - |a_j|) over materialised zeros, plus extra zeros.
  double blaschke_sum() const noexcept;

 private:
  BlaschkeSpec(int l, double alpha, double beta, CRule rule, std::vector<BlaschkeZero> zeros,
               std::vector<complex> extra);

  int l_;
  double alpha_;
  double beta_;
  CRule rule_;
  std::vector<BlaschkeZero> zeros_;
  std::vector<complex> extra_;
};

/// B_N: z^l, the first N arc zeros and every extra zero. Throws PoleHit.
LogComplex eval_blaschke(const BlaschkeSpec& spec, int N, complex z);

/// Certified bound for |B / B_N - 1| over the arc zeros N+1..max_index.
/// Throws NotInEN unless |1/conj(a_j) - z| >= exp(-j c_j / 2) for j >= N.
double blaschke_tail_bound(const BlaschkeSpec& spec, int N, complex z);

/// Whether z satisfies the E_N distance conditions for the arc zeros.
bool blaschke_in_en(const BlaschkeSpec& spec, int N, complex z);

/// F_N = disks |z - 1/conj(a_j)| <= exp(-j c_j / 2), j >= N; J_N = S u F_N
/// with Cap J_N >= sin((beta - alpha)/4).
FineSets disk_fine_sets(const BlaschkeSpec& spec, int N);

/// Smallest N in 1..max_N whose chain closes. Throws ChainNotClosed.
FineSets close_disk_chain(const BlaschkeSpec& spec, int max_N);

struct ArcPoint {
  double theta = 0.0;
  double u = 0.0;
};

struct ArcSample {
  int N = 0;
  std::vector<ArcPoint> points;
  int candidates = 0;
  int failed_en = 0;
  int failed_u = 0;
};

/// Points e^{i theta}, theta = alpha + (beta - alpha)(3i+1)/(3m), kept when
/// they satisfy the E_N conditions and u > 0. Throws EmptySample.
ArcSample sample_arc_E(const BlaschkeSpec& spec, const FineWitness& witness, int samples);

/// Sheets (Log(z + 2) + 2 pi i k) B_N(z) of the continuation of f B with
/// f the principal logarithm of z + 2 on |z| < 2.
struct Sheets {
  LogComplex b;         // B_N(z)
  complex log_term;     // Log(z + 2)
  complex base;         // Log(z + 2) B_N(z)
  complex step;         // 2 pi i B_N(z)

  complex value(int k) const noexcept { return base + static_cast<double>(k) * step; }
};

/// Throws BranchAtCut when z + 2 lies on (-inf, 0] and DomainViolation for |z| >= 2.
Sheets fb_sheets(const BlaschkeSpec& spec, complex z, int N);

}  // namespace finehull
