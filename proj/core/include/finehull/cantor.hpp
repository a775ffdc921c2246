#pragma once

#include <optional>
#include <span>
#include <vector>

#include "finehull/c_rule.hpp"
#include "finehull/log_complex.hpp"

namespace finehull {

enum class Placement {
  /// Each new gap is centred in the currently longest remaining closed
  /// interval; ties go to the leftmost one.
  Bisect,
};

/// A deleted open interval (a_j, b_j). The endpoints are stored as a centre
/// plus a log length so that lengths below double underflow keep their size.
struct GapInterval {
  int index = 0;
  double center = 0.0;
  double log_length = 0.0;  // = -j c_j

  double length() const noexcept;
  double half_length() const noexcept;
  double log_half_length() const noexcept { return log_length - kLog2; }
  double a() const noexcept { return center - half_length(); }
  double b() const noexcept { return center + half_length(); }
};

struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const noexcept { return hi - lo; }
};

/// The Cantor set C(a, b) obtained from [a0, b0] by deleting gaps 1..max_index.
/// Immutable once built.
class CantorSpec {
 public:
  /// Throws GapOverflow when the gaps do not fit in [a0, b0] and
  /// PlacementFailure when no remaining interval can host the next gap.
  static CantorSpec build(double a0, double b0, CRule rule,
                          Placement placement = Placement::Bisect, int max_index = 0);

  double a0() const noexcept { return a0_; }
  double b0() const noexcept { return b0_; }
  const CRule& c_rule() const noexcept { return rule_; }
  Placement placement() const noexcept { return placement_; }
  int max_index() const noexcept { return static_cast<int>(gaps_.size()); }

  std::span<const GapInterval> gaps() const noexcept { return gaps_; }
  /// 1-based.
  const GapInterval& gap(int j) const;

  /// [a0, b0] minus the open gaps 1..N, sorted left to right.
  std::vector<RealInterval> remaining_intervals(int N) const;
  /// Longest interval of remaining_intervals(N).
  double max_remaining_length(int N) const;

  /// Whether x lies in a closed gap [a_j, b_j] for some j <= N.
  bool in_closed_gap(double x, int N) const;
  /// Index of the open gap containing x (j <= N), or 0.
  int open_gap_containing(double x, int N) const;

 private:
  CantorSpec(double a0, double b0, CRule rule, Placement placement,
             std::vector<GapInterval> gaps, std::vector<double> max_remaining);

  double a0_;
  double b0_;
  CRule rule_;
  Placement placement_;
  std::vector<GapInterval> gaps_;
  std::vector<double> max_remaining_;  // index N -> longest remaining interval
};

enum class Verdict { Satisfied, Violated, Unknown };

struct ConditionSum {
  double partial = 0.0;               // sum_{j<=J} 1/(j c_j)
  std::optional<double> tail_bound;   // bound on sum_{j>J}
  double threshold = 0.5;
  Verdict verdict = Verdict::Unknown;

  /// partial + tail_bound, when the tail is known.
  std::optional<double> certified_upper() const;
};

/// Partial sum of 1/(j c_j) with a certified tail, compared against threshold
/// (1/2 for the Cantor construction).
ConditionSum condition_sum(const CRule& rule, int J, double threshold = 0.5);
inline ConditionSum condition_sum(const CantorSpec& spec, int J, double threshold = 0.5) {
  return condition_sum(spec.c_rule(), J, threshold);
}

/// (b0 - a0) - sum_{j<=N} (b_j - a_j).
double cantor_length(const CantorSpec& spec, int N);

/// min over j <= N of d(z, [a_j, b_j]) and d(z, [a0, b0]); a lower bound for
/// d(z, C(a, b)) when z is off [a0, b0].
double distance_to_gaps(const CantorSpec& spec, complex z, int N);

/// Distance from z to [a0, b0] minus the open gaps 1..N, a superset of C(a, b);
/// hence a lower bound for d(z, C(a, b)) everywhere.
double distance_to_remaining(const CantorSpec& spec, complex z, int N);

/// log |z - b_n| computed relative to the gap centre.
double log_distance_to_pole(const GapInterval& gap, complex z) noexcept;

}  // namespace finehull
