#include "finehull/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "finehull/error.hpp"

namespace finehull {

double GapInterval::length() const noexcept { return std::exp(log_length); }
double GapInterval::half_length() const noexcept { return std::exp(log_length - kLog2); }

CantorSpec::CantorSpec(double a0, double b0, CRule rule, Placement placement,
                       std::vector<GapInterval> gaps, std::vector<double> max_remaining)
    : a0_(a0),
      b0_(b0),
      rule_(std::move(rule)),
      placement_(placement),
      gaps_(std::move(gaps)),
      max_remaining_(std::move(max_remaining)) {}

CantorSpec CantorSpec::build(double a0, double b0, CRule rule, Placement placement,
                             int max_index) {
  if (!(a0 < b0)) throw Error(Errc::InvalidArgument, "need a0 < b0");
  if (max_index < 0) throw Error(Errc::InvalidArgument, "need N >= 0");

  const double log_total = std::log(b0 - a0);
  double log_used = kNegInf;

  std::vector<RealInterval> open{{a0, b0}};
  std::vector<GapInterval> gaps;
  std::vector<double> max_remaining{b0 - a0};
  gaps.reserve(max_index);

  for (int j = 1; j <= max_index; ++j) {
    double log_len = -rule.jc(j);
    double hi = std::max(log_used, log_len);
    log_used = hi + std::log1p(std::exp(std::min(log_used, log_len) - hi));
    if (!(log_used < log_total)) {
      throw Error(Errc::GapOverflow,
                  "cumulative gap length reaches b0 - a0 at j = " + std::to_string(j));
    }

    auto host = open.begin();
    for (auto it = open.begin(); it != open.end(); ++it) {
      double len = it->length();
      double best = host->length();
      if (len > best || (len == best && it->lo < host->lo)) host = it;
    }
    if (!(log_len < std::log(host->length()))) {
      throw Error(Errc::PlacementFailure,
                  "no remaining interval can host gap " + std::to_string(j));
    }

    GapInterval gap{j, 0.5 * (host->lo + host->hi), log_len};
    double h = gap.half_length();
    RealInterval left{host->lo, gap.center - h};
    RealInterval right{gap.center + h, host->hi};
    *host = left;
    open.push_back(right);
    gaps.push_back(gap);

    double longest = 0.0;
    for (const auto& iv : open) longest = std::max(longest, iv.length());
    max_remaining.push_back(longest);
  }
  return CantorSpec(a0, b0, std::move(rule), placement, std::move(gaps),
                    std::move(max_remaining));
}

const GapInterval& CantorSpec::gap(int j) const {
  if (j < 1 || j > max_index()) {
    throw Error(Errc::InvalidArgument, "gap index out of range: " + std::to_string(j));
  }
  return gaps_[j - 1];
}

std::vector<RealInterval> CantorSpec::remaining_intervals(int N) const {
  N = std::clamp(N, 0, max_index());
  std::vector<const GapInterval*> sorted;
  sorted.reserve(N);
  for (int j = 0; j < N; ++j) sorted.push_back(&gaps_[j]);
  std::sort(sorted.begin(), sorted.end(),
            [](const GapInterval* x, const GapInterval* y) { return x->center < y->center; });
  std::vector<RealInterval> out;
  out.reserve(N + 1);
  double lo = a0_;
  for (const auto* g : sorted) {
    out.push_back({lo, g->a()});
    lo = g->b();
  }
  out.push_back({lo, b0_});
  return out;
}

double CantorSpec::max_remaining_length(int N) const {
  return max_remaining_[std::clamp(N, 0, max_index())];
}

bool CantorSpec::in_closed_gap(double x, int N) const {
  N = std::min(N, max_index());
  for (int j = 0; j < N; ++j) {
    const auto& g = gaps_[j];
    if (std::abs(x - g.center) <= g.half_length()) return true;
  }
  return false;
}

int CantorSpec::open_gap_containing(double x, int N) const {
  N = std::min(N, max_index());
  for (int j = 0; j < N; ++j) {
    const auto& g = gaps_[j];
    if (std::abs(x - g.center) < g.half_length()) return g.index;
  }
  return 0;
}

std::optional<double> ConditionSum::certified_upper() const {
  if (!tail_bound) return std::nullopt;
  return partial + *tail_bound;
}

ConditionSum condition_sum(const CRule& rule, int J, double threshold) {
  if (J < 1) throw Error(Errc::InvalidArgument, "condition_sum needs J >= 1");
  ConditionSum out;
  out.threshold = threshold;
  // Smallest terms first.
  for (int j = J; j >= 1; --j) out.partial += 1.0 / rule.jc(j);
  out.tail_bound = rule.reciprocal_tail(J);
  if (out.partial >= threshold) {
    out.verdict = Verdict::Violated;
  } else if (out.tail_bound && out.partial + *out.tail_bound < threshold) {
    out.verdict = Verdict::Satisfied;
  }
  return out;
}

double cantor_length(const CantorSpec& spec, int N) {
  N = std::clamp(N, 0, spec.max_index());
  double len = spec.b0() - spec.a0();
  for (int j = 1; j <= N; ++j) len -= spec.gap(j).length();
  return len;
}

namespace {

double distance_to_segment(complex z, double lo, double hi) noexcept {
  double dx = 0.0;
  if (z.real() < lo) {
    dx = lo - z.real();
  } else if (z.real() > hi) {
    dx = z.real() - hi;
  }
  return std::hypot(dx, z.imag());
}

}  // namespace

double distance_to_gaps(const CantorSpec& spec, complex z, int N) {
  N = std::clamp(N, 0, spec.max_index());
  double d = distance_to_segment(z, spec.a0(), spec.b0());
  for (int j = 1; j <= N; ++j) {
    const auto& g = spec.gap(j);
    d = std::min(d, distance_to_segment(z, g.a(), g.b()));
  }
  return d;
}

double distance_to_remaining(const CantorSpec& spec, complex z, int N) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& iv : spec.remaining_intervals(N)) {
    d = std::min(d, distance_to_segment(z, iv.lo, iv.hi));
  }
  return d;
}

double log_distance_to_pole(const GapInterval& gap, complex z) noexcept {
  complex zc = z - gap.center;
  complex zb = zc - gap.half_length();
  if (zb == complex{0.0, 0.0}) {
    // b underflowed onto the centre: |z - b| = h exactly when z is the centre.
    return zc == complex{0.0, 0.0} ? gap.log_half_length() : kNegInf;
  }
  return std::log(std::abs(zb));
}

}  // namespace finehull
