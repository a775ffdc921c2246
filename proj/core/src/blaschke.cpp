#include "finehull/blaschke.hpp"

#include <cmath>
#include <string>

#include "finehull/error.hpp"

namespace finehull {

RadiusSolution solve_radius(double log_t) {
  double t = std::exp(log_t);
  // 1 - r = (t/2)(1 - t/(2 + sqrt(t^2 + 4)))
  double log_s = log_t - kLog2 + std::log1p(-t / (2.0 + std::sqrt(t * t + 4.0)));
  return {1.0 - std::exp(log_s), log_s};
}

double radius_from_condition(int j, const CRule& rule) { return solve_radius(-rule.jc(j)).r; }

double BlaschkeZero::one_minus_r() const noexcept { return std::exp(log_one_minus_r); }

complex BlaschkeZero::value() const noexcept { return std::polar(r(), theta); }

AnchoredPoint BlaschkeZero::pole() const noexcept {
  complex unit = std::polar(1.0, theta);
  return {unit, unit * (one_minus_r() / r())};
}

BlaschkeSpec::BlaschkeSpec(int l, double alpha, double beta, CRule rule,
                           std::vector<BlaschkeZero> zeros, std::vector<complex> extra)
    : l_(l), alpha_(alpha), beta_(beta), rule_(std::move(rule)), zeros_(std::move(zeros)),
      extra_(std::move(extra)) {}

BlaschkeSpec BlaschkeSpec::build(int l, double alpha, double beta, CRule rule, int max_index,
                                 std::vector<complex> extra_zeros) {
  if (l < 0) throw Error(Errc::InvalidArgument, "l must be >= 0");
  if (!(alpha < beta) || !(beta - alpha < kTwoPi)) {
    throw Error(Errc::InvalidArgument, "arc needs 0 < beta - alpha < 2 pi");
  }
  if (max_index < 0) throw Error(Errc::InvalidArgument, "max_index must be >= 0");
  for (complex b : extra_zeros) {
    if (!(std::abs(b) < 1.0)) throw Error(Errc::InvalidArgument, "extra zeros must lie in the disk");
  }
  std::vector<BlaschkeZero> zeros;
  zeros.reserve(max_index);
  for (int j = 1; j <= max_index; ++j) {
    int k = 0;
    while ((2 << k) <= j) ++k;
    int i = j - (1 << k);
    double frac = (2.0 * i + 1.0) / static_cast<double>(2 << k);
    double log_t = -rule.jc(j);
    zeros.push_back({j, alpha + (beta - alpha) * frac, log_t, solve_radius(log_t).log_one_minus_r});
  }
  return {l, alpha, beta, std::move(rule), std::move(zeros), std::move(extra_zeros)};
}

std::vector<complex> BlaschkeSpec::extra_zero_generator(int count, double alpha, double beta) {
  std::vector<complex> out;
  double free = kTwoPi - (beta - alpha);
  for (int k = 1; k <= count; ++k) {
    double theta = beta + free * k / (count + 1.0);
    out.push_back(std::polar(1.0 - std::ldexp(1.0, -k), theta));
  }
  return out;
}

const BlaschkeZero& BlaschkeSpec::zero(int j) const {
  if (j < 1 || j > max_index()) throw Error(Errc::InvalidArgument, "zero index out of range");
  return zeros_[j - 1];
}

double BlaschkeSpec::blaschke_sum() const noexcept {
  double s = 0.0;
  for (const auto& a : zeros_) s += a.one_minus_r();
  for (complex b : extra_) s += 1.0 - std::abs(b);
  return s;
}

namespace {

// (|a|/a)(a - z)/(1 - conj(a) z) for a = (1 - s) e^{i theta}, written through
// zeta = z e^{-i theta} so that both the zero and the pole sit near zeta = 1.
LogComplex zero_factor(double theta, double s, complex z) {
  double rho = std::abs(z);
  double psi = std::arg(z) - theta;
  double half = std::sin(0.5 * psi);
  complex zeta = std::polar(rho, psi);
  complex one_minus_zeta{(1.0 - rho) + 2.0 * rho * half * half, -rho * std::sin(psi)};
  complex num = one_minus_zeta - s;
  if (num == complex{0.0, 0.0}) return LogComplex::zero();
  double r = 1.0 - s;
  if (rho <= 1.0) {
    complex den = one_minus_zeta + s * zeta;
    if (den == complex{0.0, 0.0}) throw Error(Errc::PoleHit, "z is a pole of B");
    return LogComplex::from_complex(num) / LogComplex::from_complex(den);
  }
  // (1/|a|)(a - z)/(1/conj(a) - z)
  complex den = one_minus_zeta + s / r;
  if (den == complex{0.0, 0.0}) throw Error(Errc::PoleHit, "z is a pole of B");
  return LogComplex::from_log(-std::log1p(-s)) * LogComplex::from_complex(num) /
         LogComplex::from_complex(den);
}

}  // namespace

LogComplex eval_blaschke(const BlaschkeSpec& spec, int N, complex z) {
  if (N < 0 || N > spec.max_index()) throw Error(Errc::InvalidArgument, "N outside 0..max_index");
  LogAccumulator acc;
  if (spec.l() > 0) {
    if (z == complex{0.0, 0.0}) return LogComplex::zero();
    acc.add(spec.l() * std::log(std::abs(z)), spec.l() * std::arg(z));
  }
  for (int j = 1; j <= N; ++j) {
    const BlaschkeZero& a = spec.zero(j);
    if (z == a.value()) return LogComplex::zero();
    acc.add(zero_factor(a.theta, a.one_minus_r(), z));
  }
  for (complex b : spec.extra_zeros()) {
    if (z == b) return LogComplex::zero();
    acc.add(zero_factor(std::arg(b), 1.0 - std::abs(b), z));
  }
  return acc.result();
}

bool blaschke_in_en(const BlaschkeSpec& spec, int N, complex z) {
  for (int j = std::max(N, 1); j <= spec.max_index(); ++j) {
    const BlaschkeZero& a = spec.zero(j);
    if (log_distance(z, a.pole()) < 0.5 * a.log_t) return false;
  }
  return true;
}

double blaschke_tail_bound(const BlaschkeSpec& spec, int N, complex z) {
  if (N < 0 || N > spec.max_index()) throw Error(Errc::InvalidArgument, "N outside 0..max_index");
  if (!blaschke_in_en(spec, N, z)) {
    throw Error(Errc::NotInEN, "z is closer to a pole than the E_N conditions allow");
  }
  double sum = 0.0;
  for (int j = N + 1; j <= spec.max_index(); ++j) {
    const BlaschkeZero& a = spec.zero(j);
    double log_r = std::log1p(-a.one_minus_r());
    sum += std::exp(a.log_t - log_distance(z, a.pole()) - log_r) +
           std::exp(a.log_one_minus_r - log_r);
  }
  return std::expm1(sum);
}

FineSets disk_fine_sets(const BlaschkeSpec& spec, int N) {
  if (N < 1 || N > spec.max_index()) {
    throw Error(Errc::InvalidArgument, "N must lie in 1..max_index");
  }
  auto tail = spec.c_rule().reciprocal_tail(spec.max_index());
  if (!tail) {
    throw Error(Errc::PreconditionFailure, "the c rule gives no tail bound past max_index");
  }
  FineSets out;
  out.N = N;
  out.tail = 2.0 * *tail;
  Shape arc = Shape::arc(spec.alpha(), spec.beta());
  out.J.shapes.push_back(arc);
  for (int j = N; j <= spec.max_index(); ++j) {
    const BlaschkeZero& a = spec.zero(j);
    AnchoredPoint p = a.pole();
    Shape disk = Shape::disk_log(p.anchor, p.offset, 0.5 * a.log_t);
    out.F.shapes.push_back(disk);
    out.J.shapes.push_back(disk);
  }
  out.bound = union_capacity_bound(out.F, out.tail);
  out.log_target = log_exact_capacity(arc);
  out.closes = out.bound.log_bound < out.log_target;
  return out;
}

FineSets close_disk_chain(const BlaschkeSpec& spec, int max_N) {
  int last = std::min(max_N, spec.max_index());
  for (int N = 1; N <= last; ++N) {
    FineSets sets = disk_fine_sets(spec, N);
    if (sets.closes) return sets;
  }
  throw Error(Errc::ChainNotClosed,
              "no N <= " + std::to_string(last) + " gives Cap F_N < Cap S");
}

ArcSample sample_arc_E(const BlaschkeSpec& spec, const FineWitness& witness, int samples) {
  ArcSample out;
  out.N = witness.sets.N;
  int m = std::max(samples, 1);
  for (int i = 0; i < m; ++i) {
    double theta = spec.alpha() + (spec.beta() - spec.alpha()) * (3.0 * i + 1.0) / (3.0 * m);
    complex z = std::polar(1.0, theta);
    ++out.candidates;
    if (!blaschke_in_en(spec, out.N, z)) {
      ++out.failed_en;
      continue;
    }
    double u = witness.u(z);
    if (!(u > 0.0)) {
      ++out.failed_u;
      continue;
    }
    out.points.push_back({theta, u});
  }
  if (out.points.empty()) {
    throw Error(Errc::EmptySample,
                "no arc point passed: " + std::to_string(out.candidates) + " candidates, " +
                    std::to_string(out.failed_en) + " outside E_N, " +
                    std::to_string(out.failed_u) + " with u <= 0");
  }
  return out;
}

Sheets fb_sheets(const BlaschkeSpec& spec, complex z, int N) {
  complex shifted = z + 2.0;
  if (shifted.imag() == 0.0 && shifted.real() <= 0.0) {
    throw Error(Errc::BranchAtCut, "z + 2 lies on the cut of the principal logarithm");
  }
  if (!(std::abs(z) < 2.0)) throw Error(Errc::DomainViolation, "f = Log(z + 2) lives on |z| < 2");
  Sheets out;
  out.b = eval_blaschke(spec, N, z);
  complex b = out.b.value();
  out.log_term = std::log(shifted);
  out.base = out.log_term * b;
  out.step = complex{0.0, kTwoPi} * b;
  return out;
}

}  // namespace finehull
