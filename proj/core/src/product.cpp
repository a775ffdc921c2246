#include "finehull/product.hpp"

#include <cmath>
#include <string>

#include "finehull/error.hpp"

namespace finehull {

namespace {

constexpr double kLogQuarter = -2.0 * kLog2;

int checked_depth(const CantorSpec& spec, int N) {
  if (N < 0 || N > spec.max_index()) {
    throw Error(Errc::InvalidArgument, "depth " + std::to_string(N) +
                                           " outside 0.." + std::to_string(spec.max_index()));
  }
  return N;
}

complex normalise(complex z) noexcept {
  return {z.real(), z.imag() == 0.0 ? 0.0 : z.imag()};
}

}  // namespace

LogComplex product_factor(const CantorSpec& spec, int i, complex z) {
  z = normalise(z);
  if (i == 0) {
    complex den = z - spec.a0();
    if (den == complex{0.0, 0.0}) throw Error(Errc::PoleHit, "z hits the pole a0");
    double len = spec.b0() - spec.a0();
    if (std::abs(den) > 4.0 * len) return log1p_factor(-len / den);
    return LogComplex::from_complex(z - spec.b0()) / LogComplex::from_complex(den);
  }
  const GapInterval& g = spec.gap(i);
  complex zc = z - g.center;
  if (zc == complex{0.0, 0.0}) return {0.0, kPi};  // (h)/(-h)
  double h = g.half_length();
  if (g.log_length - std::log(std::abs(zc)) < kLogQuarter) {
    // 1 + (b_i - a_i)/(z - b_i), the deviation kept in log space.
    complex zb = zc - h;
    double log_delta = g.log_length - std::log(std::abs(zb));
    return log1p_factor(std::polar(std::exp(log_delta), -std::arg(zb)));
  }
  complex den = zc - h;
  if (den == complex{0.0, 0.0}) {
    throw Error(Errc::PoleHit, "z hits the pole b_" + std::to_string(i));
  }
  return LogComplex::from_complex(zc + h) / LogComplex::from_complex(den);
}

LogComplex eval_partial_product(const CantorSpec& spec, int N, complex z) {
  checked_depth(spec, N);
  LogAccumulator acc;
  for (int i = 0; i <= N; ++i) acc.add(product_factor(spec, i, z));
  return acc.result();
}

double product_tail_from_sum(double s) noexcept { return std::expm1(s); }

TailBound tail_bound(const CantorSpec& spec, int N, const Region& region) {
  checked_depth(spec, N);
  TailBound out;
  for (int n = N + 1; n <= spec.max_index(); ++n) {
    const GapInterval& g = spec.gap(n);
    double log_d = std::visit(
        [&](const auto& r) -> double {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, complex>) {
            return log_distance_to_pole(g, r);
          } else {
            return std::log(distance_from(r, {g.b(), 0.0}));
          }
        },
        region);
    double log_p = 0.5 * g.log_length;
    if (!(g.log_length <= log_p + log_d)) {
      throw Error(Errc::RegionViolatesEN,
                  "region too close to b_" + std::to_string(n) + " for the p_n condition");
    }
    out.sum_q += std::exp(g.log_length - log_d);
    out.sum_p += std::exp(log_p);
  }
  out.bound = product_tail_from_sum(out.sum_q);
  out.bound_p = product_tail_from_sum(out.sum_p);
  return out;
}

EvalResult eval_f(const CantorSpec& spec, complex z, double tol, int max_depth) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tol must be positive");
  if (max_depth < 0) max_depth = spec.max_index();
  checked_depth(spec, max_depth);
  for (int N = 0; N <= max_depth; ++N) {
    TailBound tb;
    try {
      tb = tail_bound(spec, N, z);
    } catch (const Error& e) {
      if (e.code() == Errc::RegionViolatesEN) continue;
      throw;
    }
    if (tb.bound < tol) return {eval_partial_product(spec, N, z), tb.bound, N};
  }
  throw Error(Errc::NoConvergence, "tail bound stays above tol up to depth " +
                                       std::to_string(max_depth));
}

LogComplex sqrt_branch(const CantorSpec& spec, int N, complex z, BranchTag tag) {
  checked_depth(spec, N);
  z = normalise(z);
  bool h_family = tag == BranchTag::HPlus || tag == BranchTag::HMinus;
  if (h_family) {
    if (z.imag() == 0.0) {
      throw Error(Errc::DomainViolation, "half-plane branches need Im z != 0");
    }
  } else if (z.imag() == 0.0 && z.real() >= spec.a0() && z.real() <= spec.b0() &&
             spec.open_gap_containing(z.real(), N) == 0) {
    throw Error(Errc::DomainViolation, "z lies on the cut [a0,b0] outside the open gaps");
  }
  // Each factor maps the complement of its segment into C \ (-inf, 0], so the
  // product of principal roots is the branch normalised to +1 at infinity.
  LogAccumulator acc;
  for (int i = 0; i <= N; ++i) acc.add_unwrapped(product_factor(spec, i, z), 0.5);
  LogComplex d_plus = acc.result();
  switch (tag) {
    case BranchTag::DPlus: return d_plus;
    case BranchTag::DMinus: return -d_plus;
    case BranchTag::HPlus: return z.imag() > 0.0 ? d_plus : -d_plus;
    case BranchTag::HMinus: return z.imag() > 0.0 ? -d_plus : d_plus;
  }
  return d_plus;
}

LaurentC1 laurent_c1(const CantorSpec& spec, int N, double tol, int nodes) {
  checked_depth(spec, N);
  LaurentC1 out;
  double s = -(spec.b0() - spec.a0());
  for (int j = 1; j <= N; ++j) s += spec.gap(j).length();
  out.formula = s;

  out.radius = 2.0 * (std::abs(spec.a0()) + std::abs(spec.b0())) + 2.0;
  out.nodes = nodes;
  complex acc{0.0, 0.0};
  for (int k = 0; k < nodes; ++k) {
    complex z = std::polar(out.radius, kTwoPi * k / nodes);
    acc += eval_partial_product(spec, N, z).minus_one() * z;
  }
  out.contour = (acc / static_cast<double>(nodes)).real();
  if (!(std::abs(out.contour - out.formula) <= tol)) {
    throw Error(Errc::QuadratureFailure, "contour and formula values of c_1 disagree");
  }
  return out;
}

namespace {

// b^k - a^k = (b - a) sum_{i<k} b^i a^{k-1-i}
double power_difference(double a, double b, double len, int k) {
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += std::pow(b, i) * std::pow(a, k - 1 - i);
  return len * s;
}

}  // namespace

double log_derivative_coeff(const CantorSpec& spec, int k, int N) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be >= 1");
  checked_depth(spec, N);
  double out = power_difference(spec.a0(), spec.b0(), spec.b0() - spec.a0(), k);
  for (int j = 1; j <= N; ++j) {
    const GapInterval& g = spec.gap(j);
    out -= power_difference(g.a(), g.b(), g.length(), k);
  }
  return out;
}

complex log_derivative(const CantorSpec& spec, int N, complex z) {
  checked_depth(spec, N);
  complex out = 1.0 / (z - spec.b0()) - 1.0 / (z - spec.a0());
  for (int j = 1; j <= N; ++j) {
    const GapInterval& g = spec.gap(j);
    complex zc = z - g.center;
    double h = g.half_length();
    out -= g.length() / ((zc + h) * (zc - h));
  }
  return out;
}

bool satisfies_en(const CantorSpec& spec, double x, int N) {
  if (!(x > spec.a0() && x < spec.b0())) return false;
  if (spec.in_closed_gap(x, spec.max_index())) return false;
  for (int n = std::max(N, 1); n <= spec.max_index(); ++n) {
    const GapInterval& g = spec.gap(n);
    if (log_distance_to_pole(g, {x, 0.0}) < 0.5 * g.log_length) return false;
  }
  return true;
}

FineValue fine_boundary_value(const CantorSpec& spec, double x, BranchTag tag, double tol,
                              int N) {
  if (tag != BranchTag::HPlus && tag != BranchTag::HMinus) {
    throw Error(Errc::DomainViolation, "fine boundary values exist for the H-family only");
  }
  if (!satisfies_en(spec, x, N)) {
    throw Error(Errc::NotInEN, "x fails the E_N conditions");
  }
  EvalResult f = eval_f(spec, {x, 0.0}, tol);
  LogAccumulator acc;
  for (int i = 0; i <= f.depth; ++i) acc.add_unwrapped(product_factor(spec, i, {x, 0.0}), 0.5);
  LogComplex g = acc.result();  // i sqrt|f(x)|: the limit from the upper half-plane
  return {tag == BranchTag::HPlus ? g : -g, f.err, f.depth};
}

}  // namespace finehull
