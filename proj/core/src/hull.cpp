#include "finehull/hull.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "finehull/error.hpp"
#include "finehull/parallel.hpp"
#include "finehull/product.hpp"

namespace finehull {

namespace {

void add_linear(LogAccumulator& acc, complex d) {
  if (d == complex{0.0, 0.0}) {
    acc.set_zero();
  } else {
    acc.add(LogComplex::from_complex(d));
  }
}

double log_sum_exp(const std::vector<double>& xs) {
  double top = kNegInf;
  for (double x : xs) top = std::max(top, x);
  if (top == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - top);
  return top + std::log(s);
}

}  // namespace

PolynomialPair polynomial_pair(const CantorSpec& spec, int n, complex z) {
  if (n < 0 || n > spec.max_index()) throw Error(Errc::InvalidArgument, "n outside 0..max_index");
  LogAccumulator p;
  LogAccumulator q;
  add_linear(p, z - spec.b0());
  add_linear(q, z - spec.a0());
  for (int i = 1; i <= n; ++i) {
    const GapInterval& g = spec.gap(i);
    complex zc = z - g.center;
    double h = g.half_length();
    add_linear(p, zc + h);
    add_linear(q, zc - h);
  }
  return {p.result(), q.result()};
}

double v_n(const CantorSpec& spec, int n, complex z, complex w) {
  PolynomialPair pq = polynomial_pair(spec, n, z);
  LogComplex wq = w == complex{0.0, 0.0} ? LogComplex::zero()
                                          : LogComplex::from_complex(w) * pq.Q;
  return (wq - pq.P).log_mag();
}

double log_floor(const CRule& rule, int n) { return -0.5 * rule.jc(n + 1); }

Deviation product_deviation(const CantorSpec& spec, int n, int m, complex z) {
  Deviation out;
  if (m > spec.max_index()) throw Error(Errc::InvalidArgument, "m exceeds max_index");
  if (n >= m) return out;
  std::vector<LogComplex> delta;
  std::vector<double> mags;
  for (int j = n + 1; j <= m; ++j) {
    const GapInterval& g = spec.gap(j);
    complex zb = (z - g.center) - g.half_length();
    if (zb == complex{0.0, 0.0}) throw Error(Errc::PoleHit, "z is the pole b_" + std::to_string(j));
    double log_mag = g.log_length - log_distance_to_pole(g, z);
    delta.emplace_back(log_mag, -std::arg(zb));
    mags.push_back(log_mag);
  }
  double log_s = log_sum_exp(mags);
  out.log_bound = log_s + std::exp(log_s);
  if (log_s < -18.0) {
    // First order: the product minus one is sum delta_j up to a relative S.
    LogComplex sum = LogComplex::zero();
    for (const auto& d : delta) sum = sum + d;
    out.log_value = sum.log_mag();
  } else {
    LogAccumulator acc;
    for (const auto& d : delta) acc.add(log1p_factor(d.value()));
    LogComplex l = acc.result();
    out.log_value = std::log(std::abs(l.minus_one()));
  }
  return out;
}

Deviation graph_distance(const CantorSpec& spec, int n, complex z) {
  double log_p = polynomial_pair(spec, n, z).P.log_mag();
  Deviation d = product_deviation(spec, n, spec.max_index(), z);
  return {log_p + d.log_value, log_p + d.log_bound};
}

WeightSet build_weights(const CRule& rule, int M, WeightMode mode) {
  if (M < 1) throw Error(Errc::InvalidArgument, "M must be >= 1");
  WeightSet out;
  out.mode = mode;
  for (int n = 1; n <= M; ++n) {
    double ratio = rule.jc(n + 1) / rule.jc(n);
    double e = mode == WeightMode::InverseSquare ? 1.0 / (static_cast<double>(n) * n)
                                                 : rule.jc(n);
    out.ratio.push_back(ratio);
    out.e.push_back(e);
    out.partial_sum += e;
    out.partial_weighted += e * ratio;
  }
  if (mode == WeightMode::InverseSquare) {
    out.sum_converges = true;
    out.weighted_floor_diverges = rule.ratio_grows_linearly();
    if (!out.weighted_floor_diverges) {
      throw Error(Errc::NoValidWeights,
                  "e_n = 1/n^2 leaves sum e_n (n+1)c_{n+1}/(n c_n) finite for this rule");
    }
  } else {
    out.sum_converges = false;
    out.weighted_floor_diverges = true;
  }
  return out;
}

double HullPotentialSpec::coefficient(int n) const {
  return weights.e.at(n - 1) / spec.c_rule().jc(n);
}

HullPotentialSpec make_hull_spec(CantorSpec spec, int M, WeightMode mode) {
  if (M < 1 || M > spec.max_index()) {
    throw Error(Errc::InvalidArgument, "M must lie in 1..max_index");
  }
  WeightSet weights = build_weights(spec.c_rule(), M, mode);
  return {std::move(spec), std::move(weights), M};
}

double eval_v(const HullPotentialSpec& hps, complex z, complex w) {
  double v = 0.0;
  for (int n = 1; n <= hps.M; ++n) {
    double term = std::max(v_n(hps.spec, n, z, w), log_floor(hps.spec.c_rule(), n));
    v += hps.coefficient(n) * term;
  }
  return v;
}

double eval_v_on_graph(const HullPotentialSpec& hps, complex z) {
  double v = 0.0;
  for (int n = 1; n <= hps.M; ++n) {
    double floor = log_floor(hps.spec.c_rule(), n);
    double term = floor;
    if (n < hps.M) {
      double log_p = polynomial_pair(hps.spec, n, z).P.log_mag();
      term = std::max(log_p + product_deviation(hps.spec, n, hps.M, z).log_value, floor);
    }
    v += hps.coefficient(n) * term;
  }
  return v;
}

complex HullGrid::w(int ix, int iy) const noexcept {
  double half = 0.5 * res;
  return {(ix + 0.5 - half) * cell_width() + 0.5 * (rect.x0 + rect.x1),
          (iy + 0.5 - half) * cell_height() + 0.5 * (rect.y0 + rect.y1)};
}

HullGrid fiber_scan(const HullPotentialSpec& hps, complex z, const WRect& rect, int res,
                    bool sq, int threads) {
  if (res < 2) throw Error(Errc::InvalidArgument, "res must be >= 2");
  if (!(rect.x0 < rect.x1) || !(rect.y0 < rect.y1)) {
    throw Error(Errc::InvalidArgument, "empty w rectangle");
  }
  HullGrid grid;
  grid.z = z;
  grid.rect = rect;
  grid.res = res;
  grid.sq = sq;
  std::size_t cells = static_cast<std::size_t>(res) * res;
  grid.values.assign(cells, 0.0);
  grid.clamped.assign(cells, 0);
  parallel_for(cells, threads, [&](std::size_t k) {
    complex w = grid.w(static_cast<int>(k % res), static_cast<int>(k / res));
    double v = eval_v(hps, z, sq ? w * w : w);
    if (!(v >= kSentinel)) {
      v = kSentinel;
      grid.clamped[k] = 1;
    }
    grid.values[k] = v;
  });

  std::vector<double> sorted = grid.values;
  std::nth_element(sorted.begin(), sorted.begin() + cells / 2, sorted.end());
  grid.median = sorted[cells / 2];

  std::vector<complex> roots;
  complex f = eval_partial_product(hps.spec, hps.M, z).value();
  if (sq) {
    roots = {std::sqrt(f), -std::sqrt(f)};
  } else {
    roots = {f};
  }
  double reach = 1.5 * std::max(grid.cell_width(), grid.cell_height());
  double on_graph = eval_v_on_graph(hps, z);

  auto at = [&](int ix, int iy) { return grid.values[static_cast<std::size_t>(iy) * res + ix]; };
  for (int iy = 0; iy < res; ++iy) {
    for (int ix = 0; ix < res; ++ix) {
      double v = at(ix, iy);
      bool minimum = true;
      for (int dy = -1; dy <= 1 && minimum; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          int jx = ix + dx;
          int jy = iy + dy;
          if ((dx == 0 && dy == 0) || jx < 0 || jy < 0 || jx >= res || jy >= res) continue;
          double u = at(jx, jy);
          bool earlier = jy < iy || (jy == iy && jx < ix);
          if (!(v < u || (v == u && !earlier))) {
            minimum = false;
            break;
          }
        }
      }
      if (!minimum) continue;
      Dip dip{grid.w(ix, iy), v, 0.0, false};
      double best = reach;
      for (complex r : roots) {
        double d = std::abs(r - dip.w);
        if (d <= best) {
          best = d;
          dip.w = r;
          dip.value = on_graph;
          dip.polished = true;
        }
      }
      dip.depth = grid.median - dip.value;
      if (!(dip.depth > kDipThreshold)) continue;
      bool seen = dip.polished && std::any_of(grid.dips.begin(), grid.dips.end(),
                                              [&](const Dip& d) { return d.polished && d.w == dip.w; });
      if (!seen) grid.dips.push_back(dip);
    }
  }
  return grid;
}

}  // namespace finehull
