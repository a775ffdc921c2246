#pragma once

#include <cstdint>
#include <vector>

#include "finehull/cantor.hpp"
#include "finehull/log_complex.hpp"

namespace finehull {

/// P_n and Q_n, the monic numerator and denominator of f_n = P_n / Q_n.
struct PolynomialPair {
  LogComplex P;
  LogComplex Q;
};
PolynomialPair polynomial_pair(const CantorSpec& spec, int n, complex z);

/// log |w Q_n(z) - P_n(z)|, i.e. log(|w - f_n(z)| |Q_n(z)|) without the poles.
double v_n(const CantorSpec& spec, int n, complex z, complex w);

/// log p_{n+1} = -(n+1) c_{n+1} / 2.
double log_floor(const CRule& rule, int n);

/// Logarithm of |prod_{j=n+1}^{m} (1 + delta_j) - 1| with
/// delta_j = (b_j - a_j)/(z - b_j), evaluated in log space, and the certified
/// upper bound log S + S where S = sum |delta_j|.
struct Deviation {
  double log_value = kNegInf;
  double log_bound = kNegInf;
};
Deviation product_deviation(const CantorSpec& spec, int n, int m, complex z);

/// log(|f - f_n| |Q_n|) at z, f the product over all materialised gaps:
/// log|P_n| plus the deviation of the remaining factors.
Deviation graph_distance(const CantorSpec& spec, int n, complex z);

enum class WeightMode {
  /// e_n = 1/n^2; the series conditions hold when (n+1)c_{n+1}/(n c_n) grows linearly.
  InverseSquare,
  /// e_n = n c_n: each floored term enters with coefficient 1. Uncertified.
  UnitCoefficient,
};

struct WeightSet {
  WeightMode mode = WeightMode::InverseSquare;
  std::vector<double> e;                     // e_1..e_M
  std::vector<double> ratio;                 // (n+1) c_{n+1} / (n c_n)
  bool sum_converges = false;                // sum e_n finite
  bool weighted_floor_diverges = false;      // sum e_n ratio_n infinite
  double partial_sum = 0.0;
  double partial_weighted = 0.0;
};

/// Throws NoValidWeights in InverseSquare mode when the rule cannot make
/// sum e_n finite while sum e_n ratio_n diverges.
WeightSet build_weights(const CRule& rule, int M, WeightMode mode = WeightMode::InverseSquare);

struct HullPotentialSpec {
  CantorSpec spec;
  WeightSet weights;
  int M = 0;

  /// Coefficient e_n / (n c_n) of the n-th floored term.
  double coefficient(int n) const;
};

/// M must not exceed max_index.
HullPotentialSpec make_hull_spec(CantorSpec spec, int M,
                                 WeightMode mode = WeightMode::InverseSquare);

/// sum_{n<=M} e_n / (n c_n) max{v_n(z,w), log p_{n+1}}.
double eval_v(const HullPotentialSpec& hps, complex z, complex w);

/// eval_v at w = f_M(z) evaluated symbolically: each v_n is log|P_n| plus the
/// log deviation of factors n+1..M, and the n = M term sits on its floor.
double eval_v_on_graph(const HullPotentialSpec& hps, complex z);

struct WRect {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;
};

struct Dip {
  complex w;
  double value = 0.0;
  double depth = 0.0;
  bool polished = false;  // moved onto an analytic root of w Q_M - P_M
};

inline constexpr double kSentinel = -1e6;
inline constexpr double kDipThreshold = 20.0;

struct HullGrid {
  complex z;
  WRect rect;
  int res = 0;
  bool sq = false;
  std::vector<double> values;          // row-major, index iy * res + ix
  std::vector<std::uint8_t> clamped;   // value fell below the sentinel
  double median = 0.0;
  std::vector<Dip> dips;

  double cell_width() const noexcept { return (rect.x1 - rect.x0) / res; }
  double cell_height() const noexcept { return (rect.y1 - rect.y0) / res; }
  complex w(int ix, int iy) const noexcept;
};

/// Samples v(z, w) (or v(z, w^2) with sq) over cell centres of the rectangle
/// and keeps the strict local minima more than kDipThreshold below the median.
HullGrid fiber_scan(const HullPotentialSpec& hps, complex z, const WRect& rect, int res,
                    bool sq, int threads = 1);

}  // namespace finehull
