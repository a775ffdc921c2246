#pragma once

#include <optional>
#include <vector>

namespace finehull {

/// Closed-form family for the increasing sequence c_j that fixes the gap
/// lengths b_j - a_j = exp(-j c_j).
///
///   Affine      c_j = slope * j + intercept
///   Polynomial  c_j = coef * j^power
///   Factorial   c_j = (j + shift)!
///   Explicit    c_1..c_K listed; no tail information
class CRule {
 public:
  enum class Kind { Affine, Polynomial, Factorial, Explicit };

  static CRule affine(double slope, double intercept = 0.0);
  static CRule polynomial(double coef, double power);
  static CRule factorial(int shift = 2);
  static CRule explicit_values(std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  double slope() const noexcept { return a_; }
  double intercept() const noexcept { return b_; }
  double coef() const noexcept { return a_; }
  double power() const noexcept { return b_; }
  int shift() const noexcept { return shift_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// c_j for j >= 1. Throws InvalidArgument past an explicit prefix.
  double c(int j) const;
  /// j * c_j, the negated log of the j-th gap length.
  double jc(int j) const { return j * c(j); }

  /// Upper bound on sum_{j > J} 1/(j c_j), or nullopt when the rule admits none.
  std::optional<double> reciprocal_tail(int J) const;

  /// Whether (j+1) c_{j+1} / (j c_j) >= kappa * j eventually for some kappa > 0.
  /// This is the growth that lets sum e_n finite coexist with a divergent
  /// weighted floor series for e_n = 1/n^2.
  bool ratio_grows_linearly() const noexcept { return kind_ == Kind::Factorial; }

  friend bool operator==(const CRule&, const CRule&) = default;

 private:
  CRule(Kind kind, double a, double b, int shift, std::vector<double> values);

  Kind kind_ = Kind::Affine;
  double a_ = 0.0;
  double b_ = 0.0;
  int shift_ = 0;
  std::vector<double> values_;
};

}  // namespace finehull
