#include "finehull/c_rule.hpp"

#include <cmath>
#include <string>

#include "finehull/error.hpp"

namespace finehull {

CRule::CRule(Kind kind, double a, double b, int shift, std::vector<double> values)
    : kind_(kind), a_(a), b_(b), shift_(shift), values_(std::move(values)) {}

CRule CRule::affine(double slope, double intercept) {
  if (!(slope > 0.0) || !(slope + intercept > 0.0)) {
    throw Error(Errc::InvalidArgument, "affine c-rule needs slope > 0 and c_1 > 0");
  }
  return {Kind::Affine, slope, intercept, 0, {}};
}

CRule CRule::polynomial(double coef, double power) {
  if (!(coef > 0.0) || !(power > 0.0)) {
    throw Error(Errc::InvalidArgument, "polynomial c-rule needs coef > 0 and power > 0");
  }
  return {Kind::Polynomial, coef, power, 0, {}};
}

CRule CRule::factorial(int shift) {
  if (shift < 0) throw Error(Errc::InvalidArgument, "factorial c-rule needs shift >= 0");
  return {Kind::Factorial, 0.0, 0.0, shift, {}};
}

CRule CRule::explicit_values(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || (i > 0 && !(values[i] > values[i - 1]))) {
      throw Error(Errc::InvalidArgument, "explicit c-rule must be positive and strictly increasing");
    }
  }
  return {Kind::Explicit, 0.0, 0.0, 0, std::move(values)};
}

double CRule::c(int j) const {
  if (j < 1) throw Error(Errc::InvalidArgument, "c_j is defined for j >= 1");
  switch (kind_) {
    case Kind::Affine:
      return a_ * j + b_;
    case Kind::Polynomial:
      return a_ * std::pow(static_cast<double>(j), b_);
    case Kind::Factorial:
      return std::tgamma(static_cast<double>(j + shift_) + 1.0);
    case Kind::Explicit:
      if (static_cast<std::size_t>(j) > values_.size()) {
        throw Error(Errc::InvalidArgument,
                    "explicit c-rule has no value for j = " + std::to_string(j));
      }
      return values_[j - 1];
  }
  return 0.0;
}

std::optional<double> CRule::reciprocal_tail(int J) const {
  if (J < 0) J = 0;
  double Jd = J;
  switch (kind_) {
    case Kind::Affine: {
      // For j > J: s j + t >= k j with k = s + min(t, 0)/(J+1) > 0, then
      // sum_{j>J} 1/(k j^2) <= 1/(k J). J = 0 keeps the first term exact.
      double k = b_ >= 0.0 ? a_ : a_ + b_ / (Jd + 1.0);
      if (J == 0) return 1.0 / (a_ + b_) + 1.0 / (b_ >= 0.0 ? a_ : a_ + b_);
      return 1.0 / (k * Jd);
    }
    case Kind::Polynomial: {
      // 1/(coef j^{p+1}); integral comparison from J.
      if (J == 0) return 1.0 / a_ + 1.0 / (a_ * b_);
      return 1.0 / (a_ * b_ * std::pow(Jd, b_));
    }
    case Kind::Factorial: {
      // sum_{j>J} 1/(j (j+s)!) <= (1/(J+1)) * 2/(J+1+s)!
      double f = std::tgamma(Jd + 1.0 + shift_ + 1.0);
      return 2.0 / ((Jd + 1.0) * f);
    }
    case Kind::Explicit:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace finehull
