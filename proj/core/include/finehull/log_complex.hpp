#pragma once

#include <complex>
#include <limits>

namespace finehull {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kLog2 = 0.69314718055994530942;
inline constexpr double kLog4 = 2.0 * kLog2;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Reduces an angle to (-pi, pi].
double wrap_angle(double theta) noexcept;

/// A complex number held as (log|z|, arg z). Zero is log_mag = -inf, arg = 0.
///
/// Products of many factors that each differ from 1 by far less than a double
/// ulp are accumulated here without ever forming the factors' moduli.
class LogComplex {
 public:
  constexpr LogComplex() = default;  // the value 1
  LogComplex(double log_mag, double arg);

  static LogComplex zero() noexcept;
  static LogComplex from_complex(complex z) noexcept;
  /// Positive real number exp(log_mag).
  static LogComplex from_log(double log_mag) noexcept { return {log_mag, 0.0}; }

  double log_mag() const noexcept { return log_mag_; }
  double arg() const noexcept { return arg_; }
  bool is_zero() const noexcept { return log_mag_ == kNegInf; }

  /// exp(log_mag + i arg); may overflow or underflow.
  complex value() const noexcept;
  /// value() - 1 without cancellation when the value is close to 1.
  complex minus_one() const noexcept;

  LogComplex conj() const noexcept;
  /// Principal square root: arg halves into (-pi/2, pi/2].
  LogComplex sqrt() const noexcept;
  LogComplex operator-() const noexcept;

  LogComplex& operator*=(const LogComplex& rhs) noexcept;
  /// Throws Error(PoleHit) when rhs is zero.
  LogComplex& operator/=(const LogComplex& rhs);

  friend LogComplex operator*(LogComplex lhs, const LogComplex& rhs) noexcept {
    return lhs *= rhs;
  }
  friend LogComplex operator/(LogComplex lhs, const LogComplex& rhs) {
    return lhs /= rhs;
  }
  /// Sum and difference evaluated as A (1 +- B/A) with |B| <= |A|.
  friend LogComplex operator+(const LogComplex& a, const LogComplex& b) noexcept;
  friend LogComplex operator-(const LogComplex& a, const LogComplex& b) noexcept;

  friend bool operator==(const LogComplex&, const LogComplex&) = default;

 private:
  double log_mag_ = 0.0;
  double arg_ = 0.0;
};

/// log(1 + d) for complex d, accurate for tiny |d|.
LogComplex log1p_factor(complex d) noexcept;

/// Compensated (Neumaier) accumulation of log-magnitudes and arguments.
class LogAccumulator {
 public:
  void add(double log_mag, double arg) noexcept;
  void add(const LogComplex& factor) noexcept { add_unwrapped(factor, 1.0); }
  /// Adds scale * (log_mag, arg) of the factor; scale = 0.5 builds principal-root products.
  void add_unwrapped(const LogComplex& factor, double scale) noexcept;
  void set_zero() noexcept { zero_ = true; }

  LogComplex result() const noexcept;

 private:
  struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) noexcept;
    double value() const noexcept { return sum + comp; }
  };
  Neumaier mag_;
  Neumaier arg_;
  bool zero_ = false;
};

}  // namespace finehull
