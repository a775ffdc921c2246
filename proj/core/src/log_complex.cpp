#include "finehull/log_complex.hpp"

#include <cmath>

#include "finehull/error.hpp"

namespace finehull {

double wrap_angle(double theta) noexcept {
  if (theta > -kPi && theta <= kPi) return theta;
  double r = std::remainder(theta, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r = kPi;
  return r;
}

LogComplex::LogComplex(double log_mag, double arg)
    : log_mag_(log_mag), arg_(log_mag == kNegInf ? 0.0 : wrap_angle(arg)) {}

LogComplex LogComplex::zero() noexcept { return {kNegInf, 0.0}; }

LogComplex LogComplex::from_complex(complex z) noexcept {
  if (z == complex{0.0, 0.0}) return zero();
  // Normalise -0 imaginary parts so the negative real axis maps to +pi.
  double im = z.imag() == 0.0 ? 0.0 : z.imag();
  return {std::log(std::hypot(z.real(), im)), std::atan2(im, z.real())};
}

complex LogComplex::value() const noexcept {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag_), arg_);
}

complex LogComplex::minus_one() const noexcept {
  if (is_zero()) return {-1.0, 0.0};
  // e^x e^{iy} - 1 = expm1(x) cos y - 2 sin^2(y/2) + i e^x sin y
  double s = std::sin(0.5 * arg_);
  double re = std::expm1(log_mag_) * std::cos(arg_) - 2.0 * s * s;
  double im = std::exp(log_mag_) * std::sin(arg_);
  return {re, im};
}

LogComplex LogComplex::conj() const noexcept {
  return is_zero() ? zero() : LogComplex{log_mag_, arg_ == kPi ? kPi : -arg_};
}

LogComplex LogComplex::sqrt() const noexcept {
  if (is_zero()) return zero();
  LogComplex r;
  r.log_mag_ = 0.5 * log_mag_;
  r.arg_ = 0.5 * arg_;
  return r;
}

LogComplex LogComplex::operator-() const noexcept {
  if (is_zero()) return zero();
  return {log_mag_, arg_ + kPi};
}

LogComplex& LogComplex::operator*=(const LogComplex& rhs) noexcept {
  if (is_zero() || rhs.is_zero()) {
    *this = zero();
    return *this;
  }
  log_mag_ += rhs.log_mag_;
  arg_ = wrap_angle(arg_ + rhs.arg_);
  return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& rhs) {
  if (rhs.is_zero()) throw Error(Errc::PoleHit, "division by a zero LogComplex");
  if (is_zero()) return *this;
  log_mag_ -= rhs.log_mag_;
  arg_ = wrap_angle(arg_ - rhs.arg_);
  return *this;
}

LogComplex log1p_factor(complex d) noexcept {
  // |1 + d|^2 = 1 + 2 Re d + |d|^2
  double t = 2.0 * d.real() + std::norm(d);
  if (t <= -1.0) return LogComplex::from_complex(complex{1.0, 0.0} + d);
  return {0.5 * std::log1p(t), std::atan2(d.imag(), 1.0 + d.real())};
}

namespace {

LogComplex combine(const LogComplex& a, const LogComplex& b, double sign) noexcept {
  if (b.is_zero()) return a;
  if (a.is_zero()) return sign > 0 ? b : -b;
  // a + s b = head (1 + rho) with |rho| <= 1
  bool swap = b.log_mag() > a.log_mag();
  const LogComplex& big = swap ? b : a;
  const LogComplex& small = swap ? a : b;
  LogComplex head = swap && sign < 0 ? -b : big;
  complex rho = sign * std::polar(std::exp(small.log_mag() - big.log_mag()),
                                  small.arg() - big.arg());
  if (rho == complex{-1.0, 0.0}) return LogComplex::zero();
  return head * log1p_factor(rho);
}

}  // namespace

LogComplex operator+(const LogComplex& a, const LogComplex& b) noexcept {
  return combine(a, b, 1.0);
}

LogComplex operator-(const LogComplex& a, const LogComplex& b) noexcept {
  return combine(a, b, -1.0);
}

void LogAccumulator::Neumaier::add(double x) noexcept {
  double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

void LogAccumulator::add(double log_mag, double arg) noexcept {
  if (log_mag == kNegInf) {
    zero_ = true;
    return;
  }
  mag_.add(log_mag);
  arg_.add(arg);
}

void LogAccumulator::add_unwrapped(const LogComplex& factor, double scale) noexcept {
  if (factor.is_zero()) {
    zero_ = true;
    return;
  }
  mag_.add(scale * factor.log_mag());
  arg_.add(scale * factor.arg());
}

LogComplex LogAccumulator::result() const noexcept {
  if (zero_) return LogComplex::zero();
  return {mag_.value(), arg_.value()};
}

}  // namespace finehull
