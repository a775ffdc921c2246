#include "finehull/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finehull/error.hpp"

namespace finehull {

double log_distance(const AnchoredPoint& p, const AnchoredPoint& q) noexcept {
  complex d = p.anchor == q.anchor ? p.offset - q.offset
                                   : (p.anchor - q.anchor) + (p.offset - q.offset);
  if (d == complex{0.0, 0.0}) return kNegInf;
  return std::log(std::abs(d));
}

double log_distance(complex z, const AnchoredPoint& p) noexcept {
  complex d = (z - p.anchor) - p.offset;
  if (d == complex{0.0, 0.0}) return kNegInf;
  return std::log(std::abs(d));
}

namespace {

// Angle position of phi inside the arc [t1, t2], as an offset in [0, 2 pi).
double arc_offset(double phi, double t1) noexcept {
  double d = std::fmod(phi - t1, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d;
}

bool on_arc(double phi, double t1, double t2) noexcept {
  return arc_offset(phi, t1) <= t2 - t1;
}

}  // namespace

Shape Shape::interval(double lo, double hi) {
  if (!(lo < hi)) throw Error(Errc::InvalidArgument, "interval needs lo < hi");
  Shape s;
  s.kind_ = Kind::Interval;
  s.center_ = {{0.5 * (lo + hi), 0.0}, {}};
  s.log_size_ = std::log(hi - lo);
  return s;
}

Shape Shape::interval_log(double center, double log_length) {
  Shape s;
  s.kind_ = Kind::Interval;
  s.center_ = {{center, 0.0}, {}};
  s.log_size_ = log_length;
  return s;
}

Shape Shape::disk(complex center, double radius) {
  if (!(radius > 0.0)) throw Error(Errc::InvalidArgument, "disk radius must be positive");
  return disk_log(center, {}, std::log(radius));
}

Shape Shape::disk_log(complex anchor, complex offset, double log_radius) {
  Shape s;
  s.kind_ = Kind::Disk;
  s.center_ = {anchor, offset};
  s.log_size_ = log_radius;
  return s;
}

Shape Shape::arc(double theta1, double theta2) {
  if (!(theta1 < theta2) || !(theta2 < theta1 + kTwoPi)) {
    throw Error(Errc::InvalidArgument, "arc needs theta1 < theta2 < theta1 + 2 pi");
  }
  Shape s;
  s.kind_ = Kind::Arc;
  s.theta1_ = theta1;
  s.theta2_ = theta2;
  s.center_ = {{}, std::polar(1.0, 0.5 * (theta1 + theta2))};
  s.log_size_ = std::log(theta2 - theta1);
  return s;
}

double Shape::lo() const noexcept {
  return center_.anchor.real() - std::exp(log_size_ - kLog2);
}

double Shape::hi() const noexcept {
  return center_.anchor.real() + std::exp(log_size_ - kLog2);
}

bool Shape::subresolution(double resolution) const noexcept {
  return log_size_ < std::log(resolution);
}

double Shape::log_blob_radius() const noexcept {
  switch (kind_) {
    case Kind::Interval:
    case Kind::Arc:
      return log_size_ - kLog2;
    case Kind::Disk:
      return log_size_;
  }
  return log_size_;
}

std::vector<AnchoredPoint> Shape::mesh(int count) const {
  std::vector<AnchoredPoint> out;
  if (count < 2) count = 2;
  out.reserve(count);
  switch (kind_) {
    case Kind::Interval: {
      double h = std::exp(log_size_ - kLog2);
      for (int k = 0; k < count; ++k) {
        out.push_back({center_.anchor, {h * std::cos(kPi * k / (count - 1)), 0.0}});
      }
      break;
    }
    case Kind::Disk: {
      double r = std::exp(log_size_);
      for (int k = 0; k < count; ++k) {
        out.push_back({center_.anchor, center_.offset + std::polar(r, kTwoPi * k / count)});
      }
      break;
    }
    case Kind::Arc: {
      for (int k = 0; k < count; ++k) {
        double t = 0.5 * (1.0 - std::cos(kPi * k / (count - 1)));
        out.push_back({{}, std::polar(1.0, theta1_ + (theta2_ - theta1_) * t)});
      }
      break;
    }
  }
  return out;
}

std::vector<AnchoredPoint> Shape::mesh_midpoints(int count) const {
  std::vector<AnchoredPoint> out;
  if (count < 2) count = 2;
  switch (kind_) {
    case Kind::Interval: {
      double h = std::exp(log_size_ - kLog2);
      for (int k = 0; k + 1 < count; ++k) {
        out.push_back({center_.anchor, {h * std::cos(kPi * (k + 0.5) / (count - 1)), 0.0}});
      }
      break;
    }
    case Kind::Disk: {
      double r = std::exp(log_size_);
      for (int k = 0; k < count; ++k) {
        out.push_back(
            {center_.anchor, center_.offset + std::polar(r, kTwoPi * (k + 0.5) / count)});
      }
      break;
    }
    case Kind::Arc: {
      for (int k = 0; k + 1 < count; ++k) {
        double t = 0.5 * (1.0 - std::cos(kPi * (k + 0.5) / (count - 1)));
        out.push_back({{}, std::polar(1.0, theta1_ + (theta2_ - theta1_) * t)});
      }
      break;
    }
  }
  return out;
}

double Shape::distance_from(complex p) const noexcept {
  switch (kind_) {
    case Kind::Interval: {
      double a = lo();
      double b = hi();
      double dx = p.real() < a ? a - p.real() : (p.real() > b ? p.real() - b : 0.0);
      return std::hypot(dx, p.imag());
    }
    case Kind::Disk: {
      double d = std::abs((p - center_.anchor) - center_.offset) - std::exp(log_size_);
      return std::max(d, 0.0);
    }
    case Kind::Arc: {
      double r = std::abs(p);
      if (r > 0.0 && on_arc(std::arg(p), theta1_, theta2_)) return std::abs(r - 1.0);
      return std::min(std::abs(p - std::polar(1.0, theta1_)),
                      std::abs(p - std::polar(1.0, theta2_)));
    }
  }
  return 0.0;
}

double Shape::farthest_from(complex p) const noexcept {
  switch (kind_) {
    case Kind::Interval:
      return std::max(std::abs(p - lo()), std::abs(p - hi()));
    case Kind::Disk:
      return std::abs((p - center_.anchor) - center_.offset) + std::exp(log_size_);
    case Kind::Arc: {
      double d = std::max(std::abs(p - std::polar(1.0, theta1_)),
                          std::abs(p - std::polar(1.0, theta2_)));
      double r = std::abs(p);
      double away = r > 0.0 ? std::arg(p) + kPi : theta1_;
      if (on_arc(away, theta1_, theta2_)) d = std::max(d, 1.0 + r);
      return d;
    }
  }
  return 0.0;
}

double farthest_distance(const Shape& s, const Shape& t) noexcept {
  using K = Shape::Kind;
  if (s.kind() == K::Disk) {
    return t.farthest_from(s.center().value()) + std::exp(s.log_size());
  }
  if (t.kind() == K::Disk) return farthest_distance(t, s);
  if (s.kind() == K::Interval) {
    return std::max(t.farthest_from({s.lo(), 0.0}), t.farthest_from({s.hi(), 0.0}));
  }
  if (t.kind() == K::Interval) return farthest_distance(t, s);
  // Two arcs: endpoints of either arc against the other arc covers antipodal pairs.
  double d = std::max(t.farthest_from(std::polar(1.0, s.theta1())),
                      t.farthest_from(std::polar(1.0, s.theta2())));
  d = std::max(d, s.farthest_from(std::polar(1.0, t.theta1())));
  d = std::max(d, s.farthest_from(std::polar(1.0, t.theta2())));
  return d;
}

double diameter_bound(const CompactUnion& set) noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < set.shapes.size(); ++i) {
    for (std::size_t j = i; j < set.shapes.size(); ++j) {
      d = std::max(d, farthest_distance(set.shapes[i], set.shapes[j]));
    }
  }
  return d;
}

double distance_from(const CompactUnion& set, complex p) noexcept {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : set.shapes) d = std::min(d, s.distance_from(p));
  return d;
}

}  // namespace finehull
