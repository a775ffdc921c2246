#pragma once

#include <vector>

#include "finehull/log_complex.hpp"

namespace finehull {

/// A point stored as anchor + offset. Distances between points sharing an
/// anchor use the offsets only, so sets far below the scale of their position
/// keep their internal geometry.
struct AnchoredPoint {
  complex anchor{};
  complex offset{};

  complex value() const noexcept { return anchor + offset; }
};

double log_distance(const AnchoredPoint& p, const AnchoredPoint& q) noexcept;
double log_distance(complex z, const AnchoredPoint& p) noexcept;

/// Shapes of the compact sets in the fine-neighbourhood constructions:
/// real intervals, closed disks and arcs of the unit circle. Interval lengths
/// and disk radii are stored as logarithms.
class Shape {
 public:
  enum class Kind { Interval, Disk, Arc };

  static Shape interval(double lo, double hi);
  static Shape interval_log(double center, double log_length);
  static Shape disk(complex center, double radius);
  static Shape disk_log(complex anchor, complex offset, double log_radius);
  static Shape arc(double theta1, double theta2);

  Kind kind() const noexcept { return kind_; }
  /// Interval centre / disk centre; the arc's anchor is the origin.
  const AnchoredPoint& center() const noexcept { return center_; }
  /// log length (interval), log radius (disk), log angle (arc).
  double log_size() const noexcept { return log_size_; }
  double theta1() const noexcept { return theta1_; }
  double theta2() const noexcept { return theta2_; }

  double lo() const noexcept;  // interval only
  double hi() const noexcept;  // interval only

  /// Below resolution the shape is treated as a point-like blob.
  bool subresolution(double resolution) const noexcept;
  /// log of the largest distance from the centre to the shape.
  double log_blob_radius() const noexcept;

  /// Boundary discretisation: Chebyshev-Lobatto on intervals and arcs,
  /// equispaced on circles.
  std::vector<AnchoredPoint> mesh(int count) const;
  /// Points halfway between consecutive mesh nodes.
  std::vector<AnchoredPoint> mesh_midpoints(int count) const;

  double distance_from(complex p) const noexcept;
  double farthest_from(complex p) const noexcept;

 private:
  Shape() = default;

  Kind kind_ = Kind::Interval;
  AnchoredPoint center_{};
  double log_size_ = 0.0;
  double theta1_ = 0.0;
  double theta2_ = 0.0;
};

struct CompactUnion {
  std::vector<Shape> shapes;
};

/// Upper bound for max |x - y| over x, y in the two shapes.
double farthest_distance(const Shape& s, const Shape& t) noexcept;
/// Upper bound for the diameter of the union.
double diameter_bound(const CompactUnion& set) noexcept;
/// Smallest distance from p to the union.
double distance_from(const CompactUnion& set, complex p) noexcept;

}  // namespace finehull
