#pragma once

// Planar geometry for the desk-scale workspace: poses, convex shapes, swept
// capsule corridors and the collision predicate everything else is built on.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <variant>

namespace mrtamp {

/// Penetration depth (meters) below which two solids are considered touching
/// rather than colliding.
inline constexpr double kCollisionTolerance = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }
inline Vec2 unit_from_angle(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Wraps an angle into [0, 2pi).
double normalize_angle(double theta);

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // always in [0, 2pi)

  Pose() = default;
  Pose(double x_, double y_, double theta_ = 0.0)
      : x(x_), y(y_), theta(normalize_angle(theta_)) {}

  Vec2 position() const { return {x, y}; }
  friend bool operator==(const Pose&, const Pose&) = default;
};

struct Disc {
  double radius = 0.0;
  friend bool operator==(const Disc&, const Disc&) = default;
};

struct Rectangle {
  double half_w = 0.0;
  double half_h = 0.0;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

using Shape = std::variant<Disc, Rectangle>;

/// Throws std::invalid_argument unless every extent is strictly positive.
void check_shape(const Shape& shape);
double bounding_radius(const Shape& shape);
double inscribed_radius(const Shape& shape);
double area(const Shape& shape);

/// A shape placed at a pose.
struct Placed {
  Shape shape;
  Pose pose;
};

/// Capsule: the segment [from, to] inflated by width / 2.
struct Corridor {
  Vec2 from;
  Vec2 to;
  double width = 0.0;

  double length() const { return distance(from, to); }
  friend bool operator==(const Corridor&, const Corridor&) = default;
};

using Volume = std::variant<Placed, Corridor>;

struct AxisRect {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double area() const { return width() * height(); }
  Vec2 center() const { return {0.5 * (min.x + max.x), 0.5 * (min.y + max.y)}; }
  friend bool operator==(const AxisRect&, const AxisRect&) = default;
};

/// Capsule from `from` to `to`; a zero-length segment is a disc of radius
/// width / 2. Throws std::invalid_argument for width <= 0.
Corridor swept_corridor(Vec2 from, Vec2 to, double width);

double capsule_area(const Corridor& c);

/// True iff the two solids overlap with penetration deeper than
/// kCollisionTolerance. Symmetric.
bool collides(const Volume& a, const Volume& b);

/// Signed separation between two solids: positive gap when apart, minus the
/// penetration depth when overlapping.
double separation(const Volume& a, const Volume& b);

/// Axis-aligned bounds of a solid.
AxisRect bounds(const Volume& v);

/// True iff the placed shape lies entirely inside `rect` (tolerance applies).
bool contained_in(const AxisRect& rect, const Placed& placed);

/// Corner points of a placed rectangle in counter-clockwise order.
std::array<Vec2, 4> corners(const Rectangle& rect, const Pose& pose);

/// Rejection-samples a pose placing `shape` inside `region` and clear of every
/// forbidden volume. Rectangles get a uniformly sampled orientation. Returns
/// nullopt after `max_attempts` rejections.
std::optional<Pose> sample_placement(const AxisRect& region, const Shape& shape,
                                     std::span<const Volume> forbidden, std::mt19937_64& rng,
                                     int max_attempts);

}  // namespace mrtamp
