#include "mrtamp/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mrtamp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Every solid in the world is a convex core (point, segment or quadrilateral)
// inflated by a radius.
struct Solid {
  std::array<Vec2, 4> pts{};
  int n = 0;
  double radius = 0.0;
};

Solid to_solid(const Volume& v) {
  Solid s;
  if (const auto* c = std::get_if<Corridor>(&v)) {
    s.pts[0] = c->from;
    s.radius = 0.5 * c->width;
    if (c->from == c->to) {
      s.n = 1;
    } else {
      s.pts[1] = c->to;
      s.n = 2;
    }
    return s;
  }
  const auto& p = std::get<Placed>(v);
  if (const auto* d = std::get_if<Disc>(&p.shape)) {
    s.pts[0] = p.pose.position();
    s.n = 1;
    s.radius = d->radius;
  } else {
    s.pts = corners(std::get<Rectangle>(p.shape), p.pose);
    s.n = 4;
  }
  return s;
}

Vec2 closest_on_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  return distance(p, closest_on_segment(p, a, b));
}

// Edges of a core; a single point yields one degenerate edge.
template <class F>
void for_each_edge(const Solid& s, F&& f) {
  if (s.n == 1) {
    f(s.pts[0], s.pts[0]);
  } else if (s.n == 2) {
    f(s.pts[0], s.pts[1]);
  } else {
    for (int i = 0; i < s.n; ++i) f(s.pts[i], s.pts[(i + 1) % s.n]);
  }
}

double core_distance(const Solid& a, const Solid& b) {
  double best = std::numeric_limits<double>::infinity();
  for_each_edge(a, [&](Vec2 a0, Vec2 a1) {
    for (int j = 0; j < b.n; ++j) best = std::min(best, point_segment_distance(b.pts[j], a0, a1));
  });
  for_each_edge(b, [&](Vec2 b0, Vec2 b1) {
    for (int i = 0; i < a.n; ++i) best = std::min(best, point_segment_distance(a.pts[i], b0, b1));
  });
  return best;
}

void add_axes(const Solid& s, std::vector<Vec2>& axes) {
  if (s.n == 1) return;
  if (s.n == 2) {
    const Vec2 d = s.pts[1] - s.pts[0];
    const double len = d.norm();
    axes.push_back({d.x / len, d.y / len});
    axes.push_back({-d.y / len, d.x / len});
    return;
  }
  for (int i = 0; i < s.n; ++i) {
    const Vec2 e = s.pts[(i + 1) % s.n] - s.pts[i];
    const double len = e.norm();
    axes.push_back({-e.y / len, e.x / len});
  }
}

// Minimum projected overlap of the two cores over the separating-axis
// candidates; negative when some axis separates them. nullopt when no axis
// exists (two points).
std::optional<double> core_overlap(const Solid& a, const Solid& b) {
  std::vector<Vec2> axes;
  axes.reserve(8);
  add_axes(a, axes);
  add_axes(b, axes);
  if (axes.empty()) return std::nullopt;
  double min_overlap = std::numeric_limits<double>::infinity();
  for (const Vec2 axis : axes) {
    double amin = std::numeric_limits<double>::infinity(), amax = -amin;
    double bmin = amin, bmax = -amin;
    for (int i = 0; i < a.n; ++i) {
      const double p = a.pts[i].dot(axis);
      amin = std::min(amin, p);
      amax = std::max(amax, p);
    }
    for (int i = 0; i < b.n; ++i) {
      const double p = b.pts[i].dot(axis);
      bmin = std::min(bmin, p);
      bmax = std::max(bmax, p);
    }
    min_overlap = std::min(min_overlap, std::min(amax - bmin, bmax - amin));
  }
  return min_overlap;
}

}  // namespace

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

void check_shape(const Shape& shape) {
  const bool ok = std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return s.radius > 0.0 && std::isfinite(s.radius);
        } else {
          return s.half_w > 0.0 && s.half_h > 0.0 && std::isfinite(s.half_w) &&
                 std::isfinite(s.half_h);
        }
      },
      shape);
  if (!ok) throw std::invalid_argument("shape extents must be strictly positive");
}

double bounding_radius(const Shape& shape) {
  if (const auto* d = std::get_if<Disc>(&shape)) return d->radius;
  const auto& r = std::get<Rectangle>(shape);
  return std::hypot(r.half_w, r.half_h);
}

double inscribed_radius(const Shape& shape) {
  if (const auto* d = std::get_if<Disc>(&shape)) return d->radius;
  const auto& r = std::get<Rectangle>(shape);
  return std::min(r.half_w, r.half_h);
}

double area(const Shape& shape) {
  if (const auto* d = std::get_if<Disc>(&shape)) return std::numbers::pi * d->radius * d->radius;
  const auto& r = std::get<Rectangle>(shape);
  return 4.0 * r.half_w * r.half_h;
}

std::array<Vec2, 4> corners(const Rectangle& rect, const Pose& pose) {
  const double c = std::cos(pose.theta), s = std::sin(pose.theta);
  const Vec2 ex{c * rect.half_w, s * rect.half_w};
  const Vec2 ey{-s * rect.half_h, c * rect.half_h};
  const Vec2 o = pose.position();
  return {o - ex - ey, o + ex - ey, o + ex + ey, o - ex + ey};
}

Corridor swept_corridor(Vec2 from, Vec2 to, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("corridor width must be positive");
  return Corridor{from, to, width};
}

double capsule_area(const Corridor& c) {
  const double r = 0.5 * c.width;
  return c.length() * c.width + std::numbers::pi * r * r;
}

double separation(const Volume& va, const Volume& vb) {
  const Solid a = to_solid(va);
  const Solid b = to_solid(vb);
  const double radii = a.radius + b.radius;
  const auto overlap = core_overlap(a, b);
  if (!overlap || *overlap < 0.0) return core_distance(a, b) - radii;
  // Cores intersect (or touch); penetration is the smallest axis overlap.
  return -*overlap - radii;
}

bool collides(const Volume& a, const Volume& b) { return separation(a, b) < -kCollisionTolerance; }

AxisRect bounds(const Volume& v) {
  const Solid s = to_solid(v);
  AxisRect r{{s.pts[0].x, s.pts[0].y}, {s.pts[0].x, s.pts[0].y}};
  for (int i = 1; i < s.n; ++i) {
    r.min.x = std::min(r.min.x, s.pts[i].x);
    r.min.y = std::min(r.min.y, s.pts[i].y);
    r.max.x = std::max(r.max.x, s.pts[i].x);
    r.max.y = std::max(r.max.y, s.pts[i].y);
  }
  r.min = r.min - Vec2{s.radius, s.radius};
  r.max = r.max + Vec2{s.radius, s.radius};
  return r;
}

bool contained_in(const AxisRect& rect, const Placed& placed) {
  const AxisRect b = bounds(placed);
  constexpr double tol = kCollisionTolerance;
  return b.min.x >= rect.min.x - tol && b.min.y >= rect.min.y - tol &&
         b.max.x <= rect.max.x + tol && b.max.y <= rect.max.y + tol;
}

std::optional<Pose> sample_placement(const AxisRect& region, const Shape& shape,
                                     std::span<const Volume> forbidden, std::mt19937_64& rng,
                                     int max_attempts) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool rotate = std::holds_alternative<Rectangle>(shape);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const double theta = rotate ? kTwoPi * unit(rng) : 0.0;
    const double u = unit(rng);
    const double v = unit(rng);
    const AxisRect ext = bounds(Placed{shape, Pose(0.0, 0.0, theta)});
    const double lo_x = region.min.x - ext.min.x, hi_x = region.max.x - ext.max.x;
    const double lo_y = region.min.y - ext.min.y, hi_y = region.max.y - ext.max.y;
    if (lo_x > hi_x || lo_y > hi_y) continue;
    const Pose pose(lo_x + u * (hi_x - lo_x), lo_y + v * (hi_y - lo_y), theta);
    const Placed candidate{shape, pose};
    const bool clear = std::none_of(forbidden.begin(), forbidden.end(),
                                    [&](const Volume& f) { return collides(candidate, f); });
    if (clear) return pose;
  }
  return std::nullopt;
}

}  // namespace mrtamp
