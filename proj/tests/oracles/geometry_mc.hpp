#pragma once

// Monte-Carlo point-membership reference for overlap of two solids.

#include <algorithm>
#include <cmath>
#include <random>

#include "mrtamp/geometry.hpp"

namespace oracle {

using mrtamp::Corridor;
using mrtamp::Placed;
using mrtamp::Vec2;
using mrtamp::Volume;

inline bool contains(const Placed& p, Vec2 q) {
  const double dx = q.x - p.pose.x;
  const double dy = q.y - p.pose.y;
  if (const auto* d = std::get_if<mrtamp::Disc>(&p.shape)) return dx * dx + dy * dy <= d->radius * d->radius;
  const auto& r = std::get<mrtamp::Rectangle>(p.shape);
  const double c = std::cos(p.pose.theta);
  const double s = std::sin(p.pose.theta);
  const double lx = c * dx + s * dy;
  const double ly = -s * dx + c * dy;
  return std::abs(lx) <= r.half_w && std::abs(ly) <= r.half_h;
}

inline bool contains(const Corridor& k, Vec2 q) {
  const Vec2 d = k.to - k.from;
  const double len2 = d.dot(d);
  double u = len2 > 0 ? (q - k.from).dot(d) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  const Vec2 closest = k.from + u * d;
  return mrtamp::distance(q, closest) <= 0.5 * k.width;
}

inline bool contains(const Volume& v, Vec2 q) {
  return std::visit([&](const auto& s) { return contains(s, q); }, v);
}

/// True iff some of `samples` uniform points in the common bounding box lies
/// inside both solids.
inline bool overlap_mc(const Volume& a, const Volume& b, std::mt19937_64& rng, int samples = 100000) {
  const auto ba = mrtamp::bounds(a);
  const auto bb = mrtamp::bounds(b);
  const double x0 = std::max(ba.min.x, bb.min.x), x1 = std::min(ba.max.x, bb.max.x);
  const double y0 = std::max(ba.min.y, bb.min.y), y1 = std::min(ba.max.y, bb.max.y);
  if (x0 > x1 || y0 > y1) return false;
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  for (int i = 0; i < samples; ++i) {
    const Vec2 q{ux(rng), uy(rng)};
    if (contains(a, q) && contains(b, q)) return true;
  }
  return false;
}

}  // namespace oracle
