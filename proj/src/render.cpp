#include "mrtamp/render.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace mrtamp {

namespace {

constexpr double kScale = 100.0;  // px per meter
constexpr double kMargin = 20.0;

struct Frame {
  AxisRect world;
  double px(double x) const { return kMargin + (x - world.min.x) * kScale; }
  double py(double y) const { return kMargin + (world.max.y - y) * kScale; }
  double width() const { return 2 * kMargin + world.width() * kScale; }
  double height() const { return 2 * kMargin + world.height() * kScale; }
};

void grow(AxisRect& box, const AxisRect& r) {
  box.min.x = std::min(box.min.x, r.min.x);
  box.min.y = std::min(box.min.y, r.min.y);
  box.max.x = std::max(box.max.x, r.max.x);
  box.max.y = std::max(box.max.y, r.max.y);
}

AxisRect scene_bounds(const Scene& scene) {
  AxisRect box{{1e300, 1e300}, {-1e300, -1e300}};
  for (const auto& r : scene.regions) grow(box, r.rect);
  for (const auto& f : scene.fixed) grow(box, bounds(f.placed()));
  for (const auto& m : scene.movables) grow(box, bounds(m.placed()));
  for (const auto& r : scene.robots) {
    grow(box, {{r.base.x - r.reach_max, r.base.y - r.reach_max},
               {r.base.x + r.reach_max, r.base.y + r.reach_max}});
  }
  if (box.min.x > box.max.x) box = {{0, 0}, {1, 1}};
  return box;
}

std::string shape_svg(const Frame& f, const Placed& p, const char* style) {
  if (const auto* d = std::get_if<Disc>(&p.shape)) {
    return fmt::format(R"(<circle cx="{:.3f}" cy="{:.3f}" r="{:.3f}" {}/>)", f.px(p.pose.x),
                       f.py(p.pose.y), d->radius * kScale, style);
  }
  const auto pts = corners(std::get<Rectangle>(p.shape), p.pose);
  std::string coords;
  for (const Vec2 c : pts) coords += fmt::format("{:.3f},{:.3f} ", f.px(c.x), f.py(c.y));
  coords.pop_back();
  return fmt::format(R"(<polygon points="{}" {}/>)", coords, style);
}

std::string corridor_svg(const Frame& f, const Corridor& c, const char* color) {
  return fmt::format(
      R"(<line x1="{:.3f}" y1="{:.3f}" x2="{:.3f}" y2="{:.3f}" stroke="{}" stroke-opacity="0.25" stroke-width="{:.3f}" stroke-linecap="round"/>)",
      f.px(c.from.x), f.py(c.from.y), f.px(c.to.x), f.py(c.to.y), color, c.width * kScale);
}

}  // namespace

std::string render_svg(const Scene& scene, const Plan* plan) {
  const Frame f{scene_bounds(scene)};
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.3f} {:.3f}\">\n",
      f.width(), f.height(), f.width(), f.height());
  out += "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" "
         "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"#c0392b\"/></marker></defs>\n";

  for (const auto& r : scene.regions) {
    out += fmt::format(
        R"(<g class="entity" data-kind="region" data-name="{}"><rect x="{:.3f}" y="{:.3f}" width="{:.3f}" height="{:.3f}" fill="none" stroke="#2c7fb8" stroke-dasharray="6,3"/><text x="{:.3f}" y="{:.3f}" font-size="10" fill="#2c7fb8">{}</text></g>)",
        r.name, f.px(r.rect.min.x), f.py(r.rect.max.y), r.rect.width() * kScale,
        r.rect.height() * kScale, f.px(r.rect.min.x) + 2, f.py(r.rect.max.y) + 11, r.name);
    out += "\n";
  }
  for (const auto& o : scene.fixed) {
    out += fmt::format(R"(<g class="entity" data-kind="fixed" data-name="{}">{}</g>)", o.name,
                       shape_svg(f, o.placed(), R"(fill="#555555")"));
    out += "\n";
  }
  for (const auto& m : scene.movables) {
    const ObjectId id = scene.object_id(m.name);
    const char* fill = scene.is_goal_object(id) ? R"(fill="#e6550d")" : R"(fill="#fdae6b")";
    out += fmt::format(
        R"(<g class="entity" data-kind="movable" data-name="{}">{}<text x="{:.3f}" y="{:.3f}" font-size="9" text-anchor="middle">{}</text></g>)",
        m.name, shape_svg(f, m.placed(), fill), f.px(m.pose.x), f.py(m.pose.y) + 3, m.name);
    out += "\n";
  }
  for (const auto& r : scene.robots) {
    out += fmt::format(
        R"(<g class="entity" data-kind="robot" data-name="{}"><circle cx="{:.3f}" cy="{:.3f}" r="{:.3f}" fill="none" stroke="#31a354"/>)",
        r.name, f.px(r.base.x), f.py(r.base.y), r.reach_max * kScale);
    if (r.reach_min > 0) {
      out += fmt::format(R"(<circle cx="{:.3f}" cy="{:.3f}" r="{:.3f}" fill="none" stroke="#31a354" stroke-dasharray="2,2"/>)",
                         f.px(r.base.x), f.py(r.base.y), r.reach_min * kScale);
    }
    out += fmt::format(
        R"(<rect x="{:.3f}" y="{:.3f}" width="10" height="10" fill="#31a354"/><text x="{:.3f}" y="{:.3f}" font-size="10" fill="#31a354">{}</text></g>)",
        f.px(r.base.x) - 5, f.py(r.base.y) - 5, f.px(r.base.x) + 7, f.py(r.base.y) - 7, r.name);
    out += "\n";
  }

  if (plan != nullptr) {
    for (size_t t = 0; t < plan->steps.size(); ++t) {
      out += fmt::format(R"(<g class="step" data-step="{}">)", t + 1);
      for (const auto& slot : plan->steps[t].slots) {
        const auto* pp = std::get_if<PickPlaceSlot>(&slot);
        if (pp == nullptr) continue;
        for (const auto& c : pp->pick_traj.swept) out += corridor_svg(f, c, "#756bb1");
        for (const auto& c : pp->place_traj.swept) out += corridor_svg(f, c, "#c0392b");
      }
      for (const PickPlaceSlot* pp : plan->steps[t].actions()) {
        const auto& m = scene.object(pp->action.object);
        out += shape_svg(f, m.placed_at(pp->placement),
                         R"(fill="none" stroke="#e6550d" stroke-dasharray="3,2")");
        out += fmt::format(
            R"svg(<line x1="{:.3f}" y1="{:.3f}" x2="{:.3f}" y2="{:.3f}" stroke="#c0392b" marker-end="url(#arrow)"/><text x="{:.3f}" y="{:.3f}" font-size="11" fill="#c0392b">{}</text>)svg",
            f.px(m.pose.x), f.py(m.pose.y), f.px(pp->placement.x), f.py(pp->placement.y),
            0.5 * (f.px(m.pose.x) + f.px(pp->placement.x)),
            0.5 * (f.py(m.pose.y) + f.py(pp->placement.y)) - 4, t + 1);
      }
      out += "</g>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace mrtamp
