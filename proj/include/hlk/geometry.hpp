#pragma once
// Planar polyline utilities: proper self-intersection counting with a
// uniform-grid prefilter, point/segment distances, and Hausdorff distance
// between sampled curves.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

namespace hlk::geom {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Proper (interior) crossing of segments ab and cd; shared or touching
// endpoints do not count.
inline bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c,
                           const Vec2& d) {
  const double d1 = orient(c, d, a);
  const double d2 = orient(c, d, b);
  const double d3 = orient(a, b, c);
  const double d4 = orient(a, b, d);
  return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
         ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

struct SelfIntersectionCount {
  int count = 0;
  bool saturated = false;
};

// Counts properly crossing segment pairs of the open polyline, skipping
// adjacent segments.  A uniform grid over segment bounding boxes prunes the
// pair candidates; the count saturates at cap.
inline SelfIntersectionCount count_self_intersections(
    const std::vector<Vec2>& pts, int cap = 10000) {
  SelfIntersectionCount result;
  const std::size_t m = pts.size() < 2 ? 0 : pts.size() - 1;
  if (m < 3) return result;

  double cell = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    cell = std::max(cell, std::max(std::abs(pts[i + 1].x - pts[i].x),
                                   std::abs(pts[i + 1].y - pts[i].y)));
  if (cell <= 0.0) return result;

  const auto key = [](std::int64_t ix, std::int64_t iy) {
    return (ix * 73856093LL) ^ (iy * 19349663LL);
  };
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> grid;
  grid.reserve(2 * m);
  const auto cell_range = [&](const Vec2& a, const Vec2& b, std::int64_t& x0,
                              std::int64_t& x1, std::int64_t& y0,
                              std::int64_t& y1) {
    x0 = static_cast<std::int64_t>(std::floor(std::min(a.x, b.x) / cell));
    x1 = static_cast<std::int64_t>(std::floor(std::max(a.x, b.x) / cell));
    y0 = static_cast<std::int64_t>(std::floor(std::min(a.y, b.y) / cell));
    y1 = static_cast<std::int64_t>(std::floor(std::max(a.y, b.y) / cell));
  };
  for (std::uint32_t i = 0; i < m; ++i) {
    std::int64_t x0, x1, y0, y1;
    cell_range(pts[i], pts[i + 1], x0, x1, y0, y1);
    for (std::int64_t ix = x0; ix <= x1; ++ix)
      for (std::int64_t iy = y0; iy <= y1; ++iy)
        grid[key(ix, iy)].push_back(i);
  }

  std::vector<std::uint64_t> pairs;
  for (const auto& [k, bucket] : grid) {
    (void)k;
    for (std::size_t a = 0; a < bucket.size(); ++a)
      for (std::size_t b = a + 1; b < bucket.size(); ++b) {
        std::uint32_t i = bucket[a], j = bucket[b];
        if (i > j) std::swap(i, j);
        if (j <= i + 1) continue;  // identical or adjacent segments
        pairs.push_back((static_cast<std::uint64_t>(i) << 32) | j);
      }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  for (const std::uint64_t pk : pairs) {
    const std::uint32_t i = static_cast<std::uint32_t>(pk >> 32);
    const std::uint32_t j = static_cast<std::uint32_t>(pk & 0xffffffffu);
    if (segments_cross(pts[i], pts[i + 1], pts[j], pts[j + 1])) {
      if (++result.count >= cap) {
        result.saturated = true;
        result.count = cap;
        return result;
      }
    }
  }
  return result;
}

inline double point_segment_distance(const Vec2& p, const Vec2& a,
                                     const Vec2& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double wx = p.x - a.x, wy = p.y - a.y;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::min(1.0, std::max(0.0, t));
  const double dx = wx - t * vx, dy = wy - t * vy;
  return std::hypot(dx, dy);
}

inline double point_polyline_distance(const Vec2& p,
                                      const std::vector<Vec2>& poly) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i)
    best = std::min(best, point_segment_distance(p, poly[i], poly[i + 1]));
  return best;
}

// Minimum distance from sample points of a to the polyline b and vice versa.
inline double min_distance(const std::vector<Vec2>& a,
                           const std::vector<Vec2>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec2& p : a) best = std::min(best, point_polyline_distance(p, b));
  for (const Vec2& p : b) best = std::min(best, point_polyline_distance(p, a));
  return best;
}

inline double directed_hausdorff(const std::vector<Vec2>& a,
                                 const std::vector<Vec2>& b) {
  double worst = 0.0;
  for (const Vec2& p : a) worst = std::max(worst, point_polyline_distance(p, b));
  return worst;
}

inline double hausdorff(const std::vector<Vec2>& a,
                        const std::vector<Vec2>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace hlk::geom
