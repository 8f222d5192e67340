#include "ewl/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ewl {

namespace {

double cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool lex_less(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

}  // namespace

Polygon convex_hull(const std::vector<Eigen::Vector2d>& points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: no points");
  for (const auto& p : points)
    if (!p.allFinite()) throw std::invalid_argument("convex_hull: non-finite point");

  std::vector<Eigen::Vector2d> pts = points;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) { return a == b; }),
            pts.end());

  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  Polygon hull(2 * n);
  std::size_t k = 0;
  // Lower chain, then upper; strict turns only, so collinear points drop out.
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  return hull;
}

bool point_in_polygon(const Polygon& poly, const Eigen::Vector2d& p, double tol) {
  return distance_to_polygon(poly, p) <= tol;
}

double distance_to_polygon(const Polygon& poly, const Eigen::Vector2d& p) {
  if (poly.empty()) throw std::invalid_argument("distance_to_polygon: empty polygon");
  if (poly.size() == 1) return (p - poly[0]).norm();
  if (poly.size() == 2) return point_segment_distance(p, poly[0], poly[1]);

  bool inside = true;
  double boundary = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    if (cross(a, b, p) < 0.0) inside = false;  // right of a CCW edge
    boundary = std::min(boundary, point_segment_distance(p, a, b));
  }
  return inside ? 0.0 : boundary;
}

double hausdorff_distance(const Polygon& a, const Polygon& b) {
  // For convex sets the distance function is convex, so each directed
  // maximum is attained at a vertex.
  double d = 0.0;
  for (const auto& v : a) d = std::max(d, distance_to_polygon(b, v));
  for (const auto& v : b) d = std::max(d, distance_to_polygon(a, v));
  return d;
}

}  // namespace ewl
