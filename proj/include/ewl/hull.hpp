#pragma once

#include <Eigen/Dense>

#include <vector>

namespace ewl {

/// Convex polygon as a CCW vertex list. Degenerate cases: a single vertex
/// (point) or two vertices (segment).
using Polygon = std::vector<Eigen::Vector2d>;

/// Monotone-chain convex hull. Output is the minimal CCW vertex list
/// starting at the lexicographically (x, then y) smallest vertex; collinear
/// boundary points are excluded. Throws std::invalid_argument on empty or
/// non-finite input.
Polygon convex_hull(const std::vector<Eigen::Vector2d>& points);

/// True if p lies in the closed polygon, allowing `tol` slack outside.
bool point_in_polygon(const Polygon& poly, const Eigen::Vector2d& p, double tol);

/// Euclidean distance from p to the polygon (0 when inside).
double distance_to_polygon(const Polygon& poly, const Eigen::Vector2d& p);

/// Hausdorff distance between two convex polygons (as filled convex sets).
double hausdorff_distance(const Polygon& a, const Polygon& b);

}  // namespace ewl
