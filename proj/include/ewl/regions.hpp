#pragma once

#include "ewl/game.hpp"
#include "ewl/hull.hpp"

namespace ewl {

enum class RegionTag { pure, noncooperative, cooperative, ewl_pure };

/// A tagged point cloud in payoff space together with its convex hull.
struct RegionSample {
  RegionTag tag;
  std::vector<Eigen::Vector2d> points;
  Polygon hull;
};

RegionSample make_region_sample(RegionTag tag, std::vector<Eigen::Vector2d> points);

enum class ClassicalRegionMode { pure, noncooperative, cooperative };

/// Classical payoff regions of a two-player game.
///  - pure: the m*n corner payoffs (duplicates kept).
///  - noncooperative: expected payoffs on a resolution x resolution grid of
///    mixing weights (p, q); 2x2 games only.
///  - cooperative: the corner payoffs with their exact convex hull.
RegionSample classical_region_samples(const BimatrixGame& game, ClassicalRegionMode mode,
                                      int resolution);

const char* region_tag_name(RegionTag tag);

}  // namespace ewl
