#pragma once

#include "ewl/game.hpp"
#include "ewl/quantum.hpp"
#include "ewl/regions.hpp"

#include <iosfwd>
#include <string>
#include <utility>

namespace ewl {

/// Convex weights over the four outcome corners 00, 01, 10, 11.
struct ConvexWeights {
  double w00 = 0, w01 = 0, w10 = 0, w11 = 0;

  double operator[](int corner) const;
  void validate() const;  // nonnegative, sum 1 within 1e-12
};

/// Grid resolutions for the two-parameter pure-strategy region
/// (theta1, theta2 on [0, pi]; alpha1, alpha2 on [0, 2pi); beta = 0).
/// A resolution of 1 collapses that axis to its start point.
struct EwlRegionGrid {
  int theta1 = 53;
  int theta2 = 53;
  int alpha1 = 210;
  int alpha2 = 7;
};

/// Samples closed-form payoffs of two-parameter profiles over the grid.
/// Grids above 10^7 points are rejected.
RegionSample ewl_region_samples(const BimatrixGame& game, const EwlRegionGrid& grid = {});

// Corner indices for caratheodory_profile / achieve_target.
inline constexpr int kCorner00 = 0;
inline constexpr int kCorner01 = 1;
inline constexpr int kCorner10 = 2;
inline constexpr int kCorner11 = 3;

/// The two-parameter profile realizing sum lambda_ij (a_ij, b_ij) when the
/// omitted corner's weight is zero (nonzero omitted weight folds into one of
/// the kept corners). When the construction's pivot weight reaches 1 the
/// pure profile of that corner is returned instead of dividing by zero.
std::pair<UnitaryStrategy, UnitaryStrategy> caratheodory_profile(const ConvexWeights& weights,
                                                                 int omitted_corner);

struct AchieveResult {
  UnitaryStrategy s1;
  UnitaryStrategy s2;
  ConvexWeights weights;
  int omitted_corner;
  Eigen::Vector2d achieved;
  double residual;
};

/// Finds a two-parameter profile whose payoff is `target`: triangulates the
/// corner-payoff hull by a fan from corner 00, converts barycentric weights
/// of the containing triangle to corner weights and applies the
/// Caratheodory construction. Targets outside the hull (tol 1e-9) are
/// rejected with their distance to the hull.
AchieveResult achieve_target(const BimatrixGame& game, const Eigen::Vector2d& target);

enum class ExportFormat { csv, svg };

/// csv: header "x,y" then one point per line, 12 significant digits, LF.
/// svg: fixed 800x800 viewport, hull polyline plus r=1 circles, axes
/// labeled "Player 1" / "Player 2".
void export_region(const RegionSample& sample, std::ostream& out, ExportFormat format);
void export_region(const RegionSample& sample, const std::string& path, ExportFormat format);

}  // namespace ewl
