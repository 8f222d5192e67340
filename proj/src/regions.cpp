#include "ewl/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ewl {

namespace {

double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                        const Eigen::Vector2d& b) {
  const Eigen::Vector2d d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

// Rounding noise in sampled payoffs turns straight hull edges into chains of
// nearly collinear vertices; drop vertices within eps of their neighbors'
// chord.
void drop_dust_vertices(Polygon& hull, double eps) {
  bool removed = true;
  while (removed && hull.size() > 2) {
    removed = false;
    for (std::size_t k = 0; k < hull.size(); ++k) {
      const auto& prev = hull[(k + hull.size() - 1) % hull.size()];
      const auto& next = hull[(k + 1) % hull.size()];
      if (segment_distance(hull[k], prev, next) <= eps) {
        hull.erase(hull.begin() + static_cast<std::ptrdiff_t>(k));
        removed = true;
        break;
      }
    }
  }
}

}  // namespace

RegionSample make_region_sample(RegionTag tag, std::vector<Eigen::Vector2d> points) {
  RegionSample sample;
  sample.tag = tag;
  sample.hull = convex_hull(points);
  if (sample.hull.size() > 2) {
    Eigen::Vector2d lo = sample.hull.front(), hi = sample.hull.front();
    for (const auto& v : sample.hull) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    // stay below the 1e-9 hull-contains-points slack
    drop_dust_vertices(sample.hull, std::min(1e-10 * std::max(1.0, (hi - lo).norm()), 5e-10));
  }
  sample.points = std::move(points);
  return sample;
}

RegionSample classical_region_samples(const BimatrixGame& game, ClassicalRegionMode mode,
                                      int resolution) {
  game.validate();
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  std::vector<Eigen::Vector2d> points;
  switch (mode) {
    case ClassicalRegionMode::pure:
    case ClassicalRegionMode::cooperative:
      points.reserve(static_cast<std::size_t>(game.rows() * game.cols()));
      for (Index i = 0; i < game.rows(); ++i)
        for (Index j = 0; j < game.cols(); ++j) points.push_back(game.at(i, j));
      return make_region_sample(mode == ClassicalRegionMode::pure ? RegionTag::pure
                                                                  : RegionTag::cooperative,
                                std::move(points));
    case ClassicalRegionMode::noncooperative: {
      if (game.rows() != 2 || game.cols() != 2)
        throw std::invalid_argument("noncooperative sampling implemented for 2x2 games only");
      points.reserve(static_cast<std::size_t>(resolution) * resolution);
      MixedStrategy row_mix(2), col_mix(2);
      for (int i = 0; i < resolution; ++i) {
        const double p = static_cast<double>(i) / (resolution - 1);
        row_mix << p, 1.0 - p;
        for (int j = 0; j < resolution; ++j) {
          const double q = static_cast<double>(j) / (resolution - 1);
          col_mix << q, 1.0 - q;
          points.push_back(expected_payoff(game, row_mix, col_mix));
        }
      }
      return make_region_sample(RegionTag::noncooperative, std::move(points));
    }
  }
  throw std::invalid_argument("unknown region mode");
}

const char* region_tag_name(RegionTag tag) {
  switch (tag) {
    case RegionTag::pure: return "pure";
    case RegionTag::noncooperative: return "noncooperative";
    case RegionTag::cooperative: return "cooperative";
    case RegionTag::ewl_pure: return "ewl_pure";
  }
  return "?";
}

}  // namespace ewl
