#include "ewl/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ewl {

namespace {

double grid_value(int step, int resolution, double span) {
  if (resolution <= 1) return 0.0;
  return span * static_cast<double>(step) / resolution;
}

double clamped_acos_sqrt(double ratio) {
  return std::acos(std::sqrt(std::clamp(ratio, 0.0, 1.0)));
}

std::string format_coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double ConvexWeights::operator[](int corner) const {
  switch (corner) {
    case kCorner00: return w00;
    case kCorner01: return w01;
    case kCorner10: return w10;
    case kCorner11: return w11;
  }
  throw std::out_of_range("corner index must be in 0..3");
}

void ConvexWeights::validate() const {
  for (int c = 0; c < 4; ++c)
    if ((*this)[c] < 0.0) throw std::invalid_argument("convex weight is negative");
  if (std::abs(w00 + w01 + w10 + w11 - 1.0) > 1e-12)
    throw std::invalid_argument("convex weights do not sum to 1");
}

RegionSample ewl_region_samples(const BimatrixGame& game, const EwlRegionGrid& grid) {
  game.validate();
  if (game.rows() != 2 || game.cols() != 2)
    throw std::invalid_argument("EWL region sampling requires a 2x2 game");
  for (int r : {grid.theta1, grid.theta2, grid.alpha1, grid.alpha2})
    if (r < 1) throw std::invalid_argument("grid resolution must be at least 1");
  const double total = static_cast<double>(grid.theta1) * grid.theta2 *
                       static_cast<double>(grid.alpha1) * grid.alpha2;
  if (total > 1e7) throw std::invalid_argument("region grid exceeds 10^7 points");

  std::vector<Eigen::Vector2d> points;
  points.reserve(static_cast<std::size_t>(total));
  for (int t1 = 0; t1 < grid.theta1; ++t1) {
    const double theta1 = grid.theta1 > 1 ? M_PI * t1 / (grid.theta1 - 1) : 0.0;
    for (int t2 = 0; t2 < grid.theta2; ++t2) {
      const double theta2 = grid.theta2 > 1 ? M_PI * t2 / (grid.theta2 - 1) : 0.0;
      for (int a1 = 0; a1 < grid.alpha1; ++a1) {
        const double alpha1 = grid_value(a1, grid.alpha1, 2.0 * M_PI);
        const UnitaryStrategy s1{theta1, alpha1, 0.0};
        for (int a2 = 0; a2 < grid.alpha2; ++a2) {
          const double alpha2 = grid_value(a2, grid.alpha2, 2.0 * M_PI);
          points.push_back(ewl_payoff_closed_form(game, s1, {theta2, alpha2, 0.0}));
        }
      }
    }
  }
  return make_region_sample(RegionTag::ewl_pure, std::move(points));
}

std::pair<UnitaryStrategy, UnitaryStrategy> caratheodory_profile(const ConvexWeights& w,
                                                                 int omitted_corner) {
  w.validate();
  const double l00 = w.w00, l01 = w.w01, l10 = w.w10, l11 = w.w11;
  const double pi = M_PI;

  switch (omitted_corner) {
    case kCorner11: {
      if (1.0 - l00 <= 0.0)
        return {UnitaryStrategy::identity(), UnitaryStrategy::identity()};
      const double a = clamped_acos_sqrt(l01 / (1.0 - l00));
      return {UnitaryStrategy{0.0, -a, 0.0},
              UnitaryStrategy{2.0 * clamped_acos_sqrt(l00), a, 0.0}};
    }
    case kCorner10: {
      if (1.0 - l01 <= 0.0)
        return {UnitaryStrategy::identity(), UnitaryStrategy::pauli_x()};
      const double a = clamped_acos_sqrt(l00 / (1.0 - l01));
      return {UnitaryStrategy::identity(),
              UnitaryStrategy{2.0 * clamped_acos_sqrt(1.0 - l01), a, 0.0}};
    }
    case kCorner01: {
      if (1.0 - l10 <= 0.0)
        return {UnitaryStrategy::pauli_x(), UnitaryStrategy::identity()};
      const double a = clamped_acos_sqrt(l11 / (1.0 - l10));
      return {UnitaryStrategy{0.0, pi / 2.0, 0.0},
              UnitaryStrategy{2.0 * clamped_acos_sqrt(1.0 - l10), a, 0.0}};
    }
    case kCorner00: {
      if (1.0 - l11 <= 0.0)
        return {UnitaryStrategy::pauli_x(), UnitaryStrategy::pauli_x()};
      const double a = clamped_acos_sqrt(l10 / (1.0 - l11));
      return {UnitaryStrategy::pauli_x(),
              UnitaryStrategy{2.0 * clamped_acos_sqrt(1.0 - l11), a, 0.0}};
    }
  }
  throw std::out_of_range("corner index must be in 0..3");
}

AchieveResult achieve_target(const BimatrixGame& game, const Eigen::Vector2d& target) {
  game.validate();
  if (game.rows() != 2 || game.cols() != 2)
    throw std::invalid_argument("achieve_target requires a 2x2 game");

  const std::array<Eigen::Vector2d, 4> corners = {game.at(0, 0), game.at(0, 1), game.at(1, 0),
                                                  game.at(1, 1)};
  const Polygon hull = convex_hull({corners.begin(), corners.end()});
  const double outside = distance_to_polygon(hull, target);
  if (outside > 1e-9) {
    std::ostringstream msg;
    msg << "target (" << target.x() << ", " << target.y()
        << ") lies outside the cooperative hull by " << outside;
    throw std::invalid_argument(msg.str());
  }

  auto corner_of = [&](const Eigen::Vector2d& v) {
    for (int c = 0; c < 4; ++c)
      if ((corners[static_cast<std::size_t>(c)] - v).norm() <= 1e-12) return c;
    throw std::logic_error("hull vertex is not a corner payoff");
  };

  ConvexWeights weights;
  auto assign = [&](int corner, double w) {
    switch (corner) {
      case kCorner00: weights.w00 += w; break;
      case kCorner01: weights.w01 += w; break;
      case kCorner10: weights.w10 += w; break;
      case kCorner11: weights.w11 += w; break;
    }
  };

  bool resolved = false;
  if (hull.size() == 1) {
    assign(corner_of(hull[0]), 1.0);
    resolved = true;
  } else if (hull.size() == 2) {
    const Eigen::Vector2d d = hull[1] - hull[0];
    const double t = std::clamp((target - hull[0]).dot(d) / d.squaredNorm(), 0.0, 1.0);
    assign(corner_of(hull[0]), 1.0 - t);
    assign(corner_of(hull[1]), t);
    resolved = true;
  } else {
    // Fan triangulation from corner 00, first containing triangle wins.
    const Eigen::Vector2d apex = corners[0];
    const bool apex_on_hull =
        std::any_of(hull.begin(), hull.end(),
                    [&](const Eigen::Vector2d& v) { return (v - apex).norm() <= 1e-12; });
    std::vector<Eigen::Vector2d> ring;
    if (apex_on_hull) {
      std::size_t start = 0;
      while ((hull[start] - apex).norm() > 1e-12) ++start;
      for (std::size_t k = 1; k < hull.size(); ++k) ring.push_back(hull[(start + k) % hull.size()]);
    } else {
      ring = hull;
      ring.push_back(hull.front());  // wrap for an interior apex
    }
    for (std::size_t k = 0; k + 1 < ring.size() && !resolved; ++k) {
      const Eigen::Vector2d& v1 = ring[k];
      const Eigen::Vector2d& v2 = ring[k + 1];
      Eigen::Matrix2d basis;
      basis.col(0) = v1 - apex;
      basis.col(1) = v2 - apex;
      if (std::abs(basis.determinant()) < 1e-14) continue;
      const Eigen::Vector2d bc = basis.inverse() * (target - apex);
      const double wa = 1.0 - bc(0) - bc(1);
      if (bc(0) >= -1e-8 && bc(1) >= -1e-8 && wa >= -1e-8) {
        assign(corner_of(apex), std::max(wa, 0.0));
        assign(corner_of(v1), std::max(bc(0), 0.0));
        assign(corner_of(v2), std::max(bc(1), 0.0));
        resolved = true;
      }
    }
  }
  if (!resolved) throw std::logic_error("no containing triangle found for in-hull target");

  // Renormalize the clamped weights.
  const double total = weights.w00 + weights.w01 + weights.w10 + weights.w11;
  weights.w00 /= total;
  weights.w01 /= total;
  weights.w10 /= total;
  weights.w11 /= total;

  // A triangle touches at most three corner indices, so one stays zero.
  int omitted = -1;
  for (int c = 3; c >= 0 && omitted < 0; --c)
    if (weights[c] == 0.0) omitted = c;
  if (omitted < 0) throw std::logic_error("triangle weights touched all four corners");

  AchieveResult result{UnitaryStrategy::identity(), UnitaryStrategy::identity(), weights, omitted,
                       Eigen::Vector2d::Zero(), 0.0};
  std::tie(result.s1, result.s2) = caratheodory_profile(weights, omitted);
  result.achieved = ewl_payoff_closed_form(game, result.s1, result.s2);
  result.residual = (result.achieved - target).norm();
  return result;
}

void export_region(const RegionSample& sample, std::ostream& out, ExportFormat format) {
  if (sample.points.empty()) throw std::invalid_argument("cannot export an empty sample");
  if (format == ExportFormat::csv) {
    out << "x,y\n";
    for (const auto& p : sample.points)
      out << format_coord(p.x()) << ',' << format_coord(p.y()) << '\n';
    return;
  }

  // Schematic SVG: data bounding box plus a 5% margin mapped onto 800x800.
  Eigen::Vector2d lo = sample.points.front(), hi = sample.points.front();
  for (const auto& p : sample.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Eigen::Vector2d span = hi - lo;
  for (int k = 0; k < 2; ++k)
    if (span(k) <= 0.0) span(k) = 1.0;
  lo -= 0.05 * span;
  hi += 0.05 * span;
  span = hi - lo;
  auto sx = [&](double x) { return format_coord(800.0 * (x - lo.x()) / span.x()); };
  auto sy = [&](double y) { return format_coord(800.0 * (hi.y() - y) / span.y()); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  out << "<text x=\"400\" y=\"795\" text-anchor=\"middle\">Player 1</text>\n";
  out << "<text x=\"12\" y=\"400\" text-anchor=\"middle\" transform=\"rotate(-90 12 400)\">"
         "Player 2</text>\n";
  for (const auto& p : sample.points)
    out << "<circle cx=\"" << sx(p.x()) << "\" cy=\"" << sy(p.y()) << "\" r=\"1\"/>\n";
  if (!sample.hull.empty()) {
    out << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (const auto& v : sample.hull) out << sx(v.x()) << ',' << sy(v.y()) << ' ';
    out << sx(sample.hull.front().x()) << ',' << sy(sample.hull.front().y());
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

void export_region(const RegionSample& sample, const std::string& path, ExportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  export_region(sample, out, format);
}

}  // namespace ewl
