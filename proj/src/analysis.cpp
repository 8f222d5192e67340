#include "ewl/analysis.hpp"

#include "ewl/literal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ewl {

namespace {

bool angle_close(double a, double b, double tol) {
  const double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
  return std::min(d, 2.0 * M_PI - d) <= tol;
}

bool has_free_theta(StrategySetKind kind) {
  return kind != StrategySetKind::finite;
}

bool has_free_alpha(StrategySetKind kind) {
  return kind == StrategySetKind::full_three_parameter;
}

bool has_free_beta(StrategySetKind kind) {
  return kind == StrategySetKind::full_two_parameter ||
         kind == StrategySetKind::full_three_parameter;
}

double payoff_of(const BimatrixGame& game, int player, const MixedUnitaryStrategy& opponent,
                 const UnitaryStrategy& candidate) {
  double value = 0.0;
  for (const auto& [p, opp] : opponent.atoms) {
    const PayoffVector v = player == 1 ? ewl_payoff_closed_form(game, candidate, opp)
                                       : ewl_payoff_closed_form(game, opp, candidate);
    value += p * v(player - 1);
  }
  return value;
}

struct ParamPoint {
  double theta, alpha, beta;
};

bool same_matrix(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  return x.rows() == y.rows() && x.cols() == y.cols() &&
         (x - y).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

StrategySetSpec StrategySetSpec::one_parameter(int grid) {
  StrategySetSpec set;
  set.kind = StrategySetKind::one_parameter;
  set.theta_resolution = grid;
  return set;
}

StrategySetSpec StrategySetSpec::finite(std::vector<UnitaryStrategy> members) {
  StrategySetSpec set;
  set.kind = StrategySetKind::finite;
  set.extras = std::move(members);
  return set;
}

StrategySetSpec StrategySetSpec::one_parameter_plus(std::vector<UnitaryStrategy> extras, int grid) {
  StrategySetSpec set;
  set.kind = StrategySetKind::one_parameter_plus_extras;
  set.extras = std::move(extras);
  set.theta_resolution = grid;
  return set;
}

StrategySetSpec StrategySetSpec::two_parameter(int grid) {
  StrategySetSpec set;
  set.kind = StrategySetKind::full_two_parameter;
  set.theta_resolution = grid;
  set.beta_resolution = 2 * (grid - 1) > 0 ? 2 * (grid - 1) : 2;
  return set;
}

StrategySetSpec StrategySetSpec::three_parameter(int grid) {
  StrategySetSpec set = two_parameter(grid);
  set.kind = StrategySetKind::full_three_parameter;
  set.alpha_resolution = set.beta_resolution;
  return set;
}

StrategySetSpec StrategySetSpec::classic_plus_quarter_turn(int grid) {
  return one_parameter_plus({UnitaryStrategy{M_PI / 2.0, 0.0, -M_PI / 2.0}}, grid);
}

void StrategySetSpec::validate() const {
  if (kind == StrategySetKind::finite) {
    if (extras.empty()) throw std::invalid_argument("finite strategy set is empty");
    return;
  }
  if (has_free_theta(kind) && theta_resolution < 2)
    throw std::invalid_argument("theta resolution must be at least 2");
  if (has_free_alpha(kind) && alpha_resolution < 2)
    throw std::invalid_argument("alpha resolution must be at least 2");
  if (has_free_beta(kind) && beta_resolution < 2)
    throw std::invalid_argument("beta resolution must be at least 2");
}

std::size_t StrategySetSpec::member_count() const {
  validate();
  std::size_t count = 1;
  if (has_free_theta(kind)) count *= static_cast<std::size_t>(theta_resolution);
  if (has_free_alpha(kind)) count *= static_cast<std::size_t>(alpha_resolution);
  if (has_free_beta(kind)) count *= static_cast<std::size_t>(beta_resolution);
  if (kind == StrategySetKind::finite) count = 0;
  return count + extras.size();
}

UnitaryStrategy StrategySetSpec::member(std::size_t k) const {
  std::size_t grid_count = member_count() - extras.size();
  if (k >= grid_count) {
    const std::size_t e = k - grid_count;
    if (e >= extras.size()) throw std::out_of_range("strategy set member index out of range");
    return extras[e];
  }
  // theta slowest, then alpha, then beta
  std::size_t rest = k;
  double beta = 0.0, alpha = 0.0;
  if (has_free_beta(kind)) {
    beta = 2.0 * M_PI * static_cast<double>(rest % static_cast<std::size_t>(beta_resolution)) /
           beta_resolution;
    rest /= static_cast<std::size_t>(beta_resolution);
  }
  if (has_free_alpha(kind)) {
    alpha = 2.0 * M_PI * static_cast<double>(rest % static_cast<std::size_t>(alpha_resolution)) /
            alpha_resolution;
    rest /= static_cast<std::size_t>(alpha_resolution);
  }
  const double theta = M_PI * static_cast<double>(rest) / (theta_resolution - 1);
  return {theta, alpha, beta};
}

bool StrategySetSpec::contains(const UnitaryStrategy& s, double tol) const {
  for (const auto& e : extras)
    if (angle_close(s.theta, e.theta, tol) && angle_close(s.alpha, e.alpha, tol) &&
        angle_close(s.beta, e.beta, tol))
      return true;
  switch (kind) {
    case StrategySetKind::finite:
      return false;
    case StrategySetKind::one_parameter:
    case StrategySetKind::one_parameter_plus_extras:
      return angle_close(s.alpha, 0.0, tol) && angle_close(s.beta, 0.0, tol);
    case StrategySetKind::full_two_parameter:
      return angle_close(s.alpha, 0.0, tol);
    case StrategySetKind::full_three_parameter:
      return true;
  }
  return false;
}

BimatrixGame build_extended_bimatrix(const BimatrixGame& game,
                                     const std::vector<UnitaryStrategy>& extras1,
                                     const std::vector<UnitaryStrategy>& extras2) {
  game.validate();
  if (game.rows() != 2 || game.cols() != 2)
    throw std::invalid_argument("extended bimatrix requires a 2x2 base game");

  auto make_axis = [](const std::vector<UnitaryStrategy>& extras) {
    std::vector<UnitaryStrategy> axis{UnitaryStrategy::identity(), UnitaryStrategy::pauli_x()};
    axis.insert(axis.end(), extras.begin(), extras.end());
    for (std::size_t i = 0; i < axis.size(); ++i)
      for (std::size_t j = i + 1; j < axis.size(); ++j)
        if (same_up_to_phase(su2_matrix(axis[i]), su2_matrix(axis[j]), 1e-10))
          throw std::invalid_argument("duplicate strategy in extended bimatrix: " +
                                      format_strategy(axis[j]));
    return axis;
  };
  const auto rows = make_axis(extras1);
  const auto cols = make_axis(extras2);

  BimatrixGame extended;
  extended.a.resize(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  extended.b.resizeLike(extended.a);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const PayoffVector v = ewl_payoff_closed_form(game, rows[i], cols[j]);
      extended.a(static_cast<Index>(i), static_cast<Index>(j)) = v(0);
      extended.b(static_cast<Index>(i), static_cast<Index>(j)) = v(1);
    }
  auto labels = [](const std::vector<UnitaryStrategy>& axis) {
    std::vector<std::string> out{"I", "iX"};
    for (std::size_t k = 2; k < axis.size(); ++k) out.push_back(format_strategy(axis[k]));
    return out;
  };
  extended.row_labels = labels(rows);
  extended.col_labels = labels(cols);
  extended.validate();
  return extended;
}

BestReply best_reply(const BimatrixGame& game, int player, const MixedUnitaryStrategy& opponent,
                     const StrategySetSpec& set) {
  game.validate();
  if (game.rows() != 2 || game.cols() != 2)
    throw std::invalid_argument("best_reply requires a 2x2 game");
  if (player != 1 && player != 2) throw std::invalid_argument("player must be 1 or 2");
  set.validate();
  opponent.validate();

  const std::size_t count = set.member_count();
  const std::size_t grid_count = count - set.extras.size();

  UnitaryStrategy best = set.member(0);
  double best_value = payoff_of(game, player, opponent, best);
  bool best_on_grid = grid_count > 0;
  for (std::size_t k = 1; k < count; ++k) {
    const UnitaryStrategy candidate = set.member(k);
    const double value = payoff_of(game, player, opponent, candidate);
    if (value > best_value) {
      best_value = value;
      best = candidate;
      best_on_grid = k < grid_count;
    }
  }

  // Local refinement: halve the grid step around the incumbent three times.
  // Extras have no neighborhood, so they are left as-is.
  if (best_on_grid && has_free_theta(set.kind)) {
    double h_theta = M_PI / (set.theta_resolution - 1);
    double h_alpha = has_free_alpha(set.kind) ? 2.0 * M_PI / set.alpha_resolution : 0.0;
    double h_beta = has_free_beta(set.kind) ? 2.0 * M_PI / set.beta_resolution : 0.0;
    ParamPoint incumbent{best.theta, best.alpha, best.beta};
    for (int round = 0; round < 3; ++round) {
      h_theta /= 2.0;
      h_alpha /= 2.0;
      h_beta /= 2.0;
      ParamPoint round_best = incumbent;
      double round_value = best_value;
      // dt/da/db ascending keeps the lex-smallest maximizer under strict
      // improvement.
      for (int dt = -1; dt <= 1; ++dt)
        for (int da = -1; da <= 1; ++da)
          for (int db = -1; db <= 1; ++db) {
            ParamPoint p{std::clamp(incumbent.theta + dt * h_theta, 0.0, M_PI),
                         incumbent.alpha + da * h_alpha, incumbent.beta + db * h_beta};
            const UnitaryStrategy candidate{p.theta, p.alpha, p.beta};
            const double value = payoff_of(game, player, opponent, candidate);
            if (value > round_value) {
              round_value = value;
              round_best = p;
            }
          }
      if (round_value > best_value) {
        best_value = round_value;
        incumbent = round_best;
      }
    }
    best = UnitaryStrategy{incumbent.theta, incumbent.alpha, incumbent.beta};
  }
  return {best_value, best};
}

BestReply best_reply(const BimatrixGame& game, int player, const UnitaryStrategy& opponent,
                     const StrategySetSpec& set) {
  return best_reply(game, player, MixedUnitaryStrategy::pure(opponent), set);
}

NashVerdict verify_nash_restricted(const BimatrixGame& game, const MixedUnitaryStrategy& s1,
                                   const MixedUnitaryStrategy& s2, const StrategySetSpec& set1,
                                   const StrategySetSpec& set2, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  s1.validate();
  s2.validate();
  for (const auto& [p, s] : s1.atoms)
    if (!set1.contains(s, 1e-9))
      throw std::invalid_argument("player 1 mixture atom outside the strategy set: " +
                                  format_strategy(s));
  for (const auto& [p, s] : s2.atoms)
    if (!set2.contains(s, 1e-9))
      throw std::invalid_argument("player 2 mixture atom outside the strategy set: " +
                                  format_strategy(s));

  NashVerdict verdict;
  verdict.strategy1 = s1;
  verdict.strategy2 = s2;
  verdict.grid = {std::max(set1.theta_resolution, set2.theta_resolution),
                  std::max(set1.alpha_resolution, set2.alpha_resolution),
                  std::max(set1.beta_resolution, set2.beta_resolution)};

  PayoffVector current = PayoffVector::Zero();
  for (const auto& [p1, u1] : s1.atoms)
    for (const auto& [p2, u2] : s2.atoms)
      current += p1 * p2 * ewl_payoff_closed_form(game, u1, u2);
  verdict.profile_payoff = current;

  // Payoffs are affine in each player's mixture, so pure deviations suffice.
  const BestReply reply1 = best_reply(game, 1, s2, set1);
  const BestReply reply2 = best_reply(game, 2, s1, set2);
  const double gain1 = reply1.value - current(0);
  const double gain2 = reply2.value - current(1);

  verdict.gain = std::max(gain1, gain2);
  if (verdict.gain > tol) {
    verdict.is_equilibrium = false;
    if (gain1 >= gain2) {
      verdict.deviating_player = 1;
      verdict.best_deviation = reply1.strategy;
    } else {
      verdict.deviating_player = 2;
      verdict.best_deviation = reply2.strategy;
    }
  }
  return verdict;
}

PureScanReport no_pure_equilibrium_scan(const BimatrixGame& game, const StrategySetSpec& set1,
                                        const StrategySetSpec& set2, double tol) {
  game.validate();
  if (game.rows() != 2 || game.cols() != 2)
    throw std::invalid_argument("pure scan requires a 2x2 game");
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  for (const auto* set : {&set1, &set2}) {
    set->validate();
    if (set->kind == StrategySetKind::full_two_parameter ||
        set->kind == StrategySetKind::full_three_parameter)
      throw std::invalid_argument("pure scan expects discrete or one-parameter sets");
  }

  const std::size_t n1 = set1.member_count();
  const std::size_t n2 = set2.member_count();
  Eigen::MatrixXd v1(static_cast<Index>(n1), static_cast<Index>(n2));
  Eigen::MatrixXd v2(static_cast<Index>(n1), static_cast<Index>(n2));
  for (std::size_t i = 0; i < n1; ++i) {
    const UnitaryStrategy a = set1.member(i);
    for (std::size_t j = 0; j < n2; ++j) {
      const PayoffVector v = ewl_payoff_closed_form(game, a, set2.member(j));
      v1(static_cast<Index>(i), static_cast<Index>(j)) = v(0);
      v2(static_cast<Index>(i), static_cast<Index>(j)) = v(1);
    }
  }
  const Eigen::RowVectorXd col_best = v1.colwise().maxCoeff();
  const Eigen::VectorXd row_best = v2.rowwise().maxCoeff();

  PureScanReport report;
  report.set_sizes = {n1, n2};
  report.tol = tol;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      const Index ii = static_cast<Index>(i), jj = static_cast<Index>(j);
      if (v1(ii, jj) >= col_best(jj) - tol && v2(ii, jj) >= row_best(ii) - tol)
        report.survivors.push_back({set1.member(i), set2.member(j), {v1(ii, jj), v2(ii, jj)}});
    }
  return report;
}

PayoffVector restricted_payoff_cases(const BimatrixGame& game, const UnitaryStrategy& s1,
                                     const UnitaryStrategy& s2) {
  const BimatrixGame mp = matching_pennies();
  if (!same_matrix(game.a, mp.a) || !same_matrix(game.b, mp.b))
    throw std::invalid_argument("case formula is specific to Matching Pennies");
  auto in_one_parameter = [&](const UnitaryStrategy& s) {
    return angle_close(s.alpha, 0.0, 1e-12) && angle_close(s.beta, 0.0, 1e-12);
  };
  auto is_quarter_turn = [&](const UnitaryStrategy& s) {
    return angle_close(s.theta, M_PI / 2.0, 1e-12) && angle_close(s.alpha, 0.0, 1e-12) &&
           angle_close(s.beta, -M_PI / 2.0, 1e-12);
  };
  for (const auto* s : {&s1, &s2})
    if (!in_one_parameter(*s) && !is_quarter_turn(*s))
      throw std::invalid_argument("strategy outside the extended one-parameter set: " +
                                  format_strategy(*s));

  double v1;
  if (in_one_parameter(s1) && in_one_parameter(s2))
    v1 = std::cos(s1.theta) * std::cos(s2.theta);
  else if (in_one_parameter(s1))
    v1 = -std::sin(s1.theta);
  else if (in_one_parameter(s2))
    v1 = -std::sin(s2.theta);
  else
    v1 = 0.0;
  return {v1, -v1};
}

}  // namespace ewl
