#pragma once

#include "ewl/game.hpp"
#include "ewl/quantum.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ewl {

enum class StrategySetKind {
  one_parameter,              // { U(theta,0,0) : theta in [0,pi] }
  finite,                     // extras only
  one_parameter_plus_extras,  // one-parameter family plus extras
  full_two_parameter,         // { U(theta,0,beta) }, beta free, alpha = 0
  full_three_parameter,       // all of SU(2)
};

/// A restricted unitary strategy set plus the grid used to search it.
/// Default resolutions put every multiple of pi/4 exactly on the grid.
struct StrategySetSpec {
  StrategySetKind kind = StrategySetKind::one_parameter;
  std::vector<UnitaryStrategy> extras;
  int theta_resolution = 721;   // points on [0, pi]
  int alpha_resolution = 1440;  // points on [0, 2pi)
  int beta_resolution = 1440;   // points on [0, 2pi)

  static StrategySetSpec one_parameter(int grid = 721);
  static StrategySetSpec finite(std::vector<UnitaryStrategy> members);
  static StrategySetSpec one_parameter_plus(std::vector<UnitaryStrategy> extras, int grid = 721);
  static StrategySetSpec two_parameter(int grid = 721);
  static StrategySetSpec three_parameter(int grid = 721);

  /// The one-parameter family extended with U(pi/2, 0, -pi/2).
  static StrategySetSpec classic_plus_quarter_turn(int grid = 721);

  /// Number of grid members; members are ordered with theta varying slowest,
  /// then alpha, then beta, with extras appended last.
  std::size_t member_count() const;
  UnitaryStrategy member(std::size_t k) const;

  /// Membership in the underlying (continuous) set, not just the grid.
  bool contains(const UnitaryStrategy& s, double tol) const;

  void validate() const;
};

/// Extends a 2x2 game with extra unitary strategies per player. Rows/columns
/// become {identity, iX} followed by the extras; every cell is the
/// closed-form payoff of the corresponding profile. Strategies duplicated up
/// to global phase are rejected.
BimatrixGame build_extended_bimatrix(const BimatrixGame& game,
                                     const std::vector<UnitaryStrategy>& extras1,
                                     const std::vector<UnitaryStrategy>& extras2);

struct BestReply {
  double value;
  UnitaryStrategy strategy;
};

/// Maximizes `player`'s closed-form payoff against a fixed opponent strategy
/// over the given set: full grid scan plus 3 rounds of bracket-halving
/// refinement around the incumbent. Ties prefer the lexicographically
/// smallest (theta, alpha, beta).
BestReply best_reply(const BimatrixGame& game, int player, const MixedUnitaryStrategy& opponent,
                     const StrategySetSpec& set);
BestReply best_reply(const BimatrixGame& game, int player, const UnitaryStrategy& opponent,
                     const StrategySetSpec& set);

struct NashVerdict {
  MixedUnitaryStrategy strategy1;
  MixedUnitaryStrategy strategy2;
  PayoffVector profile_payoff;
  bool is_equilibrium = true;
  int deviating_player = 0;  // 0 = none
  std::optional<UnitaryStrategy> best_deviation;
  double gain = 0.0;
  // Search certificate.
  std::array<int, 3> grid = {0, 0, 0};
  int refinement_rounds = 3;
};

/// Equilibrium check for a (possibly mixed) profile against restricted
/// strategy sets: the profile is an equilibrium iff neither player's best
/// reply over their set beats their current payoff by more than tol.
/// Mixture atoms must belong to the player's set; deviations are searched
/// over pure set members.
NashVerdict verify_nash_restricted(const BimatrixGame& game, const MixedUnitaryStrategy& s1,
                                   const MixedUnitaryStrategy& s2, const StrategySetSpec& set1,
                                   const StrategySetSpec& set2, double tol);

struct PureScanSurvivor {
  UnitaryStrategy s1;
  UnitaryStrategy s2;
  PayoffVector payoff;
};

struct PureScanReport {
  std::vector<PureScanSurvivor> survivors;
  std::array<std::size_t, 2> set_sizes;
  double tol;
};

/// Scans every pure grid profile of the two sets and reports the profiles
/// that no on-grid unilateral deviation improves by more than tol. Discrete
/// and one-parameter set kinds only.
PureScanReport no_pure_equilibrium_scan(const BimatrixGame& game, const StrategySetSpec& set1,
                                        const StrategySetSpec& set2, double tol);

/// Case-formula payoff for Matching Pennies when both strategies belong to
/// the one-parameter family extended with U(pi/2,0,-pi/2):
///   v1 = cos t1 cos t2 | -sin t1 | -sin t2 | 0, and v2 = -v1.
/// Serves as an independent cross-check of the closed form; other games are
/// rejected.
PayoffVector restricted_payoff_cases(const BimatrixGame& game, const UnitaryStrategy& s1,
                                     const UnitaryStrategy& s2);

}  // namespace ewl
