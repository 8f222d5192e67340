#pragma once

#include "ewl/game.hpp"

namespace ewl {

struct Equilibrium {
  MixedStrategy row_mix;
  MixedStrategy col_mix;
  PayoffVector payoff;
  bool pure = false;
};

struct EquilibriumAnalysis {
  std::vector<Equilibrium> equilibria;
  /// Notes about supports whose indifference systems were rank-deficient
  /// (a minimal-norm representative was used) or inconsistent.
  std::vector<std::string> diagnostics;
};

/// Weak-inequality pure Nash test at 0-indexed position (i, j).
bool is_nash_pure(const BimatrixGame& game, Index i, Index j);

/// True iff no unilateral pure deviation improves either player's expected
/// payoff by more than tol.
bool is_nash_mixed(const BimatrixGame& game, const MixedStrategy& row_mix,
                   const MixedStrategy& col_mix, double tol);

/// Support enumeration for games up to 6x6. Returns all pure equilibria and
/// one representative mixed equilibrium per support pair whose indifference
/// system admits a solution passing nonnegativity and best-reply checks
/// (tol 1e-9). Supports are enumerated in lexicographic order; duplicate
/// profiles are dropped.
EquilibriumAnalysis enumerate_equilibria(const BimatrixGame& game);

}  // namespace ewl
