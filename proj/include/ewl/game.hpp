#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace ewl {

using Index = Eigen::Index;

/// Player payoffs for a single outcome; component k is player k+1's payoff.
using PayoffVector = Eigen::Vector2d;

/// Probability distribution over one player's pure strategies.
using MixedStrategy = Eigen::VectorXd;

/// Joint probability distribution over pure-strategy profiles.
using CorrelatedStrategy = Eigen::MatrixXd;

/// Two-player strategic-form game stored as a pair of m-by-n payoff
/// matrices: a(i,j) is player 1's payoff, b(i,j) player 2's.
struct BimatrixGame {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }

  PayoffVector at(Index i, Index j) const { return {a(i, j), b(i, j)}; }

  /// Throws std::invalid_argument unless both matrices are m>=2 by n>=2,
  /// same shape, all entries finite and labels (when present) unique.
  void validate() const;

  /// Builds a game with default labels "0", "1", ...
  static BimatrixGame from_payoffs(Eigen::MatrixXd a, Eigen::MatrixXd b);
};

// The three reference games used throughout the test suite and the CLI.
BimatrixGame prisoners_dilemma();  // (3,3) (0,5) / (5,0) (1,1)
BimatrixGame matching_pennies();   // (1,-1) (-1,1) / (-1,1) (1,-1)
BimatrixGame battle_of_sexes();    // (4,2) (0,0) / (0,0) (2,4)

/// Expected payoffs under independent mixed strategies.
PayoffVector expected_payoff(const BimatrixGame& game, const MixedStrategy& row_mix,
                             const MixedStrategy& col_mix);

/// Expected payoffs under a joint distribution over outcomes.
PayoffVector correlated_payoff(const BimatrixGame& game, const CorrelatedStrategy& joint);

MixedStrategy point_mass(Index i, Index size);

/// Reads the plain text game format:
///   line 1: "m n", then m rows of n "a:b" entries separated by whitespace.
///   Optional lines "#rows: l1 l2 ..." / "#cols: ..." set labels; other
///   "#" lines are comments.
BimatrixGame read_game(std::istream& in);
BimatrixGame read_game_file(const std::string& path);

}  // namespace ewl
