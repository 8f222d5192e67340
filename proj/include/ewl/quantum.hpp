#pragma once

#include "ewl/game.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace ewl {

using Complex = std::complex<double>;

/// An SU(2) strategy U(theta, alpha, beta):
///
///   [ e^{i alpha} cos(theta/2)    i e^{i beta} sin(theta/2) ]
///   [ i e^{-i beta} sin(theta/2)  e^{-i alpha} cos(theta/2) ]
///
/// theta must lie in [0, pi]; alpha and beta are stored normalized to
/// [0, 2pi), so negative inputs such as -pi/2 are accepted.
struct UnitaryStrategy {
  double theta;
  double alpha;
  double beta;

  UnitaryStrategy(double theta, double alpha, double beta);

  static UnitaryStrategy identity() { return {0.0, 0.0, 0.0}; }
  static UnitaryStrategy pauli_x() { return {M_PI, 0.0, 0.0}; }  // iX
};

Eigen::Matrix2cd su2_matrix(const UnitaryStrategy& s);

/// True if the two strategies induce the same matrix up to a global phase.
bool same_up_to_phase(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, double tol);

/// The n-qubit entangler J = (1 + i X^(x n)) / sqrt(2), 1 <= n <= 8.
Eigen::MatrixXcd entangler(int n);

/// Amplitudes over the 2^n computational basis states. Basis index packs the
/// player outcome bits player-1-major: label j1 j2 ... jn maps to the integer
/// with j1 as the most significant bit.
struct StateVector {
  int n_qubits;
  Eigen::VectorXcd amplitudes;
};

/// An n-player game with two pure strategies per player, stored as one
/// payoff vector of length 2^n per player (indexed like StateVector).
struct EwlGame {
  int players;
  std::vector<Eigen::VectorXd> payoffs;

  void validate() const;
  static EwlGame from_bimatrix(const BimatrixGame& game);
};

/// Diagonal payoff observable M_i of one player: expected payoff is the
/// probability-weighted sum of these basis weights.
struct PayoffObservable {
  Eigen::VectorXd weights;
};

PayoffObservable payoff_observable(const EwlGame& game, int player);

/// |Psi> = J^dag (U_1 x ... x U_n) J |0...0>.
StateVector final_state(const EwlGame& game, std::span<const UnitaryStrategy> strategies);

/// Born-rule outcome probabilities; entries below 1e-13 are dropped.
std::map<int, double> outcome_distribution(const StateVector& state);

/// tr(|Psi><Psi| M_i) for every player.
Eigen::VectorXd ewl_payoff(const EwlGame& game, std::span<const UnitaryStrategy> strategies);

/// Closed-form payoff of a 2x2 game: the four outcome coefficients
///
///   c00 = (cos(a1+a2) cos(t1/2) cos(t2/2) + sin(b1+b2) sin(t1/2) sin(t2/2))^2
///   c01 = (sin(a2-b1) sin(t1/2) cos(t2/2) + cos(a1-b2) cos(t1/2) sin(t2/2))^2
///   c10 = (cos(a2-b1) sin(t1/2) cos(t2/2) + sin(a1-b2) cos(t1/2) sin(t2/2))^2
///   c11 = (cos(b1+b2) sin(t1/2) sin(t2/2) - sin(a1+a2) cos(t1/2) cos(t2/2))^2
///
/// weight the corner payoffs.
PayoffVector ewl_payoff_closed_form(const BimatrixGame& game, const UnitaryStrategy& s1,
                                    const UnitaryStrategy& s2);

/// The four coefficients above, in index order 00, 01, 10, 11.
Eigen::Vector4d outcome_coefficients(const UnitaryStrategy& s1, const UnitaryStrategy& s2);

/// Finite probability mixture of unitary strategies.
struct MixedUnitaryStrategy {
  std::vector<std::pair<double, UnitaryStrategy>> atoms;

  void validate() const;
  static MixedUnitaryStrategy pure(const UnitaryStrategy& s) { return {{{1.0, s}}}; }

  /// p * identity + (1-p) * iX: the quantum counterpart of the classical
  /// mixed strategy [p, 1-p].
  static MixedUnitaryStrategy classical_mix(double p);
};

/// Expected payoff over the product distribution of the mixtures.
Eigen::VectorXd mixed_unitary_payoff(const EwlGame& game,
                                     std::span<const MixedUnitaryStrategy> strategies);

}  // namespace ewl
