#include "ewl/quantum.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ewl {

namespace {

constexpr Complex kI{0.0, 1.0};

double wrap_two_pi(double x) {
  double w = std::fmod(x, 2.0 * M_PI);
  if (w < 0.0) w += 2.0 * M_PI;
  return w;
}

void check_player_count(const EwlGame& game, std::size_t strategies) {
  if (strategies != static_cast<std::size_t>(game.players))
    throw std::invalid_argument("strategy count does not match player count");
}

}  // namespace

UnitaryStrategy::UnitaryStrategy(double theta_in, double alpha_in, double beta_in)
    : theta(theta_in), alpha(wrap_two_pi(alpha_in)), beta(wrap_two_pi(beta_in)) {
  if (!(theta >= -1e-12 && theta <= M_PI + 1e-12))
    throw std::invalid_argument("theta must lie in [0, pi]");
  theta = std::clamp(theta, 0.0, M_PI);
}

Eigen::Matrix2cd su2_matrix(const UnitaryStrategy& s) {
  const double c = std::cos(s.theta / 2.0);
  const double n = std::sin(s.theta / 2.0);
  Eigen::Matrix2cd u;
  u << std::exp(kI * s.alpha) * c, kI * std::exp(kI * s.beta) * n,
      kI * std::exp(-kI * s.beta) * n, std::exp(-kI * s.alpha) * c;
  return u;
}

bool same_up_to_phase(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, double tol) {
  const Complex overlap = (b.adjoint() * a).trace();
  if (std::abs(overlap) < tol) return false;
  const Complex phase = overlap / std::abs(overlap);
  return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXcd entangler(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("entangler: qubit count must be in [1, 8]");
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  Eigen::MatrixXcd xn = x;
  for (int k = 1; k < n; ++k) xn = Eigen::kroneckerProduct(xn, x).eval();
  const Index dim = Index(1) << n;
  return (Eigen::MatrixXcd::Identity(dim, dim) + kI * xn) / std::sqrt(2.0);
}

void EwlGame::validate() const {
  if (players < 1 || players > 8) throw std::invalid_argument("player count must be in [1, 8]");
  const Index dim = Index(1) << players;
  if (payoffs.size() != static_cast<std::size_t>(players))
    throw std::invalid_argument("one payoff vector per player required");
  for (const auto& p : payoffs) {
    if (p.size() != dim) throw std::invalid_argument("payoff tensor must have 2^n entries");
    if (!p.allFinite()) throw std::invalid_argument("payoff tensor has non-finite entry");
  }
}

EwlGame EwlGame::from_bimatrix(const BimatrixGame& game) {
  game.validate();
  if (game.rows() != 2 || game.cols() != 2)
    throw std::invalid_argument("EWL protocol requires a 2x2 game");
  EwlGame out;
  out.players = 2;
  Eigen::VectorXd a(4), b(4);
  a << game.a(0, 0), game.a(0, 1), game.a(1, 0), game.a(1, 1);
  b << game.b(0, 0), game.b(0, 1), game.b(1, 0), game.b(1, 1);
  out.payoffs = {a, b};
  return out;
}

PayoffObservable payoff_observable(const EwlGame& game, int player) {
  game.validate();
  if (player < 1 || player > game.players) throw std::out_of_range("player index out of range");
  return {game.payoffs[static_cast<std::size_t>(player - 1)]};
}

StateVector final_state(const EwlGame& game, std::span<const UnitaryStrategy> strategies) {
  game.validate();
  check_player_count(game, strategies.size());
  const Eigen::MatrixXcd j = entangler(game.players);

  Eigen::MatrixXcd u = su2_matrix(strategies[0]);
  for (std::size_t k = 1; k < strategies.size(); ++k)
    u = Eigen::kroneckerProduct(u, su2_matrix(strategies[k])).eval();

  StateVector state;
  state.n_qubits = game.players;
  state.amplitudes = j.adjoint() * (u * j.col(0));  // J |0...0> is J's first column
  return state;
}

std::map<int, double> outcome_distribution(const StateVector& state) {
  std::map<int, double> dist;
  for (Index k = 0; k < state.amplitudes.size(); ++k) {
    const double p = std::norm(state.amplitudes(k));
    if (p > 1e-13) dist[static_cast<int>(k)] = p;
  }
  return dist;
}

Eigen::VectorXd ewl_payoff(const EwlGame& game, std::span<const UnitaryStrategy> strategies) {
  const StateVector state = final_state(game, strategies);
  const Eigen::VectorXd probabilities = state.amplitudes.cwiseAbs2();
  Eigen::VectorXd out(game.players);
  for (int i = 0; i < game.players; ++i)
    out(i) = probabilities.dot(game.payoffs[static_cast<std::size_t>(i)]);
  return out;
}

Eigen::Vector4d outcome_coefficients(const UnitaryStrategy& s1, const UnitaryStrategy& s2) {
  const double c1 = std::cos(s1.theta / 2.0), n1 = std::sin(s1.theta / 2.0);
  const double c2 = std::cos(s2.theta / 2.0), n2 = std::sin(s2.theta / 2.0);
  const double a1 = s1.alpha, b1 = s1.beta;
  const double a2 = s2.alpha, b2 = s2.beta;
  const double r00 = std::cos(a1 + a2) * c1 * c2 + std::sin(b1 + b2) * n1 * n2;
  const double r01 = std::sin(a2 - b1) * n1 * c2 + std::cos(a1 - b2) * c1 * n2;
  const double r10 = std::cos(a2 - b1) * n1 * c2 + std::sin(a1 - b2) * c1 * n2;
  const double r11 = std::cos(b1 + b2) * n1 * n2 - std::sin(a1 + a2) * c1 * c2;
  return {r00 * r00, r01 * r01, r10 * r10, r11 * r11};
}

PayoffVector ewl_payoff_closed_form(const BimatrixGame& game, const UnitaryStrategy& s1,
                                    const UnitaryStrategy& s2) {
  game.validate();
  if (game.rows() != 2 || game.cols() != 2)
    throw std::invalid_argument("closed form requires a 2x2 game");
  const Eigen::Vector4d c = outcome_coefficients(s1, s2);
  PayoffVector v = PayoffVector::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v += c(2 * i + j) * game.at(i, j);
  return v;
}

void MixedUnitaryStrategy::validate() const {
  if (atoms.empty()) throw std::invalid_argument("mixture must have at least one atom");
  double total = 0.0;
  for (const auto& [p, s] : atoms) {
    if (p < 0.0) throw std::invalid_argument("mixture probability is negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixture probabilities do not sum to 1");
}

MixedUnitaryStrategy MixedUnitaryStrategy::classical_mix(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("mixing probability outside [0, 1]");
  return {{{p, UnitaryStrategy::identity()}, {1.0 - p, UnitaryStrategy::pauli_x()}}};
}

Eigen::VectorXd mixed_unitary_payoff(const EwlGame& game,
                                     std::span<const MixedUnitaryStrategy> strategies) {
  game.validate();
  check_player_count(game, strategies.size());
  for (const auto& s : strategies) s.validate();

  Eigen::VectorXd total = Eigen::VectorXd::Zero(game.players);
  std::vector<UnitaryStrategy> pure;
  pure.reserve(strategies.size());
  std::vector<std::size_t> choice(strategies.size(), 0);
  // Product distribution over the finite mixtures.
  while (true) {
    double weight = 1.0;
    pure.clear();
    for (std::size_t i = 0; i < strategies.size(); ++i) {
      const auto& [p, s] = strategies[i].atoms[choice[i]];
      weight *= p;
      pure.push_back(s);
    }
    if (weight > 0.0) total += weight * ewl_payoff(game, pure);

    std::size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (++choice[i] < strategies[i].atoms.size()) break;
      choice[i] = 0;
    }
    if (i == choice.size()) break;
  }
  return total;
}

}  // namespace ewl
