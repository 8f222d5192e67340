#include "ewl/nash.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ewl {

namespace {

constexpr double kTol = 1e-9;

std::string describe_support(const std::vector<Index>& rows, const std::vector<Index>& cols) {
  std::ostringstream out;
  out << "rows {";
  for (std::size_t k = 0; k < rows.size(); ++k) out << (k ? "," : "") << rows[k];
  out << "} cols {";
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
  out << "}";
  return out.str();
}

// Nonempty subsets of {0..n-1} in lexicographic order of their sorted
// index lists: {0}, {0,1}, {0,1,2}, ..., {0,2}, {1}, ...
std::vector<std::vector<Index>> lex_subsets(Index n) {
  std::vector<std::vector<Index>> subsets;
  std::vector<Index> current;
  auto recurse = [&](auto&& self, Index next) -> void {
    for (Index i = next; i < n; ++i) {
      current.push_back(i);
      subsets.push_back(current);
      self(self, i + 1);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return subsets;
}

struct IndifferenceSolution {
  Eigen::VectorXd weights;  // over the mixing player's support
  bool consistent = false;
  bool rank_deficient = false;
};

// Finds weights w on `own_support` making the opponent indifferent across
// `opp_support` under the opponent's payoff matrix slice: payoffs(i, j) is
// what the opponent earns from opponent-strategy j when we play i. Solves
//   payoffs^T w = v * 1,  sum w = 1
// in the minimal-norm least-squares sense so rank-deficient systems still
// give a deterministic representative.
IndifferenceSolution solve_indifference(const Eigen::MatrixXd& payoffs) {
  const Index ni = payoffs.rows();
  const Index nj = payoffs.cols();
  Eigen::MatrixXd system(nj + 1, ni + 1);
  system.setZero();
  system.topLeftCorner(nj, ni) = payoffs.transpose();
  system.topRightCorner(nj, 1).setConstant(-1.0);
  system.bottomLeftCorner(1, ni).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nj + 1);
  rhs(nj) = 1.0;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(system);
  Eigen::VectorXd solution = cod.solve(rhs);

  IndifferenceSolution out;
  out.weights = solution.head(ni);
  const double scale = std::max(1.0, payoffs.cwiseAbs().maxCoeff());
  out.consistent = (system * solution - rhs).cwiseAbs().maxCoeff() <= kTol * scale;
  out.rank_deficient = cod.rank() < system.cols();  // solution not unique
  return out;
}

MixedStrategy expand_support(const Eigen::VectorXd& weights, const std::vector<Index>& support,
                             Index size) {
  MixedStrategy full = MixedStrategy::Zero(size);
  for (std::size_t k = 0; k < support.size(); ++k) full(support[k]) = weights(static_cast<Index>(k));
  return full;
}

// Clamp tiny negatives from the solve and renormalize; genuine negatives
// invalidate the candidate.
bool clean_weights(MixedStrategy& w) {
  for (Index i = 0; i < w.size(); ++i) {
    if (w(i) < -kTol) return false;
    if (w(i) < 0.0) w(i) = 0.0;
  }
  const double total = w.sum();
  if (total <= 0.0) return false;
  w /= total;
  return true;
}

bool profiles_equal(const Equilibrium& a, const MixedStrategy& p, const MixedStrategy& q) {
  return (a.row_mix - p).cwiseAbs().maxCoeff() <= kTol &&
         (a.col_mix - q).cwiseAbs().maxCoeff() <= kTol;
}

}  // namespace

bool is_nash_pure(const BimatrixGame& game, Index i, Index j) {
  game.validate();
  if (i < 0 || i >= game.rows() || j < 0 || j >= game.cols())
    throw std::out_of_range("position out of range");
  for (Index k = 0; k < game.rows(); ++k)
    if (game.a(k, j) > game.a(i, j)) return false;
  for (Index l = 0; l < game.cols(); ++l)
    if (game.b(i, l) > game.b(i, j)) return false;
  return true;
}

bool is_nash_mixed(const BimatrixGame& game, const MixedStrategy& row_mix,
                   const MixedStrategy& col_mix, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  const PayoffVector current = expected_payoff(game, row_mix, col_mix);
  const Eigen::VectorXd row_values = game.a * col_mix;  // payoff of each pure row
  if (row_values.maxCoeff() > current(0) + tol) return false;
  const Eigen::VectorXd col_values = game.b.transpose() * row_mix;
  return col_values.maxCoeff() <= current(1) + tol;
}

EquilibriumAnalysis enumerate_equilibria(const BimatrixGame& game) {
  game.validate();
  if (game.rows() > 6 || game.cols() > 6)
    throw std::invalid_argument("enumerate_equilibria supports games up to 6x6");

  EquilibriumAnalysis analysis;
  const auto row_supports = lex_subsets(game.rows());
  const auto col_supports = lex_subsets(game.cols());

  for (const auto& rows : row_supports) {
    for (const auto& cols : col_supports) {
      const Index ni = static_cast<Index>(rows.size());
      const Index nj = static_cast<Index>(cols.size());
      Eigen::MatrixXd a_slice(ni, nj), b_slice(ni, nj);
      for (Index r = 0; r < ni; ++r)
        for (Index c = 0; c < nj; ++c) {
          a_slice(r, c) = game.a(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
          b_slice(r, c) = game.b(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
        }

      // Column mix makes player 1 indifferent across the row support; note
      // the transpose orientation of solve_indifference's input.
      const auto q_sol = solve_indifference(a_slice.transpose());
      const auto p_sol = solve_indifference(b_slice);
      if (!q_sol.consistent || !p_sol.consistent) {
        if (q_sol.rank_deficient || p_sol.rank_deficient)
          analysis.diagnostics.push_back("support " + describe_support(rows, cols) +
                                         ": degenerate indifference system, inconsistent; skipped");
        continue;
      }

      MixedStrategy p = expand_support(p_sol.weights, rows, game.rows());
      MixedStrategy q = expand_support(q_sol.weights, cols, game.cols());
      if (!clean_weights(p) || !clean_weights(q)) continue;
      if (!is_nash_mixed(game, p, q, kTol)) continue;

      if (q_sol.rank_deficient || p_sol.rank_deficient)
        analysis.diagnostics.push_back("support " + describe_support(rows, cols) +
                                       ": degenerate indifference system; minimal-norm representative used");

      bool duplicate = false;
      for (const auto& e : analysis.equilibria)
        if (profiles_equal(e, p, q)) {
          duplicate = true;
          break;
        }
      if (duplicate) continue;

      Equilibrium eq;
      eq.payoff = expected_payoff(game, p, q);
      eq.pure = p.maxCoeff() > 1.0 - kTol && q.maxCoeff() > 1.0 - kTol;
      eq.row_mix = std::move(p);
      eq.col_mix = std::move(q);
      analysis.equilibria.push_back(std::move(eq));
    }
  }
  return analysis;
}

}  // namespace ewl
