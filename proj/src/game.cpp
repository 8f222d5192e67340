#include "ewl/game.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ewl {

namespace {

void check_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

void check_labels(const std::vector<std::string>& labels, Index n, const char* axis) {
  if (labels.empty()) return;
  if (static_cast<Index>(labels.size()) != n)
    throw std::invalid_argument(std::string("label count does not match ") + axis);
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<Index>(seen.size()) != n)
    throw std::invalid_argument(std::string("duplicate ") + axis + " label");
}

void check_mixed(const MixedStrategy& w, Index expected, const char* who) {
  if (w.size() != expected)
    throw std::invalid_argument(std::string(who) + ": strategy dimension mismatch");
  if (w.minCoeff() < 0.0)
    throw std::invalid_argument(std::string(who) + ": negative strategy weight");
  if (std::abs(w.sum() - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(who) + ": strategy weights do not sum to 1");
}

std::vector<std::string> default_labels(Index n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

void BimatrixGame::validate() const {
  if (a.rows() < 2 || a.cols() < 2) throw std::invalid_argument("game must be at least 2x2");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("payoff matrices differ in shape");
  check_finite(a, "player 1 payoffs");
  check_finite(b, "player 2 payoffs");
  check_labels(row_labels, rows(), "rows");
  check_labels(col_labels, cols(), "cols");
}

BimatrixGame BimatrixGame::from_payoffs(Eigen::MatrixXd a, Eigen::MatrixXd b) {
  BimatrixGame game{std::move(a), std::move(b), {}, {}};
  game.row_labels = default_labels(game.rows());
  game.col_labels = default_labels(game.cols());
  game.validate();
  return game;
}

BimatrixGame prisoners_dilemma() {
  Eigen::Matrix2d a, b;
  a << 3, 0, 5, 1;
  b << 3, 5, 0, 1;
  return BimatrixGame::from_payoffs(a, b);
}

BimatrixGame matching_pennies() {
  Eigen::Matrix2d a, b;
  a << 1, -1, -1, 1;
  b << -1, 1, 1, -1;
  return BimatrixGame::from_payoffs(a, b);
}

BimatrixGame battle_of_sexes() {
  Eigen::Matrix2d a, b;
  a << 4, 0, 0, 2;
  b << 2, 0, 0, 4;
  return BimatrixGame::from_payoffs(a, b);
}

PayoffVector expected_payoff(const BimatrixGame& game, const MixedStrategy& row_mix,
                             const MixedStrategy& col_mix) {
  game.validate();
  check_mixed(row_mix, game.rows(), "row player");
  check_mixed(col_mix, game.cols(), "column player");
  return {row_mix.dot(game.a * col_mix), row_mix.dot(game.b * col_mix)};
}

PayoffVector correlated_payoff(const BimatrixGame& game, const CorrelatedStrategy& joint) {
  game.validate();
  if (joint.rows() != game.rows() || joint.cols() != game.cols())
    throw std::invalid_argument("joint distribution dimension mismatch");
  if (joint.minCoeff() < 0.0) throw std::invalid_argument("joint distribution has negative entry");
  if (std::abs(joint.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("joint distribution does not sum to 1");
  return {(joint.array() * game.a.array()).sum(), (joint.array() * game.b.array()).sum()};
}

MixedStrategy point_mass(Index i, Index size) {
  if (i < 0 || i >= size) throw std::out_of_range("point mass index out of range");
  MixedStrategy w = MixedStrategy::Zero(size);
  w(i) = 1.0;
  return w;
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

}  // namespace

BimatrixGame read_game(std::istream& in) {
  std::string line;
  Index m = -1, n = -1;
  Eigen::MatrixXd a, b;
  Index next_row = 0;
  std::vector<std::string> row_labels, col_labels;

  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("game file line " + std::to_string(line_no) + ": " + msg);
    };
    if (line.rfind("#rows:", 0) == 0) {
      row_labels = split_tokens(line.substr(6));
      continue;
    }
    if (line.rfind("#cols:", 0) == 0) {
      col_labels = split_tokens(line.substr(6));
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (m < 0) {
      if (tokens.size() != 2) fail("expected header \"m n\"");
      try {
        m = std::stol(tokens[0]);
        n = std::stol(tokens[1]);
      } catch (const std::exception&) {
        fail("bad dimension in header");
      }
      if (m < 2 || n < 2) fail("dimensions must be at least 2");
      a.resize(m, n);
      b.resize(m, n);
      continue;
    }
    if (next_row >= m) fail("unexpected extra matrix row");
    if (static_cast<Index>(tokens.size()) != n)
      fail("expected " + std::to_string(n) + " entries");
    for (Index j = 0; j < n; ++j) {
      const auto& tok = tokens[static_cast<std::size_t>(j)];
      auto colon = tok.find(':');
      if (colon == std::string::npos) fail("entry \"" + tok + "\" is not of the form a:b");
      try {
        std::size_t used = 0;
        a(next_row, j) = std::stod(tok.substr(0, colon), &used);
        if (used != colon) fail("bad number in \"" + tok + "\"");
        b(next_row, j) = std::stod(tok.substr(colon + 1), &used);
        if (used != tok.size() - colon - 1) fail("bad number in \"" + tok + "\"");
      } catch (const std::invalid_argument&) {
        throw;
      } catch (const std::exception&) {
        fail("bad number in \"" + tok + "\"");
      }
    }
    ++next_row;
  }
  if (m < 0) throw std::invalid_argument("game file: missing header");
  if (next_row != m) throw std::invalid_argument("game file: missing matrix rows");

  BimatrixGame game = BimatrixGame::from_payoffs(std::move(a), std::move(b));
  if (!row_labels.empty()) game.row_labels = row_labels;
  if (!col_labels.empty()) game.col_labels = col_labels;
  game.validate();
  return game;
}

BimatrixGame read_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game file: " + path);
  return read_game(in);
}

}  // namespace ewl
