#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ewl/game.hpp"
#include "ewl/quantum.hpp"

#include <cmath>
#include <random>

using namespace ewl;

namespace {

UnitaryStrategy random_strategy(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  return {u01(rng) * M_PI, u01(rng) * 2.0 * M_PI, u01(rng) * 2.0 * M_PI};
}

BimatrixGame random_2x2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> payoff(-5.0, 5.0);
  Eigen::Matrix2d a, b;
  a << payoff(rng), payoff(rng), payoff(rng), payoff(rng);
  b << payoff(rng), payoff(rng), payoff(rng), payoff(rng);
  return BimatrixGame::from_payoffs(a, b);
}

const UnitaryStrategy kQuarterTurn{M_PI / 2.0, 0.0, -M_PI / 2.0};

}  // namespace

TEST_CASE("su2 matrix special values") {
  CHECK(su2_matrix(UnitaryStrategy::identity()).isApprox(Eigen::Matrix2cd::Identity(), 1e-15));

  Eigen::Matrix2cd ix;
  ix << 0.0, Complex(0, 1), Complex(0, 1), 0.0;
  CHECK((su2_matrix(UnitaryStrategy::pauli_x()) - ix).cwiseAbs().maxCoeff() <= 1e-15);

  const double r = std::sqrt(0.5);
  Eigen::Matrix2cd expected;
  expected << r, r, -r, r;
  CHECK((su2_matrix(kQuarterTurn) - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("su2 matrices are special unitary") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Matrix2cd u = su2_matrix(random_strategy(rng));
    CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(u.determinant() - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(UnitaryStrategy(-0.1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(UnitaryStrategy(3.2, 0, 0), std::invalid_argument);
}

TEST_CASE("entangler") {
  const Eigen::MatrixXcd j1 = entangler(1);
  Eigen::Matrix2cd expected;
  const double r = std::sqrt(0.5);
  expected << r, Complex(0, r), Complex(0, r), r;
  CHECK((j1 - expected).cwiseAbs().maxCoeff() <= 1e-15);

  const Eigen::MatrixXcd j2 = entangler(2);
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(4);
  zero(0) = 1.0;
  const Eigen::VectorXcd bell = j2 * zero;
  CHECK(std::abs(bell(0) - Complex(r, 0)) <= 1e-15);
  CHECK(std::abs(bell(3) - Complex(0, r)) <= 1e-15);
  CHECK(std::abs(bell(1)) + std::abs(bell(2)) <= 1e-15);

  for (int n : {2, 3}) {
    const Eigen::MatrixXcd j = entangler(n);
    const Index dim = Index(1) << n;
    CHECK((j.adjoint() * j - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() <=
          1e-12);
  }
  CHECK_THROWS_AS(entangler(0), std::invalid_argument);
  CHECK_THROWS_AS(entangler(9), std::invalid_argument);
}

TEST_CASE("final state of reference profiles") {
  const auto game = EwlGame::from_bimatrix(matching_pennies());

  const UnitaryStrategy id = UnitaryStrategy::identity();
  const std::vector<UnitaryStrategy> both_id = {id, id};
  const StateVector s0 = final_state(game, both_id);
  CHECK(std::abs(s0.amplitudes(0) - 1.0) <= 1e-12);

  const std::vector<UnitaryStrategy> beats = {kQuarterTurn, {M_PI / 2.0, 0.0, 0.0}};
  const StateVector s1 = final_state(game, beats);
  CHECK(std::abs(std::abs(s1.amplitudes(1)) - 1.0) <= 1e-10);  // |01> up to phase

  const std::vector<UnitaryStrategy> half = {kQuarterTurn, id};
  const StateVector s2 = final_state(game, half);
  CHECK(std::norm(s2.amplitudes(0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::norm(s2.amplitudes(1)) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(final_state(game, std::vector<UnitaryStrategy>{id}), std::invalid_argument);
}

TEST_CASE("one-parameter strategies embed classical mixing for three players") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> payoff(-3.0, 3.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  EwlGame game;
  game.players = 3;
  for (int player = 0; player < 3; ++player) {
    Eigen::VectorXd w(8);
    for (Index k = 0; k < 8; ++k) w(k) = payoff(rng);
    game.payoffs.push_back(w);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const double p[3] = {u01(rng), u01(rng), u01(rng)};
    std::vector<UnitaryStrategy> profile;
    for (double x : p) profile.push_back({2.0 * std::acos(std::sqrt(x)), 0.0, 0.0});
    const Eigen::VectorXd quantum = ewl_payoff(game, profile);
    // oracle: product distribution over the 8 outcomes
    Eigen::VectorXd classical = Eigen::VectorXd::Zero(3);
    for (int b = 0; b < 8; ++b) {
      double prob = 1.0;
      for (int i = 0; i < 3; ++i) prob *= (b >> (2 - i)) & 1 ? 1.0 - p[i] : p[i];
      for (int player = 0; player < 3; ++player)
        classical(player) += prob * game.payoffs[static_cast<std::size_t>(player)](b);
    }
    CHECK((quantum - classical).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("final state stays normalized for 2 to 4 players") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> payoff(-3.0, 3.0);
  for (int n : {2, 3, 4}) {
    EwlGame game;
    game.players = n;
    for (int player = 0; player < n; ++player) {
      Eigen::VectorXd w(Index(1) << n);
      for (Index k = 0; k < w.size(); ++k) w(k) = payoff(rng);
      game.payoffs.push_back(w);
    }
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<UnitaryStrategy> profile;
      for (int k = 0; k < n; ++k) profile.push_back(random_strategy(rng));
      const StateVector state = final_state(game, profile);
      CHECK(std::abs(state.amplitudes.norm() - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("outcome distributions") {
  const auto game = EwlGame::from_bimatrix(matching_pennies());
  const UnitaryStrategy id = UnitaryStrategy::identity();

  auto dist = outcome_distribution(final_state(game, std::vector<UnitaryStrategy>{id, id}));
  REQUIRE(dist.size() == 1);
  CHECK(dist.at(0) == doctest::Approx(1.0).epsilon(1e-12));

  dist = outcome_distribution(final_state(game, std::vector<UnitaryStrategy>{kQuarterTurn, id}));
  REQUIRE(dist.size() == 2);
  CHECK(dist.at(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.at(1) == doctest::Approx(0.5).epsilon(1e-12));

  dist = outcome_distribution(
      final_state(game, std::vector<UnitaryStrategy>{kQuarterTurn, {M_PI / 2.0, 0.0, 0.0}}));
  REQUIRE(dist.size() == 1);
  CHECK(dist.at(1) == doctest::Approx(1.0).epsilon(1e-12));

  double total = 0.0;
  for (const auto& [k, p] : dist) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("payoff observables carry the classical payoffs") {
  const auto game = EwlGame::from_bimatrix(prisoners_dilemma());
  const PayoffObservable m1 = payoff_observable(game, 1);
  Eigen::VectorXd expected(4);
  expected << 3, 0, 5, 1;
  CHECK(m1.weights == expected);
  expected << 3, 5, 0, 1;
  CHECK(payoff_observable(game, 2).weights == expected);
  CHECK_THROWS_AS(payoff_observable(game, 3), std::out_of_range);
}

TEST_CASE("ewl payoffs on reference profiles") {
  const auto mp = EwlGame::from_bimatrix(matching_pennies());
  const auto pd = EwlGame::from_bimatrix(prisoners_dilemma());

  Eigen::VectorXd v = ewl_payoff(mp, std::vector<UnitaryStrategy>{kQuarterTurn, kQuarterTurn});
  CHECK(v(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v(1) == doctest::Approx(0.0).epsilon(1e-12));

  v = ewl_payoff(mp, std::vector<UnitaryStrategy>{kQuarterTurn, {M_PI / 2.0, 0.0, 0.0}});
  CHECK(v(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(v(1) == doctest::Approx(1.0).epsilon(1e-12));

  v = ewl_payoff(pd, std::vector<UnitaryStrategy>{kQuarterTurn, kQuarterTurn});
  CHECK(v(0) == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(v(1) == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("closed form on reference profiles") {
  const auto bos = battle_of_sexes();
  const PayoffVector three = ewl_payoff_closed_form(bos, {0.0, M_PI / 8.0, 0.0},
                                                    {0.0, M_PI / 8.0, 0.0});
  CHECK(three(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(three(1) == doctest::Approx(3.0).epsilon(1e-12));

  // the (4, 3/2) cell sits at (iX, U(pi/2,0,-pi/2)); the transpose cell is
  // (3/2, 4)
  const auto pd = prisoners_dilemma();
  const PayoffVector right = ewl_payoff_closed_form(pd, UnitaryStrategy::pauli_x(), kQuarterTurn);
  CHECK(right(0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(right(1) == doctest::Approx(1.5).epsilon(1e-12));
  const PayoffVector left = ewl_payoff_closed_form(pd, kQuarterTurn, UnitaryStrategy::pauli_x());
  CHECK(left(0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(left(1) == doctest::Approx(4.0).epsilon(1e-12));

  std::mt19937_64 rng(13);
  const auto g = random_2x2(rng);
  const PayoffVector corner = ewl_payoff_closed_form(g, UnitaryStrategy::identity(),
                                                     UnitaryStrategy::identity());
  CHECK(corner == g.at(0, 0));
}

TEST_CASE("closed form matches the circuit evaluation") {
  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = random_2x2(rng);
    const auto game = EwlGame::from_bimatrix(g);
    const UnitaryStrategy s1 = random_strategy(rng), s2 = random_strategy(rng);
    const PayoffVector closed = ewl_payoff_closed_form(g, s1, s2);
    const Eigen::VectorXd circuit = ewl_payoff(game, std::vector<UnitaryStrategy>{s1, s2});
    worst = std::max(worst, (closed - PayoffVector(circuit(0), circuit(1))).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("outcome coefficients form a distribution") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Vector4d c = outcome_coefficients(random_strategy(rng), random_strategy(rng));
    CHECK(c.minCoeff() >= 0.0);
    CHECK(c.maxCoeff() <= 1.0 + 1e-15);
    CHECK(std::abs(c.sum() - 1.0) <= 1e-12);
  }
}

TEST_CASE("one-parameter strategies embed the classical mixed extension") {
  std::mt19937_64 rng(23);
  const auto games = {prisoners_dilemma(), matching_pennies(), battle_of_sexes(),
                      random_2x2(rng)};
  for (const auto& g : games) {
    const auto game = EwlGame::from_bimatrix(g);
    double worst_pure = 0.0, worst_mixed = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double p = i / 100.0;
      for (int j = 0; j <= 100; ++j) {
        const double q = j / 100.0;
        MixedStrategy pm(2), qm(2);
        pm << p, 1.0 - p;
        qm << q, 1.0 - q;
        const PayoffVector classical = expected_payoff(g, pm, qm);

        const UnitaryStrategy u1{2.0 * std::acos(std::sqrt(p)), 0.0, 0.0};
        const UnitaryStrategy u2{2.0 * std::acos(std::sqrt(q)), 0.0, 0.0};
        const PayoffVector quantum = ewl_payoff_closed_form(g, u1, u2);
        worst_pure = std::max(worst_pure, (quantum - classical).cwiseAbs().maxCoeff());

        const std::vector<MixedUnitaryStrategy> ops = {MixedUnitaryStrategy::classical_mix(p),
                                                       MixedUnitaryStrategy::classical_mix(q)};
        const Eigen::VectorXd mixed = mixed_unitary_payoff(game, ops);
        worst_mixed = std::max(
            worst_mixed, (PayoffVector(mixed(0), mixed(1)) - classical).cwiseAbs().maxCoeff());
      }
    }
    CHECK(worst_pure <= 1e-12);
    CHECK(worst_mixed <= 1e-12);
  }
}

TEST_CASE("classical mixtures cannot see U(pi/2,0,pi/2)") {
  std::mt19937_64 rng(29);
  const UnitaryStrategy probe{M_PI / 2.0, 0.0, M_PI / 2.0};
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_2x2(rng);
    const auto game = EwlGame::from_bimatrix(g);
    const double blind = (g.a(0, 0) + g.a(1, 0)) / 2.0;

    const int grid = 101;
    std::vector<double> values(grid);
    for (int i = 0; i < grid; ++i) {
      const double p = static_cast<double>(i) / (grid - 1);
      const std::vector<MixedUnitaryStrategy> ops = {MixedUnitaryStrategy::classical_mix(p),
                                                     MixedUnitaryStrategy::pure(probe)};
      values[i] = mixed_unitary_payoff(game, ops)(0);
      CHECK(std::abs(values[i] - blind) <= 1e-12);
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= grid;
    double variance = 0.0;
    for (double v : values) variance += (v - mean) * (v - mean);
    variance /= grid;
    CHECK(variance < 1e-24);

    // the one-parameter counterpart shows interference
    for (int i = 0; i < grid; ++i) {
      const double p = static_cast<double>(i) / (grid - 1);
      const UnitaryStrategy u1{2.0 * std::acos(std::sqrt(p)), 0.0, 0.0};
      const double v1 = ewl_payoff_closed_form(g, u1, probe)(0);
      const double cross = std::sqrt(p) * std::sqrt(1.0 - p);
      const double expected = (0.5 + cross) * g.a(0, 0) + (0.5 - cross) * g.a(1, 0);
      CHECK(std::abs(v1 - expected) <= 1e-12);
    }
  }
}

TEST_CASE("mixed unitary payoffs") {
  const auto mp = EwlGame::from_bimatrix(matching_pennies());

  // point masses reduce to the pure evaluation
  std::mt19937_64 rng(31);
  const UnitaryStrategy s1 = random_strategy(rng), s2 = random_strategy(rng);
  const std::vector<MixedUnitaryStrategy> pure_ops = {MixedUnitaryStrategy::pure(s1),
                                                      MixedUnitaryStrategy::pure(s2)};
  const Eigen::VectorXd from_mix = mixed_unitary_payoff(mp, pure_ops);
  const Eigen::VectorXd direct = ewl_payoff(mp, std::vector<UnitaryStrategy>{s1, s2});
  CHECK((from_mix - direct).cwiseAbs().maxCoeff() <= 1e-14);

  const std::vector<MixedUnitaryStrategy> third_column = {
      MixedUnitaryStrategy::classical_mix(0.5), MixedUnitaryStrategy::pure(kQuarterTurn)};
  const Eigen::VectorXd v = mixed_unitary_payoff(mp, third_column);
  CHECK(std::abs(v(0)) <= 1e-12);
  CHECK(std::abs(v(1)) <= 1e-12);

  MixedUnitaryStrategy broken;
  broken.atoms = {{0.7, s1}, {0.7, s2}};
  CHECK_THROWS_AS(
      mixed_unitary_payoff(mp, std::vector<MixedUnitaryStrategy>{broken,
                                                                 MixedUnitaryStrategy::pure(s1)}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      mixed_unitary_payoff(mp, std::vector<MixedUnitaryStrategy>{MixedUnitaryStrategy::pure(s1)}),
      std::invalid_argument);

  Eigen::Matrix3d wide = Eigen::Matrix3d::Zero();
  CHECK_THROWS_AS(ewl_payoff_closed_form(BimatrixGame::from_payoffs(wide, wide), s1, s2),
                  std::invalid_argument);
}
