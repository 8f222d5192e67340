#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ewl/analysis.hpp"
#include "ewl/game.hpp"
#include "ewl/quantum.hpp"

#include <cmath>
#include <random>

using namespace ewl;

namespace {

const UnitaryStrategy kQuarterTurn{M_PI / 2.0, 0.0, -M_PI / 2.0};
const UnitaryStrategy kHalfTheta{M_PI / 2.0, 0.0, 0.0};

bool strategy_close(const UnitaryStrategy& a, const UnitaryStrategy& b, double tol = 1e-9) {
  return same_up_to_phase(su2_matrix(a), su2_matrix(b), tol);
}

}  // namespace

TEST_CASE("extended matching pennies table") {
  const auto table = build_extended_bimatrix(matching_pennies(), {kQuarterTurn}, {kQuarterTurn});
  Eigen::Matrix3d a, b;
  a << 1, -1, 0, -1, 1, 0, 0, 0, 0;
  b << -1, 1, 0, 1, -1, 0, 0, 0, 0;
  CHECK((table.a - a).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((table.b - b).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(table.row_labels[0] == "I");
  CHECK(table.row_labels[1] == "iX");
  CHECK(table.row_labels[2] == "U(pi/2,0,-pi/2)");
}

TEST_CASE("extended prisoners dilemma table") {
  const auto table = build_extended_bimatrix(prisoners_dilemma(), {kQuarterTurn}, {kQuarterTurn});
  Eigen::Matrix3d a, b;
  a << 3, 0, 4, 5, 1, 4, 1.5, 1.5, 2.25;
  b << 3, 5, 1.5, 0, 1, 1.5, 4, 4, 2.25;
  CHECK((table.a - a).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((table.b - b).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("extended table matches the circuit payoff cell by cell") {
  const auto pd = prisoners_dilemma();
  const auto game = EwlGame::from_bimatrix(pd);
  const auto table = build_extended_bimatrix(pd, {kQuarterTurn}, {kQuarterTurn});
  const std::vector<UnitaryStrategy> axis = {UnitaryStrategy::identity(),
                                             UnitaryStrategy::pauli_x(), kQuarterTurn};
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      const Eigen::VectorXd v = ewl_payoff(
          game, std::vector<UnitaryStrategy>{axis[static_cast<std::size_t>(i)],
                                             axis[static_cast<std::size_t>(j)]});
      CHECK(std::abs(table.a(i, j) - v(0)) <= 1e-12);
      CHECK(std::abs(table.b(i, j) - v(1)) <= 1e-12);
    }
}

TEST_CASE("extended table edge cases") {
  const auto mp = matching_pennies();
  const auto plain = build_extended_bimatrix(mp, {}, {});
  CHECK((plain.a - mp.a).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((plain.b - mp.b).cwiseAbs().maxCoeff() <= 1e-15);

  // iX again, disguised by a global phase: U(pi,pi,pi) = -iX
  CHECK_THROWS_AS(build_extended_bimatrix(mp, {{M_PI, M_PI, M_PI}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_extended_bimatrix(mp, {UnitaryStrategy::identity()}, {}),
                  std::invalid_argument);
}

TEST_CASE("best replies of the reference games") {
  const auto mp = matching_pennies();

  const BestReply two_param = best_reply(mp, 2, kQuarterTurn, StrategySetSpec::two_parameter());
  CHECK(two_param.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(strategy_close(two_param.strategy, kHalfTheta));

  const BestReply one_param = best_reply(mp, 1, kQuarterTurn, StrategySetSpec::one_parameter());
  CHECK(one_param.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(one_param.strategy.theta == doctest::Approx(0.0));  // smallest-theta tie-break

  const auto pd = prisoners_dilemma();
  const BestReply defect = best_reply(pd, 1, kQuarterTurn, StrategySetSpec::two_parameter());
  CHECK(defect.value == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(strategy_close(defect.strategy, kHalfTheta));
}

TEST_CASE("best reply value is monotone in nested grid resolution") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> payoff(-5.0, 5.0);
  Eigen::Matrix2d a, b;
  a << payoff(rng), payoff(rng), payoff(rng), payoff(rng);
  b << payoff(rng), payoff(rng), payoff(rng), payoff(rng);
  const auto g = BimatrixGame::from_payoffs(a, b);

  double previous = -1e300;
  for (int resolution : {9, 17, 33, 65, 129}) {
    const BestReply reply =
        best_reply(g, 1, kQuarterTurn, StrategySetSpec::one_parameter(resolution));
    CHECK(reply.value >= previous - 1e-12);
    previous = reply.value;
  }
}

TEST_CASE("restricted verdicts reproduce the equilibrium breakdown") {
  const auto mp = matching_pennies();
  const auto set = StrategySetSpec::classic_plus_quarter_turn();
  const auto coin = MixedUnitaryStrategy::classical_mix(0.5);
  const auto turn = MixedUnitaryStrategy::pure(kQuarterTurn);

  const NashVerdict keep = verify_nash_restricted(mp, coin, turn, set, set, 1e-9);
  CHECK(keep.is_equilibrium);
  CHECK(keep.gain <= 1e-9);

  const NashVerdict both_turn = verify_nash_restricted(mp, turn, turn, set, set, 1e-9);
  CHECK_FALSE(both_turn.is_equilibrium);
  CHECK(both_turn.deviating_player == 2);
  REQUIRE(both_turn.best_deviation.has_value());
  CHECK(strategy_close(*both_turn.best_deviation, kHalfTheta));
  CHECK(both_turn.gain == doctest::Approx(1.0).epsilon(1e-9));

  const NashVerdict mirrored = verify_nash_restricted(mp, turn, coin, set, set, 1e-9);
  CHECK_FALSE(mirrored.is_equilibrium);
  CHECK(mirrored.deviating_player == 2);
  CHECK(mirrored.gain == doctest::Approx(1.0).epsilon(1e-9));

  const auto pd = prisoners_dilemma();
  const auto ix = MixedUnitaryStrategy::pure(UnitaryStrategy::pauli_x());
  const NashVerdict pd_right = verify_nash_restricted(pd, turn, ix, set, set, 1e-9);
  CHECK_FALSE(pd_right.is_equilibrium);
  CHECK(pd_right.deviating_player == 2);
  CHECK(pd_right.gain == doctest::Approx(1.0).epsilon(1e-9));  // 5 against 4
  CHECK(pd_right.profile_payoff(1) == doctest::Approx(4.0).epsilon(1e-12));
  REQUIRE(pd_right.best_deviation.has_value());
  CHECK(strategy_close(*pd_right.best_deviation, kHalfTheta));

  const NashVerdict pd_left = verify_nash_restricted(pd, ix, turn, set, set, 1e-9);
  CHECK_FALSE(pd_left.is_equilibrium);
  CHECK(pd_left.deviating_player == 1);
  CHECK(pd_left.gain == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pd_left.profile_payoff(0) == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(verify_nash_restricted(mp, MixedUnitaryStrategy::pure({1.0, 1.0, 1.0}), turn,
                                         set, set, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("pure profile scan") {
  const auto mp = matching_pennies();
  const auto set = StrategySetSpec::classic_plus_quarter_turn();
  const PureScanReport report = no_pure_equilibrium_scan(mp, set, set, 1e-9);
  CHECK(report.survivors.empty());
  CHECK(report.set_sizes[0] == 722);

  // one concrete falsification from the scan's logic
  const NashVerdict half = verify_nash_restricted(mp, MixedUnitaryStrategy::pure(kHalfTheta),
                                                  MixedUnitaryStrategy::pure(kHalfTheta), set,
                                                  set, 1e-9);
  CHECK_FALSE(half.is_equilibrium);
  CHECK(half.deviating_player == 2);
  REQUIRE(half.best_deviation.has_value());
  CHECK(strategy_close(*half.best_deviation, kQuarterTurn));
  CHECK(half.gain == doctest::Approx(1.0).epsilon(1e-9));

  const auto constant = BimatrixGame::from_payoffs(Eigen::Matrix2d::Constant(2.0),
                                                   Eigen::Matrix2d::Constant(2.0));
  const auto tiny = StrategySetSpec::one_parameter(3);
  const PureScanReport all = no_pure_equilibrium_scan(constant, tiny, tiny, 1e-9);
  CHECK(all.survivors.size() == 9);

  CHECK_THROWS_AS(
      no_pure_equilibrium_scan(mp, StrategySetSpec::two_parameter(9), tiny, 1e-9),
      std::invalid_argument);
}

TEST_CASE("matching pennies case formula") {
  const auto mp = matching_pennies();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  for (int trial = 0; trial < 200; ++trial) {
    const UnitaryStrategy s1{angle(rng), 0.0, 0.0};
    const UnitaryStrategy s2{angle(rng), 0.0, 0.0};
    const PayoffVector both = restricted_payoff_cases(mp, s1, s2);
    CHECK(both(0) == doctest::Approx(std::cos(s1.theta) * std::cos(s2.theta)).epsilon(1e-12));
    CHECK(both(1) == -both(0));
    CHECK((both - ewl_payoff_closed_form(mp, s1, s2)).cwiseAbs().maxCoeff() <= 1e-12);

    const PayoffVector right = restricted_payoff_cases(mp, s1, kQuarterTurn);
    CHECK(right(0) == doctest::Approx(-std::sin(s1.theta)).epsilon(1e-12));
    CHECK((right - ewl_payoff_closed_form(mp, s1, kQuarterTurn)).cwiseAbs().maxCoeff() <= 1e-12);

    const PayoffVector left = restricted_payoff_cases(mp, kQuarterTurn, s2);
    CHECK(left(0) == doctest::Approx(-std::sin(s2.theta)).epsilon(1e-12));
    CHECK((left - ewl_payoff_closed_form(mp, kQuarterTurn, s2)).cwiseAbs().maxCoeff() <= 1e-12);
  }

  const PayoffVector center = restricted_payoff_cases(mp, kQuarterTurn, kQuarterTurn);
  CHECK(center(0) == 0.0);
  CHECK(center(1) == 0.0);

  CHECK_THROWS_AS(restricted_payoff_cases(mp, {M_PI / 2, 0.3, 0.0}, kQuarterTurn),
                  std::invalid_argument);
  CHECK_THROWS_AS(restricted_payoff_cases(prisoners_dilemma(), kQuarterTurn, kQuarterTurn),
                  std::invalid_argument);
}

TEST_CASE("strategy set membership and literals") {
  const auto set = StrategySetSpec::classic_plus_quarter_turn();
  CHECK(set.contains(UnitaryStrategy::identity(), 1e-9));
  CHECK(set.contains({1.234, 0.0, 0.0}, 1e-9));
  CHECK(set.contains(kQuarterTurn, 1e-9));
  CHECK_FALSE(set.contains({1.0, 0.7, 0.0}, 1e-9));
  CHECK(set.member_count() == 722);
  CHECK(set.member(721).beta == doctest::Approx(3.0 * M_PI / 2.0));

  const auto finite = StrategySetSpec::finite({kQuarterTurn, kHalfTheta});
  CHECK(finite.member_count() == 2);
  CHECK_FALSE(finite.contains({0.3, 0.0, 0.0}, 1e-9));

  CHECK_THROWS_AS(StrategySetSpec::one_parameter(1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(best_reply(matching_pennies(), 1, kQuarterTurn, StrategySetSpec::finite({})),
                  std::invalid_argument);
}
