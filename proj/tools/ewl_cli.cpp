// Command-line front end: payoff evaluation, extended tables, equilibrium
// analysis, payoff-region export, OpenQASM emission and shot simulation.

#include "CLI11.hpp"

#include "ewl/analysis.hpp"
#include "ewl/game.hpp"
#include "ewl/hull.hpp"
#include "ewl/literal.hpp"
#include "ewl/nash.hpp"
#include "ewl/qasm.hpp"
#include "ewl/quantum.hpp"
#include "ewl/region.hpp"
#include "ewl/regions.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using namespace ewl;

namespace {

const UnitaryStrategy kQuarterTurn{M_PI / 2.0, 0.0, -M_PI / 2.0};
const UnitaryStrategy kHalfTheta{M_PI / 2.0, 0.0, 0.0};

std::string format_value(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;  // drop numerical dust
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_payoff(const PayoffVector& v) {
  return "(" + format_value(v(0)) + ", " + format_value(v(1)) + ")";
}

// "9/4" when x is within 1e-9 of a small rational, otherwise empty.
std::string small_rational(double x) {
  for (int d = 1; d <= 16; ++d) {
    const double scaled = x * d;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) < 1e-9 * d && std::abs(rounded) <= 99) {
      const long num = static_cast<long>(rounded);
      if (d == 1) return std::to_string(num);
      if (num % d == 0) return std::to_string(num / d);
      return std::to_string(num) + "/" + std::to_string(d);
    }
  }
  return {};
}

std::string rational_note(const PayoffVector& v) {
  const std::string a = small_rational(v(0)), b = small_rational(v(1));
  if (a.empty() || b.empty()) return {};
  return " [= (" + a + ", " + b + ")]";
}

BimatrixGame load_game(const std::string& name) {
  if (name == "pd") return prisoners_dilemma();
  if (name == "mp") return matching_pennies();
  if (name == "bos") return battle_of_sexes();
  return read_game_file(name);
}

void print_table(const BimatrixGame& game, std::ostream& out) {
  std::size_t width = 0;
  std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(game.rows()));
  for (Index i = 0; i < game.rows(); ++i)
    for (Index j = 0; j < game.cols(); ++j) {
      std::string cell = format_payoff(game.at(i, j));
      width = std::max(width, cell.size());
      cells[static_cast<std::size_t>(i)].push_back(std::move(cell));
    }
  std::size_t label_width = 0;
  for (const auto& l : game.row_labels) label_width = std::max(label_width, l.size());
  for (const auto& l : game.col_labels) width = std::max(width, l.size());

  out << std::string(label_width, ' ');
  for (Index j = 0; j < game.cols(); ++j) {
    const auto& label = game.col_labels[static_cast<std::size_t>(j)];
    out << "  " << label << std::string(width - label.size(), ' ');
  }
  out << "\n";
  for (Index i = 0; i < game.rows(); ++i) {
    const auto& label = game.row_labels[static_cast<std::size_t>(i)];
    out << label << std::string(label_width - label.size(), ' ');
    for (Index j = 0; j < game.cols(); ++j) {
      const auto& cell = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      out << "  " << cell << std::string(width - cell.size(), ' ');
    }
    out << "\n";
  }
}

std::string format_mix(const MixedStrategy& w) {
  std::string out = "[";
  for (Index i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += format_value(w(i));
  }
  return out + "]";
}

std::ostream& open_output(std::optional<std::ofstream>& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.emplace(path, std::ios::binary);
  if (!*file) throw std::invalid_argument("cannot open output file: " + path);
  return *file;
}

// ---------------------------------------------------------------------------
// reproduce: re-derives the reference results and writes a report

struct ReportLine {
  bool ok;
  std::string text;
};

class Reproducer {
 public:
  explicit Reproducer(std::string outdir) : outdir_(std::move(outdir)) {}

  void check(const std::string& name, bool ok, const std::string& measured) {
    lines_.push_back({ok, name + ": " + measured});
  }

  void artifact(const std::string& name, const std::function<void(const std::string&)>& write) {
    if (outdir_.empty()) return;
    std::filesystem::create_directories(outdir_);
    const std::string path = outdir_ + "/" + name;
    write(path);
    lines_.push_back({true, "wrote " + path});
  }

  int finish(std::ostream& out) const {
    int failures = 0;
    for (const auto& line : lines_) {
      if (!line.ok) ++failures;
      out << (line.ok ? "[ok]   " : "[FAIL] ") << line.text << "\n";
    }
    out << (failures ? "FAILED" : "all checks passed") << "\n";
    return failures ? 1 : 0;
  }

 private:
  std::string outdir_;
  std::vector<ReportLine> lines_;
};

int run_reproduce(const std::string& output, const std::string& outdir, std::uint64_t seed) {
  Reproducer rep(outdir);
  const auto mp = matching_pennies();
  const auto pd = prisoners_dilemma();
  const auto bos = battle_of_sexes();

  // Extended tables.
  const auto mp3 = build_extended_bimatrix(mp, {kQuarterTurn}, {kQuarterTurn});
  Eigen::Matrix3d a17, b17;
  a17 << 1, -1, 0, -1, 1, 0, 0, 0, 0;
  b17 << -1, 1, 0, 1, -1, 0, 0, 0, 0;
  double err = std::max((mp3.a - a17).cwiseAbs().maxCoeff(),
                        (mp3.b - b17).cwiseAbs().maxCoeff());
  rep.check("extended MP table", err <= 1e-9, "max cell error " + format_value(err));

  const auto pd3 = build_extended_bimatrix(pd, {kQuarterTurn}, {kQuarterTurn});
  Eigen::Matrix3d a23, b23;
  a23 << 3, 0, 4, 5, 1, 4, 1.5, 1.5, 2.25;
  b23 << 3, 5, 1.5, 0, 1, 1.5, 4, 4, 2.25;
  err = std::max((pd3.a - a23).cwiseAbs().maxCoeff(), (pd3.b - b23).cwiseAbs().maxCoeff());
  rep.check("extended PD table", err <= 1e-9, "max cell error " + format_value(err));
  rep.artifact("extended_mp.txt", [&](const std::string& p) {
    std::ofstream f(p);
    print_table(mp3, f);
  });
  rep.artifact("extended_pd.txt", [&](const std::string& p) {
    std::ofstream f(p);
    print_table(pd3, f);
  });

  // Equilibria of the extended tables.
  auto contains = [](const EquilibriumAnalysis& found, std::initializer_list<double> p,
                     std::initializer_list<double> q) {
    MixedStrategy pv(3), qv(3);
    Index k = 0;
    for (double x : p) pv(k++) = x;
    k = 0;
    for (double x : q) qv(k++) = x;
    for (const auto& eq : found.equilibria)
      if ((eq.row_mix - pv).cwiseAbs().maxCoeff() <= 1e-9 &&
          (eq.col_mix - qv).cwiseAbs().maxCoeff() <= 1e-9)
        return true;
    return false;
  };
  const auto mp_eq = enumerate_equilibria(mp3);
  rep.check("extended MP equilibria",
            contains(mp_eq, {0.5, 0.5, 0}, {0.5, 0.5, 0}) &&
                contains(mp_eq, {0, 0, 1}, {0, 0, 1}) &&
                contains(mp_eq, {0.5, 0.5, 0}, {0, 0, 1}) &&
                contains(mp_eq, {0, 0, 1}, {0.5, 0.5, 0}),
            "classical mixed + three nonclassical profiles found");
  const auto pd_eq = enumerate_equilibria(pd3);
  rep.check("extended PD equilibria",
            contains(pd_eq, {0, 0, 1}, {0, 1, 0}) && contains(pd_eq, {0, 1, 0}, {0, 0, 1}),
            "both nonclassical profiles found");

  // Equilibrium breakdown over the continuous set.
  const auto set = StrategySetSpec::classic_plus_quarter_turn();
  const auto coin = MixedUnitaryStrategy::classical_mix(0.5);
  const auto turn = MixedUnitaryStrategy::pure(kQuarterTurn);
  const auto ix = MixedUnitaryStrategy::pure(UnitaryStrategy::pauli_x());
  const NashVerdict keep = verify_nash_restricted(mp, coin, turn, set, set, 1e-9);
  rep.check("profile (coin, U(pi/2,0,-pi/2)) survives", keep.is_equilibrium,
            "best gain " + format_value(keep.gain));
  const NashVerdict drop1 = verify_nash_restricted(mp, turn, turn, set, set, 1e-9);
  rep.check("profile (U,U) falsified by U(pi/2,0,0)",
            !drop1.is_equilibrium && std::abs(drop1.gain - 1.0) <= 1e-9 &&
                drop1.deviating_player == 2,
            "player 2 gains " + format_value(drop1.gain));
  const NashVerdict drop2 = verify_nash_restricted(mp, turn, coin, set, set, 1e-9);
  rep.check("profile (U, coin) falsified", !drop2.is_equilibrium,
            "player 2 gains " + format_value(drop2.gain));
  const NashVerdict pd_drop1 = verify_nash_restricted(pd, turn, ix, set, set, 1e-9);
  const NashVerdict pd_drop2 = verify_nash_restricted(pd, ix, turn, set, set, 1e-9);
  rep.check("PD profiles (U,iX)/(iX,U) falsified",
            !pd_drop1.is_equilibrium && !pd_drop2.is_equilibrium &&
                std::abs(pd_drop1.profile_payoff(1) - 4.0) <= 1e-9 &&
                std::abs(pd_drop1.gain - 1.0) <= 1e-9 &&
                std::abs(pd_drop2.profile_payoff(0) - 4.0) <= 1e-9 &&
                std::abs(pd_drop2.gain - 1.0) <= 1e-9,
            "deviation payoff 5 against 4 for both");
  const PureScanReport scan = no_pure_equilibrium_scan(mp, set, set, 1e-9);
  rep.check("no pure equilibrium in the extended MP set", scan.survivors.empty(),
            std::to_string(scan.survivors.size()) + " survivors at grid " +
                std::to_string(scan.set_sizes[0]));

  // Classical embedding.
  double worst = 0.0;
  const auto mp_game = EwlGame::from_bimatrix(mp);
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const double p = i / 100.0, q = j / 100.0;
      MixedStrategy pv(2), qv(2);
      pv << p, 1 - p;
      qv << q, 1 - q;
      const PayoffVector classical = expected_payoff(mp, pv, qv);
      const PayoffVector quantum =
          ewl_payoff_closed_form(mp, {2 * std::acos(std::sqrt(p)), 0, 0},
                                 {2 * std::acos(std::sqrt(q)), 0, 0});
      const std::vector<MixedUnitaryStrategy> ops = {MixedUnitaryStrategy::classical_mix(p),
                                                     MixedUnitaryStrategy::classical_mix(q)};
      const Eigen::VectorXd mixed = mixed_unitary_payoff(mp_game, ops);
      worst = std::max({worst, (quantum - classical).cwiseAbs().maxCoeff(),
                        (PayoffVector(mixed(0), mixed(1)) - classical).cwiseAbs().maxCoeff()});
    }
  rep.check("one-parameter strategies reproduce classical mixing", worst <= 1e-12,
            "max deviation " + format_value(worst));

  // Battle of the Sexes: (3,3) and the regions.
  const PayoffVector three =
      ewl_payoff_closed_form(bos, {0, M_PI / 8, 0}, {0, M_PI / 8, 0});
  rep.check("BoS (3,3) via U(0,pi/8,0) profile",
            (three - PayoffVector(3, 3)).cwiseAbs().maxCoeff() <= 1e-12,
            format_payoff(three) + rational_note(three));
  const AchieveResult fair = achieve_target(bos, {3.0, 3.0});
  rep.check("BoS (3,3) via Caratheodory profile", fair.residual <= 1e-9,
            format_strategy(fair.s1) + ", " + format_strategy(fair.s2) + " with residual " +
                format_value(fair.residual));

  const auto nc = classical_region_samples(bos, ClassicalRegionMode::noncooperative, 501);
  double closest = 1e300;
  for (const auto& p : nc.points)
    closest = std::min(closest, (p - Eigen::Vector2d(3, 3)).norm());
  rep.check("BoS noncooperative region avoids (3,3)", closest > 0.4,
            "closest sample at distance " + format_value(closest));

  const auto bos_region = ewl_region_samples(bos);
  const auto bos_coop = classical_region_samples(bos, ClassicalRegionMode::cooperative, 2);
  const double bos_gap = hausdorff_distance(bos_region.hull, bos_coop.hull);
  rep.check("BoS two-parameter region fills the cooperative hull", bos_gap <= 0.05,
            "Hausdorff distance " + format_value(bos_gap));
  const auto pd_region = ewl_region_samples(pd);
  const auto pd_coop = classical_region_samples(pd, ClassicalRegionMode::cooperative, 2);
  const double pd_gap = hausdorff_distance(pd_region.hull, pd_coop.hull);
  rep.check("PD two-parameter region fills the cooperative hull", pd_gap <= 0.05,
            "Hausdorff distance " + format_value(pd_gap));
  // Thin the dense clouds for plotting; hulls come from the full grid.
  auto thinned = [](const RegionSample& sample, std::size_t keep) {
    RegionSample out{sample.tag, {}, sample.hull};
    const std::size_t stride = std::max<std::size_t>(1, sample.points.size() / keep);
    for (std::size_t k = 0; k < sample.points.size(); k += stride)
      out.points.push_back(sample.points[k]);
    return out;
  };
  rep.artifact("bos_noncooperative.csv", [&](const std::string& p) {
    export_region(nc, p, ExportFormat::csv);
  });
  rep.artifact("bos_ewl_region.csv", [&](const std::string& p) {
    export_region(thinned(bos_region, 100000), p, ExportFormat::csv);
  });
  rep.artifact("bos_ewl_region.svg", [&](const std::string& p) {
    export_region(thinned(bos_region, 20000), p, ExportFormat::svg);
  });
  rep.artifact("pd_ewl_region.csv", [&](const std::string& p) {
    export_region(thinned(pd_region, 100000), p, ExportFormat::csv);
  });

  // Caratheodory constructions, all four omission cases.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_combo = 0.0;
  for (int omitted = 0; omitted < 4; ++omitted)
    for (int trial = 0; trial < 250; ++trial) {
      double raw[4];
      double total = 0.0;
      for (int c = 0; c < 4; ++c) total += (raw[c] = c == omitted ? 0.0 : u(rng) + 1e-9);
      for (double& x : raw) x /= total;
      const ConvexWeights w{raw[0], raw[1], raw[2], raw[3]};
      const auto [s1, s2] = caratheodory_profile(w, omitted);
      const PayoffVector expected = w.w00 * pd.at(0, 0) + w.w01 * pd.at(0, 1) +
                                    w.w10 * pd.at(1, 0) + w.w11 * pd.at(1, 1);
      worst_combo = std::max(worst_combo, (ewl_payoff_closed_form(pd, s1, s2) - expected)
                                              .cwiseAbs()
                                              .maxCoeff());
    }
  rep.check("Caratheodory profiles realize the weighted corners", worst_combo <= 1e-10,
            "max deviation " + format_value(worst_combo));

  // Circuit distributions and histograms.
  const std::string reference = emit_ewl_qasm(kQuarterTurn, kHalfTheta);
  const auto sure = circuit_distribution(parse_qasm(reference));
  rep.check("profile (U(pi/2,0,-pi/2), U(pi/2,0,0)) measures 01",
            sure.size() == 1 && std::abs(sure.at("01") - 1.0) <= 1e-12,
            "P(01) = " + format_value(sure.at("01")));
  const auto half_id = circuit_distribution(build_ewl_circuit(kQuarterTurn,
                                                              UnitaryStrategy::identity()));
  const auto half_ix = circuit_distribution(build_ewl_circuit(kQuarterTurn,
                                                              UnitaryStrategy::pauli_x()));
  rep.check("identity and iX against U(pi/2,0,-pi/2) split 00/01 evenly",
            std::abs(half_id.at("00") - 0.5) <= 1e-12 &&
                std::abs(half_id.at("01") - 0.5) <= 1e-12 &&
                std::abs(half_ix.at("00") - 0.5) <= 1e-12 &&
                std::abs(half_ix.at("01") - 0.5) <= 1e-12,
            "P(00) = P(01) = 1/2 for both");
  rep.artifact("reference_profile.qasm", [&](const std::string& p) {
    std::ofstream f(p, std::ios::binary);
    f << reference;
  });

  const double sigma = 3.0 * std::sqrt(8192 * 0.25);
  const ShotHistogram h1 =
      simulate_shots(build_ewl_circuit(kQuarterTurn, UnitaryStrategy::identity()), 8192, seed);
  const ShotHistogram h2 =
      simulate_shots(build_ewl_circuit(kQuarterTurn, UnitaryStrategy::pauli_x()), 8192, seed);
  const ShotHistogram h3 = simulate_shots(parse_qasm(reference), 8192, seed);
  rep.check("8192-shot histograms within 3 sigma",
            std::abs(h1.counts.at("00") - 4096.0) <= sigma &&
                std::abs(h2.counts.at("00") - 4096.0) <= sigma &&
                h3.counts.at("01") == 8192,
            "counts " + std::to_string(h1.counts.at("00")) + "/" +
                std::to_string(h1.counts.at("01")) + ", " +
                std::to_string(h2.counts.at("00")) + "/" +
                std::to_string(h2.counts.at("01")) + ", 01 x " +
                std::to_string(h3.counts.at("01")));
  rep.artifact("histogram_u_id.csv", [&](const std::string& p) {
    std::ofstream f(p, std::ios::binary);
    export_histogram_csv(h1, f);
  });
  rep.artifact("histogram_u_ix.csv", [&](const std::string& p) {
    std::ofstream f(p, std::ios::binary);
    export_histogram_csv(h2, f);
  });

  std::optional<std::ofstream> file;
  std::ostream& out = open_output(file, output);
  return rep.finish(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EWL quantization of 2x2 games: payoffs, equilibria, regions, circuits"};
  app.require_subcommand(1);

  std::string game_name = "pd";
  std::string s1_text, s2_text;
  std::string output;
  std::string format_name = "csv";
  std::string sets1_text, sets2_text;
  std::vector<std::string> extra_texts, extra1_texts, extra2_texts;
  std::string mode_name = "ewl";
  std::string input_qasm;
  std::string outdir;
  int resolution = 101;
  std::string ewl_grid;
  double tol = 1e-9;
  long shots = 8192;
  std::uint64_t seed = 42;
  bool scan = false;

  auto* payoff = app.add_subcommand("payoff", "Evaluate the EWL payoff of a strategy profile");
  payoff->add_option("--game", game_name, "builtin (pd|mp|bos) or game file");
  payoff->add_option("--s1", s1_text, "player 1 strategy, e.g. \"U(pi/2,0,-pi/2)\"")->required();
  payoff->add_option("--s2", s2_text, "player 2 strategy")->required();

  auto* table = app.add_subcommand("table", "Print the extended bimatrix of a 2x2 game");
  table->add_option("--game", game_name, "builtin (pd|mp|bos) or game file");
  table->add_option("--extra", extra_texts, "extra strategy for both players (repeatable)");
  table->add_option("--extra1", extra1_texts, "extra strategy for player 1 only");
  table->add_option("--extra2", extra2_texts, "extra strategy for player 2 only");
  table->add_option("-o,--output", output, "write the table to a file");

  auto* nash = app.add_subcommand("nash", "Enumerate equilibria or verify a profile");
  nash->add_option("--game", game_name, "builtin (pd|mp|bos) or game file");
  nash->add_option("--extra", extra_texts, "extend the table before enumerating");
  nash->add_option("--sets", sets1_text,
                   "strategy set (one_param | two_param | three_param | finite[...] | "
                   "one_param+[...], optional \"grid=N\")");
  nash->add_option("--sets2", sets2_text, "player 2 strategy set when different");
  nash->add_option("--s1", s1_text, "profile to verify: strategy or mix[...]");
  nash->add_option("--s2", s2_text, "profile to verify: strategy or mix[...]");
  nash->add_flag("--scan", scan, "scan all pure grid profiles of the sets");
  nash->add_option("--tol", tol, "equilibrium tolerance")->capture_default_str();

  auto* region = app.add_subcommand("region", "Sample a payoff region and export it");
  region->add_option("--game", game_name, "builtin (pd|mp|bos) or game file");
  region->add_option("--mode", mode_name, "pure | noncooperative | cooperative | ewl")
      ->capture_default_str();
  region->add_option("--resolution", resolution, "grid resolution for noncooperative sampling")
      ->capture_default_str();
  region->add_option("--grid", ewl_grid, "EWL grid \"t1,t2,a1,a2\" (default 53,53,210,7)");
  region->add_option("--format", format_name, "csv | svg")->capture_default_str();
  region->add_option("-o,--output", output, "output file (default stdout)");

  auto* qasm = app.add_subcommand("qasm", "Emit the OpenQASM 2.0 circuit of a profile");
  qasm->add_option("--s1", s1_text, "player 1 strategy")->required();
  qasm->add_option("--s2", s2_text, "player 2 strategy")->required();
  qasm->add_option("-o,--output", output, "output file (default stdout)");

  auto* shots_cmd = app.add_subcommand("shots", "Sample measurement shots of a circuit");
  shots_cmd->add_option("--s1", s1_text, "player 1 strategy");
  shots_cmd->add_option("--s2", s2_text, "player 2 strategy");
  shots_cmd->add_option("--input", input_qasm, "simulate an existing OpenQASM file instead");
  shots_cmd->add_option("--shots", shots, "number of shots")->capture_default_str();
  shots_cmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();
  shots_cmd->add_option("-o,--output", output, "histogram csv (default stdout)");

  auto* reproduce = app.add_subcommand("reproduce", "Run the bundled reference suite");
  reproduce->add_option("-o,--output", output, "report file (default stdout)");
  reproduce->add_option("--outdir", outdir, "also write tables/regions/circuits here");
  reproduce->add_option("--seed", seed, "PRNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (payoff->parsed()) {
      const auto game = load_game(game_name);
      const auto m1 = parse_strategy_mix(s1_text);
      const auto m2 = parse_strategy_mix(s2_text);
      PayoffVector v = PayoffVector::Zero();
      for (const auto& [p1, u1] : m1.atoms)
        for (const auto& [p2, u2] : m2.atoms)
          v += p1 * p2 * ewl_payoff_closed_form(game, u1, u2);
      std::cout << format_payoff(v) << "\n";
      return 0;
    }

    if (table->parsed()) {
      const auto game = load_game(game_name);
      std::vector<UnitaryStrategy> extras1, extras2;
      for (const auto& t : extra_texts) {
        extras1.push_back(parse_strategy(t));
        extras2.push_back(parse_strategy(t));
      }
      for (const auto& t : extra1_texts) extras1.push_back(parse_strategy(t));
      for (const auto& t : extra2_texts) extras2.push_back(parse_strategy(t));
      const auto extended = build_extended_bimatrix(game, extras1, extras2);
      std::optional<std::ofstream> file;
      print_table(extended, open_output(file, output));
      return 0;
    }

    if (nash->parsed()) {
      auto game = load_game(game_name);
      if (!sets1_text.empty()) {
        const auto set1 = parse_strategy_set(sets1_text);
        const auto set2 = sets2_text.empty() ? set1 : parse_strategy_set(sets2_text);
        if (scan) {
          const auto report = no_pure_equilibrium_scan(game, set1, set2, tol);
          std::cout << "grid sizes " << report.set_sizes[0] << " x " << report.set_sizes[1]
                    << ", tol " << report.tol << "\n";
          std::cout << "surviving pure profiles: " << report.survivors.size() << "\n";
          for (std::size_t k = 0; k < report.survivors.size() && k < 50; ++k) {
            const auto& s = report.survivors[k];
            std::cout << "  " << format_strategy(s.s1) << " x " << format_strategy(s.s2)
                      << " -> " << format_payoff(s.payoff) << "\n";
          }
          if (report.survivors.size() > 50)
            std::cout << "  ... " << report.survivors.size() - 50 << " more\n";
          return 0;
        }
        if (s1_text.empty() || s2_text.empty())
          throw std::invalid_argument("--sets requires --s1/--s2 (or --scan)");
        const NashVerdict verdict =
            verify_nash_restricted(game, parse_strategy_mix(s1_text),
                                   parse_strategy_mix(s2_text), set1, set2, tol);
        std::cout << "profile payoff " << format_payoff(verdict.profile_payoff)
                  << rational_note(verdict.profile_payoff) << "\n";
        if (verdict.is_equilibrium) {
          std::cout << "equilibrium within tol " << tol << " (grid " << verdict.grid[0] << "/"
                    << verdict.grid[1] << "/" << verdict.grid[2] << ", refinement "
                    << verdict.refinement_rounds << ")\n";
        } else {
          std::cout << "not an equilibrium: player " << verdict.deviating_player
                    << " deviates to " << format_strategy(*verdict.best_deviation)
                    << " gaining " << format_value(verdict.gain) << "\n";
        }
        return 0;
      }
      if (!extra_texts.empty()) {
        std::vector<UnitaryStrategy> extras;
        for (const auto& t : extra_texts) extras.push_back(parse_strategy(t));
        game = build_extended_bimatrix(game, extras, extras);
      }
      const auto analysis = enumerate_equilibria(game);
      std::cout << "equilibria: " << analysis.equilibria.size() << "\n";
      for (const auto& eq : analysis.equilibria)
        std::cout << "  " << (eq.pure ? "pure " : "mixed") << " " << format_mix(eq.row_mix)
                  << " x " << format_mix(eq.col_mix) << " -> " << format_payoff(eq.payoff)
                  << rational_note(eq.payoff) << "\n";
      for (const auto& note : analysis.diagnostics) std::cout << "note: " << note << "\n";
      return 0;
    }

    if (region->parsed()) {
      const auto game = load_game(game_name);
      RegionSample sample{RegionTag::pure, {}, {}};
      if (mode_name == "ewl") {
        EwlRegionGrid grid;
        if (!ewl_grid.empty()) {
          if (std::sscanf(ewl_grid.c_str(), "%d,%d,%d,%d", &grid.theta1, &grid.theta2,
                          &grid.alpha1, &grid.alpha2) != 4)
            throw std::invalid_argument("bad --grid, expected \"t1,t2,a1,a2\"");
        }
        sample = ewl_region_samples(game, grid);
      } else if (mode_name == "pure") {
        sample = classical_region_samples(game, ClassicalRegionMode::pure, 2);
      } else if (mode_name == "noncooperative") {
        sample = classical_region_samples(game, ClassicalRegionMode::noncooperative, resolution);
      } else if (mode_name == "cooperative") {
        sample = classical_region_samples(game, ClassicalRegionMode::cooperative, 2);
      } else {
        throw std::invalid_argument("unknown --mode: " + mode_name);
      }
      const ExportFormat format = format_name == "svg" ? ExportFormat::svg
                                  : format_name == "csv"
                                      ? ExportFormat::csv
                                      : throw std::invalid_argument("unknown --format");
      std::optional<std::ofstream> file;
      export_region(sample, open_output(file, output), format);
      return 0;
    }

    if (qasm->parsed()) {
      const std::string text = emit_ewl_qasm(parse_strategy(s1_text), parse_strategy(s2_text));
      std::optional<std::ofstream> file;
      open_output(file, output) << text;
      return 0;
    }

    if (shots_cmd->parsed()) {
      QasmCircuit circuit;
      if (!input_qasm.empty()) {
        std::ifstream in(input_qasm, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open " + input_qasm);
        std::stringstream buffer;
        buffer << in.rdbuf();
        circuit = parse_qasm(buffer.str());
      } else {
        if (s1_text.empty() || s2_text.empty())
          throw std::invalid_argument("shots needs --s1/--s2 or --input");
        circuit = build_ewl_circuit(parse_strategy(s1_text), parse_strategy(s2_text));
      }
      const ShotHistogram histogram = simulate_shots(circuit, shots, seed);
      std::optional<std::ofstream> file;
      std::ostream& out = open_output(file, output);
      out << "# shots=" << histogram.shots << " seed=" << histogram.seed << " rng="
          << histogram.rng << "\n";
      export_histogram_csv(histogram, out);
      return 0;
    }

    if (reproduce->parsed()) return run_reproduce(output, outdir, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
