// Acceptance suite: one PASS/FAIL/SKIP line per criterion, nonzero exit on
// any failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "corp/bands.hpp"
#include "corp/cli.hpp"
#include "corp/csv.hpp"
#include "corp/diagram.hpp"
#include "corp/pav.hpp"
#include "corp/scoring.hpp"
#include "corp/simulation.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using namespace corp;

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

Verdict pass(std::string d) { return {Outcome::Pass, std::move(d)}; }
Verdict fail(std::string d) { return {Outcome::Fail, std::move(d)}; }

// 1. PAV matches exhaustive enumeration of nondecreasing pooled fits.
Verdict pav_oracle_equivalence() {
  std::mt19937_64 gen(20201);
  std::uniform_int_distribution<int> size(1, 12);
  std::uniform_int_distribution<int> grid(0, 20);
  std::bernoulli_distribution coin(0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = size(gen);
    std::vector<double> x(n);
    std::vector<std::uint8_t> y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = grid(gen) / 20.0;
      y[i] = coin(gen) ? 1 : 0;
    }
    const UniqueValueSummary s = aggregate(ForecastDataset(x, y));
    const std::vector<double> pav = pav_fit(s).fitted_per_unique;
    const std::vector<double> brute = oracle::brute_force_isotonic(s.counts, s.events);
    for (std::size_t j = 0; j < pav.size(); ++j) worst = std::max(worst, std::abs(pav[j] - brute[j]));
  }
  const std::string d = fmt::format("10000 instances, max |pav - brute| = {:.3g}", worst);
  return worst <= 1e-12 ? pass(d) : fail(d);
}

ForecastDataset random_dataset(std::mt19937_64& gen, int max_n) {
  std::uniform_int_distribution<int> size(1, max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> grid(0, 10);
  const int n = size(gen);
  const bool on_grid = unit(gen) < 0.5;
  std::vector<double> x(n);
  std::vector<std::uint8_t> y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = on_grid ? grid(gen) / 10.0 : unit(gen);
    y[i] = unit(gen) < x[i] * 0.7 + 0.15 ? 1 : 0;
  }
  return ForecastDataset(std::move(x), std::move(y));
}

// 2. Exactness and nonnegativity of the decomposition for all rules.
Verdict decomposition_exactness() {
  std::mt19937_64 gen(20202);
  const std::vector<ScoringRule> rules{ScoringRule::brier(), ScoringRule::logarithmic(),
                                       ScoringRule::misclassification()};
  double worst_gap = 0.0;
  double worst_mcb = 0.0;
  double worst_dsc = 0.0;
  int infinite = 0;
  bool infinite_ok = true;
  for (int trial = 0; trial < 10000; ++trial) {
    const ForecastDataset data = random_dataset(gen, 60);
    const std::vector<double> fitted = recalibrate(data);
    for (const ScoringRule& rule : rules) {
      const ScoreDecomposition d = corp_decomposition(rule, data, fitted);
      if (d.infinite) {
        ++infinite;
        infinite_ok = infinite_ok && std::isinf(d.mcb) && d.mcb > 0 && std::isfinite(d.dsc) &&
                      d.dsc >= -1e-12 && std::isfinite(d.unc);
        continue;
      }
      worst_gap = std::max(worst_gap, std::abs(d.mean_score - (d.mcb - d.dsc + d.unc)));
      worst_mcb = std::min(worst_mcb, d.mcb);
      worst_dsc = std::min(worst_dsc, d.dsc);
    }
  }
  const std::string detail =
      fmt::format("max gap {:.3g}, min MCB {:.3g}, min DSC {:.3g}, {} infinite-log cases {}",
                  worst_gap, worst_mcb, worst_dsc, infinite, infinite_ok ? "ok" : "BAD");
  const bool ok = worst_gap < 1e-12 && worst_mcb >= -1e-12 && worst_dsc >= -1e-12 && infinite_ok;
  return ok ? pass(detail) : fail(detail);
}

// 3. Brier MCB/DSC equal Murphy's REL/RES when frequencies are nondecreasing.
Verdict theorem_two() {
  std::mt19937_64 gen(20203);
  std::uniform_int_distribution<int> unique_count(1, 5);
  std::uniform_int_distribution<int> grid(0, 20);
  std::uniform_int_distribution<int> multiplicity(1, 8);
  int accepted = 0;
  int tried = 0;
  double worst = 0.0;
  while (accepted < 1000) {
    ++tried;
    const int k = unique_count(gen);
    std::vector<double> x;
    std::vector<std::uint8_t> y;
    for (int j = 0; j < k; ++j) {
      const double z = grid(gen) / 20.0;
      const int m = multiplicity(gen);
      for (int c = 0; c < m; ++c) {
        x.push_back(z);
        y.push_back(std::uniform_real_distribution<double>(0, 1)(gen) < z ? 1 : 0);
      }
    }
    const ForecastDataset data(x, y);
    const UniqueValueSummary s = aggregate(data);
    bool monotone = true;
    for (std::size_t j = 1; j < s.size(); ++j) {
      monotone = monotone && s.events[j - 1] * s.counts[j] <= s.events[j] * s.counts[j - 1];
    }
    if (!monotone) continue;
    ++accepted;
    const ScoreDecomposition d = corp_decomposition(ScoringRule::brier(), data);
    const MurphyBrierDecomposition m = murphy_brier_decomposition(s);
    worst = std::max({worst, std::abs(d.mcb - m.rel), std::abs(d.dsc - m.res), std::abs(d.unc - m.unc)});
  }
  const std::string detail =
      fmt::format("1000 monotone instances ({} drawn), max deviation {:.3g}", tried, worst);
  return worst <= 1e-12 ? pass(detail) : fail(detail);
}

// 4. 2 * integral of elementary mean scores over thresholds = Brier score.
Verdict brier_mixture() {
  std::mt19937_64 gen(20204);
  std::uniform_int_distribution<int> size(20, 200);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<double> thresholds = equispaced_thresholds(10000);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(gen);
    std::vector<double> x(n);
    std::vector<std::uint8_t> y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = unit(gen);
      y[i] = unit(gen) < x[i] ? 1 : 0;
    }
    const ForecastDataset data(x, y);
    const std::vector<MurphyPoint> curve = murphy_diagram(data, thresholds);
    // Trapezoid on [0, 1], holding the integrand constant on the two end cells.
    std::vector<double> nodes{0.0};
    std::vector<double> values{curve.front().mean_score};
    for (const MurphyPoint& p : curve) {
      nodes.push_back(p.threshold);
      values.push_back(p.mean_score);
    }
    nodes.push_back(1.0);
    values.push_back(curve.back().mean_score);
    double integral = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      integral += 0.5 * (values[i] + values[i - 1]) * (nodes[i] - nodes[i - 1]);
    }
    worst = std::max(worst, std::abs(2.0 * integral - mean_score(ScoringRule::brier(), data)));
  }
  const std::string detail = fmt::format("100 datasets, max |2 int - Brier| = {:.3g}", worst);
  return worst < 1e-5 ? pass(detail) : fail(detail);
}

// 5. Coverage of default 90% consistency bands.
Verdict coverage() {
  const std::vector<Scenario> scenarios{Scenario::parse("uniform-discrete10"),
                                        Scenario::parse("uniform-continuous"),
                                        Scenario::parse("linear-discrete10"),
                                        Scenario::parse("linear-continuous")};
  const std::vector<std::size_t> sizes{1024, 8192};
  BandSpec spec;
  spec.kind = BandKind::Consistency;
  spec.level = 0.90;
  const StudyResult result = coverage_study(scenarios, std::vector<BandSpec>{spec}, sizes, 500, 55);
  bool ok = true;
  std::string detail;
  for (const StudyRow& row : result.rows) {
    const bool cell = row.statistic >= 0.87 && row.statistic <= 0.95;
    ok = ok && cell;
    detail += fmt::format("\n      {:<20} n={:<5} {:<16} coverage {:.4f}{}", row.scenario, row.n,
                          row.method, row.statistic, cell ? "" : "  <-- outside [.87,.95]");
  }
  return ok ? pass(detail) : fail(detail);
}

// 6. CORP MSE dominance and decay rates.
Verdict mse_dominance_and_rates() {
  const std::vector<Scenario> scenarios{Scenario::parse("uniform-discrete10"),
                                        Scenario::parse("uniform-continuous")};
  std::vector<std::size_t> sizes;
  for (int e = 6; e <= 13; ++e) sizes.push_back(std::size_t{1} << e);
  const std::vector<EstimatorSpec> estimators = default_estimators();
  const StudyResult result = mse_study(scenarios, estimators, sizes, 200, 66);

  bool ok = true;
  std::string detail;
  for (const Scenario& s : scenarios) {
    double worst_ratio = 0.0;
    std::string worst_where;
    std::vector<double> ns;
    std::vector<double> corp_mse;
    for (std::size_t n : sizes) {
      const double corp_value = result.find(s.name(), "corp", n)->statistic;
      ns.push_back(static_cast<double>(n));
      corp_mse.push_back(corp_value);
      for (const EstimatorSpec& e : estimators) {
        if (!e.binning) continue;
        const double ratio = corp_value / result.find(s.name(), e.name(), n)->statistic;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst_where = fmt::format("{} at n={}", e.name(), n);
        }
      }
    }
    const double slope = loglog_slope(ns, corp_mse);
    const double target = s.discrete_values ? -1.0 : -2.0 / 3.0;
    const bool dominance = worst_ratio <= 1.05;
    const bool rate = std::abs(slope - target) <= 0.15;
    ok = ok && dominance && rate;
    detail += fmt::format(
        "\n      {:<20} max CORP/baseline {:.3f} ({}){}; slope {:.3f} vs {:.3f}{}", s.name(),
        worst_ratio, worst_where, dominance ? "" : " <-- exceeds 1.05", slope, target,
        rate ? "" : " <-- outside +-0.15");
  }
  return ok ? pass(detail) : fail(detail);
}

fs::path niamey_dir() {
  if (const char* env = std::getenv("CORP_NIAMEY_DIR"); env != nullptr && *env != '\0') return env;
  return fs::path(CORP_SOURCE_DIR) / "data" / "niamey";
}

// 7. Niamey precipitation forecasts, when the data files are available.
Verdict niamey() {
  const fs::path dir = niamey_dir();
  struct Row {
    const char* file;
    double mean, mcb, dsc, unc;
  };
  const std::vector<Row> table{{"ens.csv", .266, .066, .044, .244},
                               {"epc.csv", .234, .022, .032, .244},
                               {"emos.csv", .232, .018, .030, .244},
                               {"logistic.csv", .206, .017, .056, .244}};
  for (const Row& r : table) {
    if (!fs::exists(dir / r.file)) {
      return {Outcome::Skip, fmt::format("data file {} not found", (dir / r.file).string())};
    }
  }
  auto round3 = [](double v) { return std::round(v * 1000.0) / 1000.0; };
  bool ok = true;
  std::string detail;
  for (const Row& r : table) {
    const ForecastDataset data = read_forecast_csv((dir / r.file).string());
    const ScoreDecomposition d = corp_decomposition(ScoringRule::brier(), data);
    const bool row_ok = round3(d.mean_score) == r.mean && round3(d.mcb) == r.mcb &&
                        round3(d.dsc) == r.dsc && round3(d.unc) == r.unc;
    ok = ok && row_ok;
    detail += fmt::format("\n      {:<13} {:.3f} {:.3f} {:.3f} {:.3f}{}", r.file, d.mean_score,
                          d.mcb, d.dsc, d.unc, row_ok ? "" : "  <-- mismatch");
  }
  const ForecastDataset ens = read_forecast_csv((dir / "ens.csv").string());
  const ReliabilityDiagram diagram = build_diagram(ens);
  auto has_bin = [&](double lo, double hi, double value) {
    for (const DiagramBin& b : diagram.bins) {
      if (std::abs(b.lower - lo) < 1e-9 && std::abs(b.upper - hi) < 1e-9 &&
          round3(b.calibrated) == value) {
        return true;
      }
    }
    return false;
  };
  const bool low = has_bin(9.0 / 52, 20.0 / 52, .125);
  const bool high = has_bin(21.0 / 52, 42.0 / 52, .481);
  ok = ok && low && high;
  detail += fmt::format("\n      ENS bin .125 over 9/52-20/52: {}; .481 over 21/52-42/52: {}",
                        low ? "yes" : "NO", high ? "yes" : "NO");
  return ok ? pass(detail) : fail(detail);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 8. Same argv and seed give byte-identical outputs.
Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "corp_acceptance_determinism";
  fs::create_directories(dir);
  {
    StreamRng rng(3, {1});
    const Scenario scenario = Scenario::parse("linear-continuous");
    std::vector<double> x = sample_forecasts(scenario, 400, rng);
    std::vector<std::uint8_t> y = sample_outcomes_calibrated(x, rng);
    std::ofstream out(dir / "input.csv");
    write_forecast_csv(out, ForecastDataset(x, y));
  }
  const std::string input = (dir / "input.csv").string();
  std::vector<std::vector<std::string>> commands;
  for (int run = 0; run < 2; ++run) {
    const std::string tag = std::to_string(run);
    commands.push_back({"diagram", input, "--band", "consistency", "--level", "0.9", "--seed", "42",
                        "--out-json", (dir / ("diagram" + tag + ".json")).string(), "--out-svg",
                        (dir / ("diagram" + tag + ".svg")).string()});
    commands.push_back({"diagram", input, "--band", "confidence", "--seed", "42", "--out-json",
                        (dir / ("confidence" + tag + ".json")).string()});
    commands.push_back({"simulate", "mse", "--scenario", "uniform-continuous", "--n", "1024",
                        "--replicates", "100", "--seed", "7", "--out-csv",
                        (dir / ("mse" + tag + ".csv")).string()});
    commands.push_back({"simulate", "coverage", "--scenario", "uniform-continuous", "--n", "512",
                        "--replicates", "20", "--band-replicates", "200", "--band", "consistency",
                        "--seed", "7", "--out-csv", (dir / ("coverage" + tag + ".csv")).string()});
  }
  std::ostringstream sink;
  for (const auto& cmd : commands) {
    if (run_cli(cmd, sink, sink) != 0) return fail("command failed: " + cmd[0] + "\n" + sink.str());
  }
  std::string detail;
  bool ok = true;
  for (const char* stem : {"diagram", "confidence", "mse", "coverage"}) {
    const char* ext = std::string(stem) == "mse" || std::string(stem) == "coverage" ? ".csv" : ".json";
    const bool same = slurp(dir / (std::string(stem) + "0" + ext)) ==
                      slurp(dir / (std::string(stem) + "1" + ext));
    ok = ok && same;
    detail += fmt::format("{}{} {}", detail.empty() ? "" : ", ", stem, same ? "identical" : "DIFFER");
  }
  const bool svg_same = slurp(dir / "diagram0.svg") == slurp(dir / "diagram1.svg");
  ok = ok && svg_same;
  detail += fmt::format(", svg {}", svg_same ? "identical" : "DIFFER");
  fs::remove_all(dir);
  return ok ? pass(detail) : fail(detail);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 PAV oracle equivalence", pav_oracle_equivalence},
      {"2 decomposition exactness and nonnegativity", decomposition_exactness},
      {"3 Murphy REL/RES agreement (monotone frequencies)", theorem_two},
      {"4 Brier mixture identity", brier_mixture},
      {"5 band coverage", coverage},
      {"6 MSE dominance and rates", mse_dominance_and_rates},
      {"7 Niamey reproduction", niamey},
      {"8 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = v.outcome == Outcome::Pass ? "PASS" : v.outcome == Outcome::Fail ? "FAIL" : "SKIP";
    failures += v.outcome == Outcome::Fail ? 1 : 0;
    std::cout << fmt::format("[{}] {} ({:.1f}s): {}", tag, name, seconds, v.detail) << std::endl;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria passed or skipped"
                              : fmt::format("acceptance: {} criteria failed", failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}
