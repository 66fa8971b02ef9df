#include "corp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "corp/bands.hpp"
#include "corp/csv.hpp"
#include "corp/diagram.hpp"
#include "corp/error.hpp"
#include "corp/report.hpp"
#include "corp/scoring.hpp"
#include "corp/simulation.hpp"
#include "corp/svg.hpp"

namespace corp {

namespace {

struct BandOptions {
  std::string kind;  // empty: no band
  double level = 0.90;
  std::string method = "auto";
  std::size_t replicates = 1000;
};

struct Options {
  std::string input;
  std::string rule = "brier";
  BandOptions band;
  std::optional<std::uint64_t> seed;
  std::string mode = "auto";
  std::string out_json;
  std::string out_svg;
  std::string out_csv;
  std::size_t thresholds = 99;
  std::vector<std::string> scenarios;
  std::vector<std::size_t> sizes;
  std::size_t sim_replicates = 100;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CORP_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw ValidationError("CORP_SEED is not an unsigned integer");
    return v;
  }
  return 0;
}

BandSpec make_band_spec(const BandOptions& o, std::uint64_t seed) {
  BandSpec spec;
  spec.kind = parse_band_kind(o.kind.empty() ? "consistency" : o.kind);
  spec.level = o.level;
  spec.method = parse_band_method(o.method);
  spec.replicates = o.replicates;
  spec.seed = seed;
  spec.validate();
  return spec;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError(fmt::format("cannot write '{}'", path));
  file << content;
  if (!file) throw IoError(fmt::format("write to '{}' failed", path));
}

void add_band_flags(CLI::App& app, BandOptions& band) {
  app.add_option("--band", band.kind, "Uncertainty band: consistency or confidence")
      ->check(CLI::IsMember({"consistency", "confidence"}));
  app.add_option("--level", band.level, "Band level in (0, 1)")->capture_default_str();
  app.add_option("--method", band.method, "auto, resampling, asym-discrete or asym-continuous")
      ->check(CLI::IsMember({"auto", "resampling", "asym-discrete", "asym-continuous"}))
      ->capture_default_str();
  app.add_option("--replicates", band.replicates, "Resampling replicates")->capture_default_str();
}

int run_diagram(const Options& o, std::ostream& out) {
  const ForecastDataset data = read_forecast_csv(o.input);
  DiagramOptions options;
  options.rule = ScoringRule::from_name(o.rule);
  if (o.mode == "discrete") options.mode = DiagramMode::Discrete;
  if (o.mode == "continuous") options.mode = DiagramMode::Continuous;
  if (!o.band.kind.empty()) options.band = make_band_spec(o.band, resolve_seed(o.seed));

  const ReliabilityDiagram diagram = build_diagram(data, options);
  write_output(o.out_json, emit_report(diagram), out);
  if (!o.out_svg.empty()) write_output(o.out_svg, render_svg(diagram), out);
  return kExitOk;
}

int run_decompose(const Options& o, std::ostream& out) {
  const ForecastDataset data = read_forecast_csv(o.input);
  const ScoreDecomposition d = corp_decomposition(ScoringRule::from_name(o.rule), data);
  write_output(o.out_json, emit_decomposition(d, data.size()), out);
  return kExitOk;
}

int run_murphy(const Options& o, std::ostream& out) {
  if (o.thresholds < 1) throw ValidationError("--thresholds must be positive");
  const ForecastDataset data = read_forecast_csv(o.input);
  const std::vector<double> thresholds = equispaced_thresholds(o.thresholds);
  write_output(o.out_json, emit_murphy(murphy_diagram(data, thresholds), data.size()), out);
  return kExitOk;
}

std::vector<Scenario> parse_scenarios(const std::vector<std::string>& names,
                                      const std::string& fallback) {
  std::vector<Scenario> scenarios;
  for (const std::string& name : names.empty() ? std::vector<std::string>{fallback} : names) {
    scenarios.push_back(Scenario::parse(name));
  }
  return scenarios;
}

int run_simulate_mse(const Options& o, std::ostream& out) {
  const std::vector<Scenario> scenarios = parse_scenarios(o.scenarios, "uniform-continuous");
  const std::vector<std::size_t> sizes = o.sizes.empty() ? std::vector<std::size_t>{1024} : o.sizes;
  const std::vector<EstimatorSpec> estimators = default_estimators();
  const StudyResult result =
      mse_study(scenarios, estimators, sizes, o.sim_replicates, resolve_seed(o.seed));
  write_output(o.out_csv, result.to_csv(), out);
  return kExitOk;
}

int run_simulate_coverage(const Options& o, std::ostream& out) {
  const std::vector<Scenario> scenarios = parse_scenarios(o.scenarios, "uniform-discrete10");
  const std::vector<std::size_t> sizes = o.sizes.empty() ? std::vector<std::size_t>{1024} : o.sizes;
  const std::uint64_t seed = resolve_seed(o.seed);
  const std::vector<BandSpec> bands{make_band_spec(o.band, seed)};
  const StudyResult result = coverage_study(scenarios, bands, sizes, o.sim_replicates, seed);
  write_output(o.out_csv, result.to_csv(), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"CORP reliability diagrams, score decompositions and simulation studies", "corp"};
  app.require_subcommand(1);

  auto* diagram = app.add_subcommand("diagram", "Reliability diagram report (JSON) and SVG");
  diagram->add_option("csv", o.input, "Input CSV with header forecast,outcome")->required();
  diagram->add_option("--rule", o.rule, "brier, log or misclass")->capture_default_str();
  add_band_flags(*diagram, o.band);
  diagram->add_option("--seed", o.seed, "Seed (falls back to CORP_SEED)");
  diagram->add_option("--mode", o.mode, "auto, discrete or continuous")
      ->check(CLI::IsMember({"auto", "discrete", "continuous"}))
      ->capture_default_str();
  diagram->add_option("--out-json", o.out_json, "JSON report path (default stdout)");
  diagram->add_option("--out-svg", o.out_svg, "SVG diagram path");

  auto* decompose = app.add_subcommand("decompose", "CORP score decomposition (JSON)");
  decompose->add_option("csv", o.input, "Input CSV")->required();
  decompose->add_option("--rule", o.rule, "brier, log or misclass")->capture_default_str();
  decompose->add_option("--out-json", o.out_json, "JSON output path (default stdout)");

  auto* murphy = app.add_subcommand("murphy", "Decomposition under elementary scores (JSON)");
  murphy->add_option("csv", o.input, "Input CSV")->required();
  murphy->add_option("--thresholds", o.thresholds, "Number of equispaced thresholds")
      ->capture_default_str();
  murphy->add_option("--out-json", o.out_json, "JSON output path (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Simulation studies (CSV)");
  simulate->require_subcommand(1);
  auto add_sim_flags = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenarios,
                    "e.g. uniform-continuous, linear-discrete10, betamix-discrete50");
    sub->add_option("--n", o.sizes, "Sample sizes");
    sub->add_option("--replicates", o.sim_replicates, "Simulation replicates")->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed (falls back to CORP_SEED)");
    sub->add_option("--out-csv", o.out_csv, "CSV output path (default stdout)");
  };
  auto* coverage = simulate->add_subcommand("coverage", "Empirical band coverage");
  add_sim_flags(coverage);
  coverage->add_option("--band", o.band.kind, "consistency or confidence")
      ->check(CLI::IsMember({"consistency", "confidence"}));
  coverage->add_option("--level", o.band.level, "Band level")->capture_default_str();
  coverage->add_option("--method", o.band.method, "Band method")
      ->check(CLI::IsMember({"auto", "resampling", "asym-discrete", "asym-continuous"}))
      ->capture_default_str();
  coverage->add_option("--band-replicates", o.band.replicates, "Resampling replicates per band")
      ->capture_default_str();
  auto* mse = simulate->add_subcommand("mse", "MSE of CORP and binning estimators");
  add_sim_flags(mse);

  std::vector<const char*> argv{"corp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*diagram) return run_diagram(o, out);
    if (*decompose) return run_decompose(o, out);
    if (*murphy) return run_murphy(o, out);
    if (*coverage) return run_simulate_coverage(o, out);
    if (*mse) return run_simulate_mse(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace corp
