#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corp/error.hpp"
#include "corp/simulation.hpp"

using namespace corp;

namespace {

double cdf(Distribution d, double x) {
  switch (d) {
    case Distribution::Uniform: return x;
    case Distribution::Linear: return .4 * x + .6 * x * x;
    case Distribution::BetaMixture: return .75 * (1 - std::pow(1 - x, 10)) + .25 * x;
  }
  return 0.0;
}

double ks_statistic(std::vector<double> x, Distribution d) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(d, x[i]);
    worst = std::max({worst, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return worst;
}

std::vector<Scenario> appendix_scenarios() {
  std::vector<Scenario> out;
  for (const char* d : {"uniform", "linear", "betamix"})
    for (const char* v : {"-discrete10", "-discrete50", "-continuous"}) out.push_back(Scenario::parse(std::string(d) + v));
  return out;
}

}  // namespace

TEST_SUITE("simulation") {
  TEST_CASE("scenario names") {
    const Scenario s = Scenario::parse("linear-discrete20");
    CHECK(s.distribution == Distribution::Linear);
    CHECK(s.discrete_values == std::optional<std::size_t>(20));
    CHECK(s.name() == "linear-discrete20");
    CHECK(Scenario::parse("betamix-continuous").name() == "betamix-continuous");
    CHECK_THROWS_AS(Scenario::parse("gamma-continuous"), ValidationError);
    CHECK_THROWS_AS(Scenario::parse("uniform-discrete0"), ValidationError);
  }

  TEST_CASE("discretized probabilities") {
    for (double p : discrete_probabilities(Distribution::Uniform, 10)) CHECK(p == doctest::Approx(.1));
    const std::vector<double> lin = discrete_probabilities(Distribution::Linear, 10);
    CHECK(lin[0] == doctest::Approx(.046));
    for (Distribution d : {Distribution::Uniform, Distribution::Linear, Distribution::BetaMixture}) {
      const std::vector<double> p = discrete_probabilities(d, 50);
      CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
    }
  }

  TEST_CASE("continuous samplers match their distributions") {
    for (Distribution d : {Distribution::Uniform, Distribution::Linear, Distribution::BetaMixture}) {
      const std::vector<double> x = sample_forecasts(ScenarioSpec{Scenario{d, std::nullopt}, 100000, 31});
      CHECK(ks_statistic(x, d) < .01);
    }
  }

  TEST_CASE("discrete samplers hit the midpoints with the right frequencies") {
    const Scenario s{Distribution::Linear, 10};
    const std::vector<double> x = sample_forecasts(ScenarioSpec{s, 100000, 32});
    const std::vector<double> p = discrete_probabilities(Distribution::Linear, 10);
    std::vector<int> counts(10, 0);
    for (double v : x) {
      const int j = static_cast<int>(std::lround(v * 20.0 - 1.0) / 2);
      REQUIRE(v == doctest::Approx((2.0 * j + 1) / 20.0));
      ++counts[j];
    }
    for (int j = 0; j < 10; ++j) CHECK(std::abs(counts[j] / 1e5 - p[j]) < .005);
  }

  TEST_CASE("calibrated outcomes") {
    const std::vector<double> zeros(100, 0.0);
    const std::vector<double> ones(100, 1.0);
    for (auto y : sample_outcomes_calibrated(zeros, 1)) CHECK(y == 0);
    for (auto y : sample_outcomes_calibrated(ones, 1)) CHECK(y == 1);
    const std::vector<double> half(100000, .5);
    const std::vector<std::uint8_t> y = sample_outcomes_calibrated(half, 2);
    CHECK(std::abs(std::accumulate(y.begin(), y.end(), 0.0) / 1e5 - .5) < .005);
  }

  TEST_CASE("binning estimators") {
    const ForecastDataset data({.1, .3, .6, .9}, {1, 0, 0, 1});
    for (double v : binning_counting_estimate(data, BinningEstimatorSpec::fixed(2))) CHECK(v == .5);
    for (double v : binning_counting_estimate(data, BinningEstimatorSpec::fixed(1))) CHECK(v == .5);
    const ForecastDataset skew({.1, .2, .3, .9}, {1, 1, 0, 0});
    for (double v : binning_counting_estimate(skew, BinningEstimatorSpec::fixed(1))) CHECK(v == .5);
    const std::vector<double> two = binning_counting_estimate(skew, BinningEstimatorSpec::fixed(2));
    CHECK(two[0] == doctest::Approx(2.0 / 3.0));
    CHECK(two[3] == 0.0);

    const BinningEstimatorSpec q = BinningEstimatorSpec::quantile(1.0 / 3.0);
    CHECK(q.bin_count(1000) == 10);
    CHECK(q.bin_count(1) == 1);
    CHECK(BinningEstimatorSpec::quantile(.5).bin_count(4096) == 64);
    CHECK_THROWS_AS(BinningEstimatorSpec::fixed(0).validate(), ValidationError);

    std::vector<double> x(1000);
    for (int i = 0; i < 1000; ++i) x[i] = (i + .5) / 1000.0;
    std::vector<std::uint8_t> y(1000, 0);
    for (int i = 0; i < 1000; i += 7) y[i] = 1;
    const std::vector<double> est = binning_counting_estimate(ForecastDataset(x, y), q);
    std::vector<double> distinct(est.begin(), est.end());
    // Each of the 10 bins holds about 100 observations: check via run lengths.
    std::vector<int> runs;
    int run = 1;
    for (int i = 1; i < 1000; ++i) {
      if (est[i] == est[i - 1]) {
        ++run;
      } else {
        runs.push_back(run);
        run = 1;
      }
    }
    runs.push_back(run);
    CHECK(runs.size() <= 10);
    for (int r : runs) CHECK(r >= 99);
  }

  TEST_CASE("estimator names") {
    CHECK(EstimatorSpec::corp().name() == "corp");
    CHECK(EstimatorSpec::from(BinningEstimatorSpec::fixed(5)).name() == "fixed-m5");
    CHECK(default_estimators().size() == 7);
  }

  TEST_CASE("studies are deterministic in the seed") {
    const std::vector<Scenario> sc{Scenario::parse("uniform-discrete10")};
    const std::vector<EstimatorSpec> est = default_estimators();
    const std::vector<std::size_t> sizes{128};
    const StudyResult a = mse_study(sc, est, sizes, 20, 5);
    const StudyResult b = mse_study(sc, est, sizes, 20, 5);
    const StudyResult c = mse_study(sc, est, sizes, 20, 6);
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.to_csv() != c.to_csv());
    CHECK(a.to_csv().rfind("scenario,estimator,n,mse,replicates,seed,method\n", 0) == 0);
  }

  TEST_CASE("CORP dominates binning at n = 1024") {
    const std::vector<Scenario> sc = appendix_scenarios();
    const std::vector<EstimatorSpec> est = default_estimators();
    const std::vector<std::size_t> sizes{1024};
    const StudyResult r = mse_study(sc, est, sizes, 200, 77);
    for (const Scenario& s : sc) {
      const double corp = r.find(s.name(), "corp", 1024)->statistic;
      for (const EstimatorSpec& e : est) {
        if (!e.binning) continue;
        CHECK_MESSAGE(corp <= 1.05 * r.find(s.name(), e.name(), 1024)->statistic, s.name() << " " << e.name());
      }
    }
  }

  TEST_CASE("fixed bins plateau while CORP keeps improving") {
    const std::vector<Scenario> sc{Scenario::parse("uniform-continuous")};
    const std::vector<EstimatorSpec> est{EstimatorSpec::corp(), EstimatorSpec::from(BinningEstimatorSpec::fixed(5))};
    const std::vector<std::size_t> sizes{4096, 32768};
    const StudyResult r = mse_study(sc, est, sizes, 20, 3);
    const double f_small = r.find("uniform-continuous", "fixed-m5", 4096)->statistic;
    const double f_large = r.find("uniform-continuous", "fixed-m5", 32768)->statistic;
    // Squared bias of five bins on the diagonal is 0.1^2 / 3.
    CHECK(f_large == doctest::Approx(.01 / 3.0).epsilon(.1));
    CHECK(f_large > .8 * f_small);
    const double c_small = r.find("uniform-continuous", "corp", 4096)->statistic;
    const double c_large = r.find("uniform-continuous", "corp", 32768)->statistic;
    CHECK(c_large < .4 * c_small);
  }

  TEST_CASE("coverage nests across levels") {
    const std::vector<Scenario> sc{Scenario::parse("uniform-discrete10")};
    BandSpec wide;
    wide.level = .99;
    wide.replicates = 200;
    BandSpec narrow = wide;
    narrow.level = .90;
    const std::vector<BandSpec> bands{narrow, wide};
    const std::vector<std::size_t> sizes{512};
    const StudyResult r = coverage_study(sc, bands, sizes, 40, 12);
    const double c90 = r.find("uniform-discrete10", band_label(narrow), 512)->statistic;
    const double c99 = r.find("uniform-discrete10", band_label(wide), 512)->statistic;
    CHECK(c99 >= c90);
    CHECK(c99 > .95);
  }

  TEST_CASE("degenerate forecasts are covered") {
    const ForecastDataset data({0, 0, 0, 0}, {0, 0, 0, 0});
    BandSpec spec;
    spec.replicates = 50;
    const UncertaintyBand b = compute_band(data, spec);
    CHECK(diagonal_coverage(b) == 1.0);
  }

  TEST_CASE("log-log slope") {
    const std::vector<double> x{1, 2, 4, 8};
    const std::vector<double> y{1, .25, 1.0 / 16, 1.0 / 64};
    CHECK(loglog_slope(x, y) == doctest::Approx(-2.0));
  }
}
