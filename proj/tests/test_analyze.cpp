#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "adiaprep/analyze.hpp"

using namespace adiaprep;

namespace {

const double kR = 1.0 / std::numbers::sqrt2;
const double kQuarterPi = std::numbers::pi / 4;

OscillationStats stats_with(double mean, double variance) {
  OscillationStats s;
  s.mean_minmax = mean;
  s.mean_arith = mean;
  s.variance = variance;
  return s;
}

// `periods` (possibly fractional) periods of the offset curve at per_period samples each.
std::vector<double> offset_samples(double beta_sq, double theta, double j, int per_period, double periods) {
  const double a = std::sqrt(1 - beta_sq), b = std::sqrt(beta_sq);
  const double h = std::numbers::pi / j / per_period;
  const auto n = static_cast<std::size_t>(periods * per_period);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = oracle::offset_curve(a, b, theta, j, static_cast<double>(k) * h);
  return out;
}

}  // namespace

TEST_CASE("mean estimator names") {
  CHECK(parse_mean_estimator("minmax") == MeanEstimator::min_max);
  CHECK(parse_mean_estimator("arithmetic") == MeanEstimator::arithmetic);
  CHECK(to_string(MeanEstimator::min_max) == "minmax");
  CHECK(to_string(DiagnosisKind::anti_commuting) == "anti-commuting");
  CHECK_THROWS_AS(parse_mean_estimator("median"), AnalysisError);
}

TEST_CASE("oscillation statistics of simple series") {
  const std::vector<double> zeros(64, 0.0);
  const auto z = oscillation_stats(zeros, std::numbers::pi / 32, 2.0);
  CHECK(z.variance == 0.0);
  CHECK(z.peak_to_peak == 0.0);
  CHECK(z.mean_minmax == 0.0);

  const std::vector<double> flat(64, kR);
  const auto f = oscillation_stats(flat, std::numbers::pi / 32, 2.0);
  CHECK(f.mean_arith == doctest::Approx(kR).epsilon(1e-15));
  CHECK(f.variance < 1e-30);

  // cos(2t) sampled 20 times per period over 2.5 periods.
  const double h = std::numbers::pi / 20;
  std::vector<double> c(50);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::cos(2.0 * h * static_cast<double>(k));
  const auto s = oscillation_stats(c, h, 2.0);
  CHECK(s.window_periods == 2);
  CHECK(s.window_samples == 40);
  CHECK(s.maximum == 1.0);
  CHECK(s.minimum == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(s.amplitude == doctest::Approx(1.0));
  CHECK(std::abs(s.mean_arith) < 1e-15);
  CHECK(s.variance == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.shot_noise_floor == 0.0);
  CHECK(s.mean(MeanEstimator::arithmetic) == s.mean_arith);
}

TEST_CASE("oscillation statistics preconditions") {
  const std::vector<double> v(100, 0.0);
  CHECK_THROWS_AS(oscillation_stats(v, std::numbers::pi / 15, 2.0), AnalysisError);  // 15 per period
  CHECK_NOTHROW(oscillation_stats(v, std::numbers::pi / 16, 2.0));
  CHECK_THROWS_AS(oscillation_stats(std::vector<double>(31, 0.0), std::numbers::pi / 32, 2.0), AnalysisError);
  CHECK_NOTHROW(oscillation_stats(std::vector<double>(32, 0.0), std::numbers::pi / 32, 2.0));
  CHECK_THROWS_AS(oscillation_stats(v, 0.01, 0.0), AnalysisError);
  CHECK_THROWS_AS(oscillation_stats(v, 0.0, 2.0), AnalysisError);
  CHECK_THROWS_AS(oscillation_stats(v, 0.01, 2.0, std::vector<double>(3, 0.1)), AnalysisError);

  TimeSeries exact_only;
  exact_only.times = {0, 0.1, 0.2};
  exact_only.exact_values = {0, 0, 0};
  CHECK_THROWS_AS(oscillation_stats(exact_only, 2.0, SeriesChannel::sampled), AnalysisError);
}

TEST_CASE("oscillation statistics invariants on random sinusoids") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double w = 0.5 + 3 * u(rng);
    const double amp = u(rng), phase = 2 * std::numbers::pi * u(rng), offset = u(rng) - 0.5;
    const double per_period = 16 + 50 * u(rng);
    const double h = 2 * std::numbers::pi / w / per_period;
    const auto n = static_cast<std::size_t>(per_period * (1 + 5 * u(rng)));
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = offset + amp * std::cos(w * h * static_cast<double>(k) + phase);
    const auto s = oscillation_stats(v, h, w);
    CHECK(s.peak_to_peak >= 0.0);
    CHECK(s.variance >= 0.0);
    CHECK(s.variance <= 1.01 * s.amplitude * s.amplitude);
    CHECK(s.window_periods >= 1);
  }
}

TEST_CASE("excited weight from the product") {
  CHECK(excited_weight_from_product(0.0) == 0.0);
  CHECK(excited_weight_from_product(-1e-12) == 0.0);
  CHECK(excited_weight_from_product(0.09) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(excited_weight_from_product(0.21) == doctest::Approx(0.3).epsilon(1e-14));
  for (double b : {1e-12, 1e-8, 1e-4, 0.01, 0.2, 0.45}) {
    const double x = excited_weight_from_product(b * (1 - b));
    CHECK(std::abs(x - b) < 1e-12 * std::max(1.0, 1.0 / b) * b + 1e-15);
    CHECK(x * (1 - x) == doctest::Approx(b * (1 - b)).epsilon(1e-13));
    CHECK(x < 0.5);
  }
  // alpha = beta = 1/sqrt2: product 1/4 has no root below 1/2.
  CHECK_THROWS_AS(excited_weight_from_product(0.25), AnalysisError);
  CHECK_THROWS_AS(excited_weight_from_product(0.3), AnalysisError);
  CHECK_THROWS_AS(excited_weight_from_product(std::nan("")), AnalysisError);
}

TEST_CASE("general diagnosis matches the reference correction figures") {
  // Raw average 0.706690 and variance 0.0003222 give excited weight
  // 0.0003223 and corrected value 0.707145.
  const auto d = diagnose_general(stats_with(0.706690, 0.0003222), 1.0, {.reference_value = kR});
  CHECK(d.model_kind == DiagnosisKind::general);
  CHECK(d.beta_sq == doctest::Approx(0.0003223).epsilon(1e-3));
  CHECK(std::abs(d.corrected_value - 0.707145) < 1e-6);
  CHECK(d.raw_average == 0.706690);
  CHECK(d.reference_value == kR);
  CHECK(std::abs(d.corrected_value - kR) < std::abs(d.raw_average - kR));
  CHECK(d.beta_sq * (1 - d.beta_sq) == doctest::Approx(d.alpha_beta_sq).epsilon(1e-14));

  CHECK_THROWS_AS(diagnose_general(stats_with(0.5, 0.25)), AnalysisError);
  CHECK_THROWS_AS(diagnose_general(stats_with(0.5, 0.01), 0.0), AnalysisError);
}

TEST_CASE("anti-commuting diagnosis matches the reference prediction figures") {
  // Variance 0.000730 (= 2|beta|^2 to leading order) predicts <-X> = -0.999270.
  const auto d = diagnose_anticommuting(stats_with(0.0, 0.000730));
  CHECK(d.model_kind == DiagnosisKind::anti_commuting);
  CHECK(d.alpha_beta_sq == doctest::Approx(0.000365).epsilon(1e-12));
  CHECK(2 * d.beta_sq_shortcut == doctest::Approx(0.000730).epsilon(1e-12));
  REQUIRE(d.predicted_conserved.has_value());
  CHECK(std::abs(*d.predicted_conserved - (-0.999270)) < 1e-6);
  CHECK(*d.predicted_conserved == doctest::Approx(-1 + 2 * d.beta_sq).epsilon(1e-15));
  CHECK(d.corrected_value == d.raw_average);
}

TEST_CASE("shortcut and exact root agree within 2 beta_sq relative") {
  for (double b : {1e-6, 1e-4, 3e-4, 1e-3, 0.01, 0.05, 0.1}) {
    const auto d = diagnose_general(stats_with(0.7, b * (1 - b)));
    CHECK(std::abs(d.beta_sq_shortcut - d.beta_sq) / d.beta_sq < 2 * d.beta_sq);
  }
}

TEST_CASE("synthetic offset series with known excited weight") {
  const double beta_sq = 0.01;
  const auto v = offset_samples(beta_sq, 0.4, kQuarterPi, 64, 5.3);
  const auto s = oscillation_stats(v, 4.0 / 64, 2 * kQuarterPi);
  CHECK(s.window_periods == 5);
  CHECK(s.window_samples == 320);
  DiagnosisOptions opts;
  opts.mean_estimator = MeanEstimator::arithmetic;
  const auto d = diagnose_general(s, 1.0, opts);
  CHECK(d.beta_sq == doctest::Approx(beta_sq).epsilon(1e-12));
  CHECK(d.corrected_value == doctest::Approx(kR).epsilon(1e-12));
}

TEST_CASE("excited weight recovery over random offset series") {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double beta_sq = 0.05 * u(rng);
    const double theta = std::numbers::pi * (1 - 2 * u(rng));
    const double j = trial % 2 == 0 ? 1.0 : kQuarterPi;
    const auto v = offset_samples(beta_sq, theta, j, 48, 3.0 + u(rng));
    const auto d = diagnose_general(oscillation_stats(v, std::numbers::pi / j / 48, 2 * j));
    CHECK(std::abs(d.beta_sq - beta_sq) <= 1e-4 * beta_sq);
  }
}

TEST_CASE("the correction moves the preset estimate toward the reference") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double beta_sq = 1e-5 + 0.05 * u(rng);
    const double theta = std::numbers::pi * (1 - 2 * u(rng));
    const auto v = offset_samples(beta_sq, theta, kQuarterPi, 96, 2.0);
    for (auto est : {MeanEstimator::min_max, MeanEstimator::arithmetic}) {
      const auto d = diagnose_general(oscillation_stats(v, 4.0 / 96, 2 * kQuarterPi), 1.0,
                                      {.mean_estimator = est, .reference_value = kR});
      CHECK(std::abs(d.corrected_value - kR) < std::abs(d.raw_average - kR));
    }
  }
}

TEST_CASE("subtracting the shot-noise floor removes the upward bias") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double beta_sq = 3e-4, sigma = 7e-4;
  auto v = offset_samples(beta_sq, 1.0, kQuarterPi, 96, 40.0);
  std::vector<double> se(v.size(), sigma);
  for (auto& x : v) x += sigma * noise(rng);
  const auto s = oscillation_stats(v, 4.0 / 96, 2 * kQuarterPi, se);
  CHECK(s.shot_noise_floor == doctest::Approx(sigma * sigma).epsilon(1e-12));
  const double truth = beta_sq * (1 - beta_sq);
  CHECK(std::abs(s.signal_variance() - truth) < std::abs(s.variance - truth));
  const auto d = diagnose_general(s);
  CHECK(d.beta_sq == doctest::Approx(beta_sq).epsilon(0.05));

  OscillationStats clamp = stats_with(0.0, 1e-7);
  clamp.shot_noise_floor = 2e-7;
  CHECK(clamp.signal_variance() == 0.0);
}

TEST_CASE("observable profiles") {
  const auto m1 = model_one(1.0);
  const auto z1 = observable_profile(m1, m1.observable("Z"));
  CHECK(z1.anticommutes_with_target);
  CHECK_FALSE(z1.commutes_with_target);
  CHECK(z1.variance_weight() == doctest::Approx(2.0).epsilon(1e-14));
  const auto x1 = observable_profile(m1, m1.observable("-X"));
  CHECK(x1.commutes_with_target);
  CHECK(x1.ground_value == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(x1.excited_value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x1.transition_modulus < 1e-15);

  const auto m2 = model_two(kQuarterPi);
  const auto z2 = observable_profile(m2, m2.observable("Z"));
  CHECK_FALSE(z2.anticommutes_with_target);
  CHECK_FALSE(z2.commutes_with_target);
  CHECK(z2.ground_value == doctest::Approx(kR).epsilon(1e-15));
  CHECK(z2.excited_value == doctest::Approx(-kR).epsilon(1e-15));
  CHECK(z2.variance_weight() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("oscillation frequency") {
  CHECK(oscillation_frequency(model_one(1.0)) == 2.0);
  CHECK(oscillation_frequency(model_two(kQuarterPi)) == doctest::Approx(std::numbers::pi / 2));
  const auto custom = custom_model(HermitianOperator(pauli("Z").matrix() * -1.0, "H0"),
                                   HermitianOperator(pauli("X").matrix() * -0.7, "HT"), {pauli("Z")});
  CHECK(oscillation_frequency(custom) == doctest::Approx(1.4).epsilon(1e-14));
}

TEST_CASE("closed-form series agree with the simulated hold") {
  const auto m2 = model_two(kQuarterPi);
  const auto v = run_adiabatic(m2, AdiabaticSchedule(36.0, 1.0 / 24.0));
  const auto series = hold_series(v, m2, pauli("Z"), {36.0, 36.0, 1.0 / 24.0}, 0, ShotSampler(1));
  const auto predicted = predicted_series(decompose(v, m2), m2, "Z", 36.0, series.times);
  for (std::size_t k = 0; k < series.size(); ++k) {
    CHECK(std::abs(predicted.exact_values[k] - series.exact_values[k]) < 1e-9);
  }

  const auto m1 = model_one(1.0);
  const auto w = run_adiabatic(m1, AdiabaticSchedule(36.0, 0.125));
  const auto dec = decompose(w, m1);
  for (const char* label : {"Z", "-X"}) {
    const auto s = hold_series(w, m1, m1.observable(label), {36.0, 12.0, 0.125}, 0, ShotSampler(1));
    const auto p = predicted_series(dec, m1, label, 36.0, s.times);
    for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(p.exact_values[k] - s.exact_values[k]) < 1e-9);
  }
  CHECK_THROWS_AS(predicted_series(decompose(v, m2), m2, "-X", 36.0, series.times), AnalysisError);
}

TEST_CASE("diagnosis of a full preset run improves the estimate") {
  const auto m2 = model_two(kQuarterPi);
  const auto v = run_adiabatic(m2, AdiabaticSchedule(36.0, 1.0 / 24.0));
  const auto series = hold_series(v, m2, pauli("Z"), {36.0, 36.0, 1.0 / 24.0}, 0, ShotSampler(1));
  const auto d = diagnose_general(oscillation_stats(series, oscillation_frequency(m2)), 1.0,
                                  {.reference_value = kR});
  CHECK(d.beta_sq > 1e-6);
  CHECK(d.beta_sq == doctest::Approx(decompose(v, m2).beta_sq).epsilon(1e-6));
  CHECK(std::abs(d.corrected_value - kR) < std::abs(d.raw_average - kR));
}
