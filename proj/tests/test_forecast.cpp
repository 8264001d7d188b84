#include "epifir/forecast.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "generators.hpp"

using namespace epifir;

namespace {

// Rate history from a linear recurrence
//   h(t) = c0 + c1 h(t-1) + c2 h(t-2)
// whose characteristic roots are complex with modulus ~0.82, so the
// design matrix stays well conditioned over a few dozen steps.
std::vector<double> recurrence_history(double h0, double h1, double c0,
                                       double c1, double c2,
                                       std::size_t length) {
  std::vector<double> h = {h0, h1};
  while (h.size() < length) {
    const std::size_t t = h.size();
    h.push_back(c0 + c1 * h[t - 1] + c2 * h[t - 2]);
  }
  return h;
}

RateSeries random_rates(std::mt19937_64& rng, std::size_t days) {
  std::uniform_real_distribution<double> beta_pick(0.05, 0.4);
  std::uniform_real_distribution<double> gamma_pick(0.01, 0.1);
  RateSeries rates;
  for (std::size_t t = 0; t < days; ++t) {
    rates.beta.push_back(beta_pick(rng));
    rates.gamma.push_back(gamma_pick(rng));
  }
  return rates;
}

}  // namespace

TEST_CASE("design matrix pairs each value with the lags before it") {
  // h = (h0 .. h4), order 2: rows predict h2, h3, h4.
  const std::vector<double> h = {10.0, 11.0, 12.0, 13.0, 14.0};
  const auto [y, x] = build_design(h, 2);

  REQUIRE(y.size() == 3);
  CHECK(y == std::vector<double>{12.0, 13.0, 14.0});

  REQUIRE(x.rows() == 3);
  REQUIRE(x.cols() == 3);
  // Row a: (1, h(1+a), h(a)) — newest lag first after the intercept.
  const double expected[3][3] = {
      {1.0, 11.0, 10.0}, {1.0, 12.0, 11.0}, {1.0, 13.0, 12.0}};
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      CHECK(x(a, b) == expected[a][b]);
    }
  }
}

TEST_CASE("lag vector leads with the intercept and the newest value") {
  const std::vector<double> h = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> lag = make_lag_vector(h, 3);
  CHECK(lag == std::vector<double>{1.0, 4.0, 3.0, 2.0});
}

TEST_CASE("appending a value adds exactly one design row matching the lag") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  std::vector<double> h;
  for (int k = 0; k < 12; ++k) h.push_back(pick(rng));

  for (std::size_t order : {1u, 2u, 5u}) {
    const std::vector<double> lag = make_lag_vector(h, order);
    std::vector<double> extended = h;
    const double next = pick(rng);
    extended.push_back(next);
    const auto [y, x] = build_design(extended, order);
    CHECK(y.back() == next);
    for (std::size_t b = 0; b <= order; ++b) {
      CHECK(x(x.rows() - 1, b) == lag[b]);
    }
  }
}

TEST_CASE("filter evaluation is a dot product with length checking") {
  FirFit fit;
  fit.coefficients = {0.5, 2.0, -1.0};
  fit.order = 2;
  const std::vector<double> lag = {1.0, 3.0, 4.0};
  CHECK(fir_eval(fit, lag) == doctest::Approx(0.5 + 6.0 - 4.0).epsilon(1e-15));
  const std::vector<double> short_lag = {1.0, 3.0};
  CHECK_THROWS_AS(fir_eval(fit, short_lag), DimensionMismatch);
}

TEST_CASE("fitting recovers exact autoregressive coefficients") {
  const double c0 = 0.01, c1 = 1.6, c2 = -0.68;
  const std::vector<double> h =
      recurrence_history(0.05, 0.16, c0, c1, c2, 20);
  const FirFit fit = fit_filter(h, 2, 0.0);
  REQUIRE(fit.coefficients.size() == 3);
  CHECK(fit.coefficients[0] == doctest::Approx(c0).epsilon(1e-6));
  CHECK(fit.coefficients[1] == doctest::Approx(c1).epsilon(1e-6));
  CHECK(fit.coefficients[2] == doctest::Approx(c2).epsilon(1e-6));
}

TEST_CASE("order bounds are enforced") {
  const std::vector<double> h = {1.0, 2.0, 3.0, 4.0};
  CHECK_THROWS_AS(build_design(h, 0), OrderOutOfRange);
  CHECK_THROWS_AS(build_design(h, 3), OrderOutOfRange);  // only one row
  CHECK_NOTHROW(build_design(h, 2));
  CHECK_THROWS_AS(make_lag_vector(h, 5), OrderOutOfRange);
  CHECK_THROWS_AS(make_lag_vector(h, 0), OrderOutOfRange);
}

TEST_CASE("auto order rounds a quarter of the horizon half away from zero") {
  CHECK(auto_order(45) == 11);  // 11.25
  CHECK(auto_order(46) == 12);  // 11.5 rounds up
  CHECK(auto_order(44) == 11);
  CHECK(auto_order(6) == 2);    // 1.5 rounds up
  CHECK(auto_order(4) == 1);
}

TEST_CASE("static and rolling forecasts agree exactly on the first day") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t horizon = 20 + rng() % 30;
    const RateSeries rates = random_rates(rng, horizon - 1);
    FirConfig config;
    config.order_beta = 2 + rng() % 5;
    config.order_gamma = 2 + rng() % 5;
    config.alpha_beta = 1e-3;
    config.alpha_gamma = 1e-4;
    config.horizon = horizon;
    config.window = 5;

    const ForecastTrace s = forecast_static(rates, 0.02, 0.01, config);
    const ForecastTrace r = forecast_rolling(rates, 0.02, 0.01, config);
    CHECK(s.beta_hat[0] == r.beta_hat[0]);
    CHECK(s.gamma_hat[0] == r.gamma_hat[0]);
    CHECK(s.infected_hat[0] == r.infected_hat[0]);
    CHECK(s.removed_hat[0] == r.removed_hat[0]);
  }
}

TEST_CASE("a one-day window makes the variants identical") {
  std::mt19937_64 rng(77);
  const RateSeries rates = random_rates(rng, 29);
  FirConfig config;
  config.order_beta = 4;
  config.order_gamma = 3;
  config.horizon = 30;
  config.window = 1;
  const ForecastTrace s = forecast_static(rates, 0.05, 0.02, config);
  const ForecastTrace r = forecast_rolling(rates, 0.05, 0.02, config);
  CHECK(s.beta_hat == r.beta_hat);
  CHECK(s.gamma_hat == r.gamma_hat);
  CHECK(s.infected_hat == r.infected_hat);
  CHECK(s.removed_hat == r.removed_hat);
}

TEST_CASE("the variants genuinely diverge after the first day") {
  std::mt19937_64 rng(3);
  const RateSeries rates = random_rates(rng, 44);
  FirConfig config;
  config.order_beta = 3;
  config.order_gamma = 3;
  config.horizon = 45;
  config.window = 7;
  const ForecastTrace s = forecast_static(rates, 0.02, 0.01, config);
  const ForecastTrace r = forecast_rolling(rates, 0.02, 0.01, config);
  bool any_difference = false;
  for (std::size_t j = 1; j < 7; ++j) {
    any_difference = any_difference || s.beta_hat[j] != r.beta_hat[j] ||
                     s.gamma_hat[j] != r.gamma_hat[j];
  }
  CHECK(any_difference);
}

TEST_CASE("rates following an exact recurrence are forecast exactly") {
  // Both rate histories satisfy depth-2 linear recurrences, so with no
  // penalty the fitted filters reproduce the recurrences and every
  // predicted rate equals the true continuation — for both variants.
  const std::vector<double> beta_full =
      recurrence_history(0.30, 0.28, 0.03, 1.6, -0.68, 40);
  const std::vector<double> gamma_full =
      recurrence_history(0.08, 0.082, 0.003, 1.7, -0.74, 40);

  RateSeries rates;
  rates.beta.assign(beta_full.begin(), beta_full.begin() + 33);
  rates.gamma.assign(gamma_full.begin(), gamma_full.begin() + 33);

  FirConfig config;
  config.order_beta = 2;
  config.order_gamma = 2;
  config.alpha_beta = 0.0;
  config.alpha_gamma = 0.0;
  config.horizon = 34;
  config.window = 6;

  const ForecastTrace s = forecast_static(rates, 0.02, 0.01, config);
  const ForecastTrace r = forecast_rolling(rates, 0.02, 0.01, config);
  for (const ForecastTrace* trace : {&s, &r}) {
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(trace->beta_hat[j] ==
            doctest::Approx(beta_full[33 + j]).epsilon(1e-7));
      CHECK(trace->gamma_hat[j] ==
            doctest::Approx(gamma_full[33 + j]).epsilon(1e-7));
    }
  }
}

TEST_CASE("forecast states follow the chosen stepper") {
  std::mt19937_64 rng(55);
  const RateSeries rates = random_rates(rng, 19);
  FirConfig config;
  config.order_beta = 2;
  config.order_gamma = 2;
  config.horizon = 20;
  config.window = 3;

  const ForecastTrace fractions = forecast_static(rates, 0.02, 0.01, config);
  // Replaying the predicted rates through the step function must land on
  // the same states.
  double i = 0.02, r = 0.01;
  for (std::size_t j = 0; j < 3; ++j) {
    const StepState next =
        step_fractions(i, r, fractions.beta_hat[j], fractions.gamma_hat[j]);
    CHECK(fractions.infected_hat[j] == next.infected);
    CHECK(fractions.removed_hat[j] == next.removed);
    i = next.infected;
    r = next.removed;
  }

  const ForecastTrace counts =
      forecast_static(rates, 5000.0, 2000.0, config, step_counts);
  double ic = 5000.0, rc = 2000.0;
  for (std::size_t j = 0; j < 3; ++j) {
    const StepState next =
        step_counts(ic, rc, counts.beta_hat[j], counts.gamma_hat[j]);
    CHECK(counts.infected_hat[j] == next.infected);
    CHECK(counts.removed_hat[j] == next.removed);
    ic = next.infected;
    rc = next.removed;
  }
}

TEST_CASE("trace vectors all have window length") {
  std::mt19937_64 rng(2);
  const RateSeries rates = random_rates(rng, 24);
  FirConfig config;
  config.order_beta = 3;
  config.order_gamma = 2;
  config.horizon = 25;
  config.window = 9;
  const ForecastTrace trace = forecast_rolling(rates, 0.02, 0.01, config);
  CHECK(trace.beta_hat.size() == 9);
  CHECK(trace.gamma_hat.size() == 9);
  CHECK(trace.infected_hat.size() == 9);
  CHECK(trace.removed_hat.size() == 9);
}

TEST_CASE("escaping the admissible region is warned with the day index") {
  // Strongly negative beta history drives the predicted infected
  // fraction negative within a couple of days.
  RateSeries rates;
  for (int t = 0; t < 9; ++t) {
    rates.beta.push_back(-0.8);
    rates.gamma.push_back(0.5);
  }
  FirConfig config;
  config.order_beta = 1;
  config.order_gamma = 1;
  config.horizon = 10;
  config.window = 4;
  const ForecastTrace trace = forecast_static(rates, 0.3, 0.1, config);
  REQUIRE(!trace.warnings.empty());
  CHECK(trace.warnings[0].index >= 10);
  CHECK(trace.warnings[0].index < 14);
}

TEST_CASE("forecast configuration is validated") {
  std::mt19937_64 rng(9);
  const RateSeries rates = random_rates(rng, 19);
  FirConfig config;
  config.order_beta = 3;
  config.order_gamma = 3;
  config.horizon = 20;
  config.window = 5;

  FirConfig wrong = config;
  wrong.horizon = 21;  // rates no longer match
  CHECK_THROWS_AS(forecast_static(rates, 0.1, 0.1, wrong), DimensionMismatch);

  wrong = config;
  wrong.window = 0;
  CHECK_THROWS_AS(forecast_static(rates, 0.1, 0.1, wrong), InvalidInput);

  wrong = config;
  wrong.order_beta = 18;  // must stay below horizon - 2
  CHECK_THROWS_AS(forecast_static(rates, 0.1, 0.1, wrong), OrderOutOfRange);

  wrong = config;
  wrong.order_gamma = 0;
  CHECK_THROWS_AS(forecast_static(rates, 0.1, 0.1, wrong), OrderOutOfRange);

  wrong = config;
  wrong.alpha_beta = -1.0;
  CHECK_THROWS_AS(forecast_static(rates, 0.1, 0.1, wrong), InvalidInput);

  RateSeries uneven = rates;
  uneven.gamma.pop_back();
  CHECK_THROWS_AS(forecast_static(uneven, 0.1, 0.1, config),
                  DimensionMismatch);

  CHECK_THROWS_AS(forecast_static(rates, 0.1, 0.1, config, StateStepper()),
                  InvalidInput);
}

TEST_CASE("count scaling multiplies states and validates the population") {
  ForecastTrace trace;
  trace.infected_hat = {0.1, 0.2};
  trace.removed_hat = {0.05, 0.06};
  trace.beta_hat = {0.3, 0.3};
  trace.gamma_hat = {0.1, 0.1};
  const ForecastTrace scaled = forecast_counts(trace, 1000.0);
  CHECK(scaled.infected_hat == std::vector<double>{100.0, 200.0});
  CHECK(scaled.removed_hat == std::vector<double>{50.0, 60.0});
  CHECK(scaled.beta_hat == trace.beta_hat);  // rates stay rates
  CHECK_THROWS_AS(forecast_counts(trace, 0.0), InvalidInput);
  CHECK_THROWS_AS(forecast_counts(trace, -5.0), InvalidInput);
}
