#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "epifir/epidemic.hpp"
#include "epifir/ridge.hpp"

namespace epifir {

/// Knobs for fitting and running the rate forecasters.
struct FirConfig {
  std::size_t order_beta = 0;   ///< taps J in the transmission filter
  std::size_t order_gamma = 0;  ///< taps K in the recovery filter
  double alpha_beta = 1e-3;     ///< ridge penalty for the beta filter
  double alpha_gamma = 1e-4;    ///< ridge penalty for the gamma filter
  std::size_t horizon = 45;     ///< T, number of observed days
  std::size_t window = 7;       ///< W, number of days to predict
};

/// A fitted autoregressive filter: prediction = coefficients . lag vector,
/// where the lag vector is (1, newest value, ..., order-th newest value).
struct FirFit {
  std::vector<double> coefficients;  ///< length order + 1, intercept first
  std::size_t order = 0;
  double alpha = 0.0;
};

/// Everything produced while walking the prediction window. All vectors
/// have length equal to the window; entry j describes predicted day
/// horizon + j (states) and the transition into it (rates).
struct ForecastTrace {
  std::vector<double> beta_hat;
  std::vector<double> gamma_hat;
  std::vector<double> infected_hat;
  std::vector<double> removed_hat;
  std::vector<Warning> warnings;
};

/// Advances one state under predicted rates; lets the same forecasting
/// loop drive either the fraction dynamics or the count dynamics.
using StateStepper =
    std::function<StepState(double infected, double removed, double beta,
                            double gamma)>;

/// Default filter order as a function of the observation span:
/// round(T / 4), halves away from zero.
std::size_t auto_order(std::size_t horizon);

/// Builds the regression target and design matrix for fitting an
/// order-`order` filter to `history` (values h(0..L-1)):
///   y_a      = h(order + a)                      a = 0..L-order-1
///   X(a, 0)  = 1
///   X(a, b)  = h(order - b + a)                  b = 1..order
/// Row a therefore pairs h(order + a) with the `order` values before it.
/// Requires 0 < order < L - 1 (at least two rows); otherwise throws
/// OrderOutOfRange.
std::pair<std::vector<double>, Matrix> build_design(
    std::span<const double> history, std::size_t order);

/// Lag vector (1, h(L-1), h(L-2), ..., h(L-order)) for predicting the
/// value after the end of `history`. Throws OrderOutOfRange when the
/// history is shorter than the order.
std::vector<double> make_lag_vector(std::span<const double> history,
                                    std::size_t order);

/// Applies a fitted filter to a lag vector (plain dot product). Throws
/// DimensionMismatch when the lengths disagree.
double fir_eval(const FirFit& fit, std::span<const double> lag);

/// Fits one filter to a rate history via ridge regression.
FirFit fit_filter(std::span<const double> history, std::size_t order,
                  double alpha);

/// Static-coefficient forecast: fit both filters once on the observed
/// rates, then roll the filters and the state forward through the whole
/// window, feeding predicted rates back into the lag vectors. `rates`
/// must hold exactly horizon - 1 entries; `infected`/`removed` are the
/// state at the last observed day. The stepper defaults to the fraction
/// dynamics.
ForecastTrace forecast_static(const RateSeries& rates, double infected,
                              double removed, const FirConfig& config,
                              const StateStepper& stepper = step_fractions);

/// Rolling-refit forecast: identical walk, but both filters are refit
/// from scratch each day on the history extended with the rates
/// predicted so far. The first predicted day uses the same fit as the
/// static variant, so the two agree exactly there.
ForecastTrace forecast_rolling(const RateSeries& rates, double infected,
                               double removed, const FirConfig& config,
                               const StateStepper& stepper = step_fractions);

/// Scales a fraction-space trace back to counts (in place copies):
/// multiplies infected_hat/removed_hat by the population.
ForecastTrace forecast_counts(ForecastTrace trace, double population);

}  // namespace epifir
