#include "epifir/forecast.hpp"

#include <cmath>
#include <string>

namespace epifir {

namespace {

void check_config(const FirConfig& config, std::size_t rate_days) {
  if (config.horizon < 4) {
    throw InvalidInput("observation span must cover at least 4 days");
  }
  if (rate_days + 1 != config.horizon) {
    throw DimensionMismatch(
        "rate series length " + std::to_string(rate_days) +
        " does not match horizon " + std::to_string(config.horizon));
  }
  if (config.window == 0) {
    throw InvalidInput("prediction window must be at least one day");
  }
  const std::size_t limit = config.horizon - 2;  // orders live in (0, T-2)
  if (config.order_beta == 0 || config.order_beta >= limit ||
      config.order_gamma == 0 || config.order_gamma >= limit) {
    throw OrderOutOfRange("filter orders must lie strictly between 0 and " +
                          std::to_string(limit));
  }
  if (!(config.alpha_beta >= 0.0) || !(config.alpha_gamma >= 0.0) ||
      !std::isfinite(config.alpha_beta) || !std::isfinite(config.alpha_gamma)) {
    throw InvalidInput("ridge penalties must be finite and nonnegative");
  }
}

// The static and rolling variants differ only in whether the filters are
// refit after each predicted day; everything else — lag construction,
// rate feedback, state stepping — is this one loop. Keeping a single
// code path is what guarantees their first predicted day matches
// exactly.
ForecastTrace run_window(const RateSeries& rates, double infected,
                         double removed, const FirConfig& config,
                         bool refit_each_step, const StateStepper& stepper) {
  if (rates.beta.size() != rates.gamma.size()) {
    throw DimensionMismatch("beta and gamma series differ in length");
  }
  check_config(config, rates.beta.size());
  if (!stepper) throw InvalidInput("state stepper must be callable");

  std::vector<double> beta_history = rates.beta;
  std::vector<double> gamma_history = rates.gamma;
  FirFit beta_fit =
      fit_filter(beta_history, config.order_beta, config.alpha_beta);
  FirFit gamma_fit =
      fit_filter(gamma_history, config.order_gamma, config.alpha_gamma);

  ForecastTrace trace;
  trace.beta_hat.reserve(config.window);
  trace.gamma_hat.reserve(config.window);
  trace.infected_hat.reserve(config.window);
  trace.removed_hat.reserve(config.window);

  double current_infected = infected;
  double current_removed = removed;
  for (std::size_t step = 0; step < config.window; ++step) {
    if (step > 0) {
      // Predicted rates join the history so later lag vectors see them.
      beta_history.push_back(trace.beta_hat.back());
      gamma_history.push_back(trace.gamma_hat.back());
      if (refit_each_step) {
        try {
          beta_fit =
              fit_filter(beta_history, config.order_beta, config.alpha_beta);
          gamma_fit = fit_filter(gamma_history, config.order_gamma,
                                 config.alpha_gamma);
        } catch (const NonConvergence& e) {
          throw NonConvergence("refit failed at prediction step " +
                               std::to_string(step) + ": " + e.what());
        }
      }
    }

    const double beta_hat =
        fir_eval(beta_fit, make_lag_vector(beta_history, config.order_beta));
    const double gamma_hat = fir_eval(
        gamma_fit, make_lag_vector(gamma_history, config.order_gamma));
    trace.beta_hat.push_back(beta_hat);
    trace.gamma_hat.push_back(gamma_hat);

    const StepState next =
        stepper(current_infected, current_removed, beta_hat, gamma_hat);
    if (next.out_of_range) {
      trace.warnings.push_back(
          {config.horizon + step,
           "predicted state out of range at day " +
               std::to_string(config.horizon + step)});
    }
    trace.infected_hat.push_back(next.infected);
    trace.removed_hat.push_back(next.removed);
    current_infected = next.infected;
    current_removed = next.removed;
  }
  return trace;
}

}  // namespace

std::size_t auto_order(std::size_t horizon) {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(horizon) / 4.0));
}

std::pair<std::vector<double>, Matrix> build_design(
    std::span<const double> history, std::size_t order) {
  const std::size_t length = history.size();
  if (order == 0 || length < order + 2) {
    throw OrderOutOfRange("order " + std::to_string(order) +
                          " needs a rate history longer than " +
                          std::to_string(order + 1) + " (got " +
                          std::to_string(length) + ")");
  }
  const std::size_t rows = length - order;
  std::vector<double> target(rows);
  Matrix design(rows, order + 1);
  for (std::size_t a = 0; a < rows; ++a) {
    target[a] = history[order + a];
    design(a, 0) = 1.0;
    for (std::size_t b = 1; b <= order; ++b) {
      design(a, b) = history[order - b + a];
    }
  }
  return {std::move(target), std::move(design)};
}

std::vector<double> make_lag_vector(std::span<const double> history,
                                    std::size_t order) {
  if (order == 0 || history.size() < order) {
    throw OrderOutOfRange("lag vector of order " + std::to_string(order) +
                          " needs at least that many history values (got " +
                          std::to_string(history.size()) + ")");
  }
  std::vector<double> lag(order + 1);
  lag[0] = 1.0;
  for (std::size_t k = 1; k <= order; ++k) {
    lag[k] = history[history.size() - k];
  }
  return lag;
}

double fir_eval(const FirFit& fit, std::span<const double> lag) {
  if (fit.coefficients.size() != lag.size()) {
    throw DimensionMismatch("filter has " +
                            std::to_string(fit.coefficients.size()) +
                            " coefficients but the lag vector has " +
                            std::to_string(lag.size()) + " entries");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < lag.size(); ++k) {
    sum += fit.coefficients[k] * lag[k];
  }
  return sum;
}

FirFit fit_filter(std::span<const double> history, std::size_t order,
                  double alpha) {
  auto [target, design] = build_design(history, order);
  RidgeSolution solution = ridge_solve(design, target, alpha);
  return FirFit{std::move(solution.coefficients), order, alpha};
}

ForecastTrace forecast_static(const RateSeries& rates, double infected,
                              double removed, const FirConfig& config,
                              const StateStepper& stepper) {
  return run_window(rates, infected, removed, config, false, stepper);
}

ForecastTrace forecast_rolling(const RateSeries& rates, double infected,
                               double removed, const FirConfig& config,
                               const StateStepper& stepper) {
  return run_window(rates, infected, removed, config, true, stepper);
}

ForecastTrace forecast_counts(ForecastTrace trace, double population) {
  if (!(population > 0.0) || !std::isfinite(population)) {
    throw InvalidInput("population must be positive and finite");
  }
  for (double& v : trace.infected_hat) v *= population;
  for (double& v : trace.removed_hat) v *= population;
  return trace;
}

}  // namespace epifir
