#include "epifir/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace epifir {

std::string to_string(Method method) {
  return method == Method::original ? "original" : "modified";
}

double err_window(std::span<const double> actual,
                  std::span<const double> predicted) {
  if (actual.size() != predicted.size() || actual.empty()) {
    throw DimensionMismatch("error metric needs two equally long, non-empty "
                            "series");
  }
  double worst_gap = 0.0;
  double scale = 0.0;
  for (std::size_t t = 0; t < actual.size(); ++t) {
    worst_gap = std::max(worst_gap, std::abs(actual[t] - predicted[t]));
    scale = std::max(scale, std::abs(actual[t]));
  }
  if (scale == 0.0) {
    throw ZeroDenominator("reference series is identically zero");
  }
  return worst_gap / scale;
}

std::pair<EpidemicSeries, EpidemicSeries> slice_window(
    const EpidemicSeries& series, const AnalysisWindow& window) {
  validate(series);
  const std::size_t needed = window.start + window.horizon + window.window;
  if (window.horizon < 4 || window.window == 0) {
    throw InvalidInput("analysis window needs horizon >= 4 and window >= 1");
  }
  if (needed > series.infected.size()) {
    throw InvalidInput("window needs " + std::to_string(needed) +
                       " days but the series has " +
                       std::to_string(series.infected.size()));
  }

  const auto sub = [&](std::size_t from, std::size_t count) {
    EpidemicSeries out;
    out.population = series.population;
    out.infected.assign(series.infected.begin() + from,
                        series.infected.begin() + from + count);
    out.removed.assign(series.removed.begin() + from,
                       series.removed.begin() + from + count);
    return out;
  };
  return {sub(window.start, window.horizon),
          sub(window.start + window.horizon, window.window)};
}

MethodRun run_method(const EpidemicSeries& known, const EpidemicSeries& truth,
                     Method method, FirConfig config) {
  if (known.infected.size() != config.horizon ||
      truth.infected.size() != config.window) {
    throw DimensionMismatch("slice sizes do not match the configured horizon "
                            "and window");
  }
  if (config.order_beta == 0) config.order_beta = auto_order(config.horizon);
  if (config.order_gamma == 0) config.order_gamma = auto_order(config.horizon);

  MethodRun run;
  run.method = method;
  run.config = config;
  if (method == Method::original) {
    run.rates = extract_rates_from_counts(known, &run.warnings);
    run.trace =
        forecast_static(run.rates, known.infected.back(), known.removed.back(),
                        config, step_counts);
  } else {
    const FractionSeries fractions = to_fractions(known);
    run.rates = extract_rates(fractions, &run.warnings);
    run.trace = forecast_counts(
        forecast_rolling(run.rates, fractions.infected.back(),
                         fractions.removed.back(), config),
        known.population);
  }
  run.error.err_infected = err_window(truth.infected, run.trace.infected_hat);
  run.error.err_removed = err_window(truth.removed, run.trace.removed_hat);
  run.error.first_day = config.horizon;
  run.error.last_day = config.horizon + config.window - 1;
  return run;
}

namespace {

ComparisonRow evaluate_row(const EpidemicSeries& series,
                           const AnalysisWindow& window, Method method,
                           FirConfig config) {
  config.horizon = window.horizon;
  config.window = window.window;
  ComparisonRow row;
  row.label = window.label;
  row.method = method;
  row.config = config;
  if (row.config.order_beta == 0) {
    row.config.order_beta = auto_order(window.horizon);
  }
  if (row.config.order_gamma == 0) {
    row.config.order_gamma = auto_order(window.horizon);
  }
  try {
    const auto [known, truth] = slice_window(series, window);
    row.error = run_method(known, truth, method, row.config).error;
  } catch (const Error& e) {
    row.failure = e.what();
  }
  return row;
}

}  // namespace

std::vector<ComparisonRow> compare_methods(
    const EpidemicSeries& series, std::span<const AnalysisWindow> windows,
    const FirConfig& original_config, const FirConfig& modified_config) {
  std::vector<ComparisonRow> rows;
  rows.reserve(windows.size() * 2);
  for (const AnalysisWindow& window : windows) {
    rows.push_back(
        evaluate_row(series, window, Method::original, original_config));
    rows.push_back(
        evaluate_row(series, window, Method::modified, modified_config));
  }
  return rows;
}

std::vector<ComparisonRow> grid_sweep(const EpidemicSeries& series,
                                      const AnalysisWindow& window,
                                      std::span<const std::size_t> orders,
                                      std::span<const double> alphas) {
  std::vector<ComparisonRow> rows;
  rows.reserve(orders.size() * alphas.size() * alphas.size());
  for (std::size_t order : orders) {
    for (double alpha_beta : alphas) {
      for (double alpha_gamma : alphas) {
        FirConfig config;
        config.order_beta = order;
        config.order_gamma = order;
        config.alpha_beta = alpha_beta;
        config.alpha_gamma = alpha_gamma;
        rows.push_back(
            evaluate_row(series, window, Method::modified, config));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) {
                     if (a.error.has_value() != b.error.has_value()) {
                       return a.error.has_value();
                     }
                     if (!a.error.has_value()) return false;
                     return a.error->err_infected < b.error->err_infected;
                   });
  return rows;
}

std::string format_error(double value) {
  char buffer[64];
  if (std::abs(value) < 1e-2) {
    std::snprintf(buffer, sizeof(buffer), "%.4e", value);
  } else {
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  }
  return buffer;
}

}  // namespace epifir
