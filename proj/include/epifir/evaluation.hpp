#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "epifir/epidemic.hpp"
#include "epifir/forecast.hpp"

namespace epifir {

/// The two forecasting pipelines under comparison.
enum class Method {
  /// Count-based pipeline: rates from raw counts under S ~= n, filters
  /// fit once, count dynamics stepped with static coefficients.
  original,
  /// Fraction-based pipeline: rates from population fractions, filters
  /// refit after every predicted day, fraction dynamics rescaled to
  /// counts at the end.
  modified,
};

std::string to_string(Method method);

/// Relative infinity-norm errors over one prediction window.
struct WindowError {
  double err_infected = 0.0;
  double err_removed = 0.0;
  std::size_t first_day = 0;  ///< first scored day, t = T
  std::size_t last_day = 0;   ///< last scored day, t = T + W - 1
};

/// One analysis window inside a longer series: days start .. start+T-1
/// are observed, days start+T .. start+T+W-1 are held out as truth.
struct AnalysisWindow {
  std::size_t start = 0;
  std::size_t horizon = 45;  ///< T
  std::size_t window = 7;    ///< W
  std::string label;
};

/// Full output of one pipeline run on one window.
struct MethodRun {
  Method method = Method::modified;
  FirConfig config;            ///< as actually used (orders resolved)
  RateSeries rates;            ///< measured rates from the observed days
  ForecastTrace trace;         ///< predictions in count space
  WindowError error;
  std::vector<Warning> warnings;  ///< rate-extraction warnings
};

/// One row of a comparison or sweep table. `error` is empty when the
/// pipeline failed on this window; `failure` then carries the reason.
struct ComparisonRow {
  std::string label;
  Method method = Method::modified;
  FirConfig config;
  std::optional<WindowError> error;
  std::string failure;
};

/// err_W(actual, predicted) = max_t |actual(t) - predicted(t)| /
/// max_t |actual(t)|. Scale-invariant; zero exactly when the series
/// agree. Throws DimensionMismatch on length disagreement (or empty
/// input) and ZeroDenominator when `actual` is identically zero.
double err_window(std::span<const double> actual,
                  std::span<const double> predicted);

/// Splits a series into the observed and held-out parts of a window.
/// Throws InvalidInput when the window does not fit inside the series.
std::pair<EpidemicSeries, EpidemicSeries> slice_window(
    const EpidemicSeries& series, const AnalysisWindow& window);

/// Runs one pipeline on pre-sliced data and scores it against truth.
/// `config.horizon`/`config.window` must match the slice sizes; filter
/// orders equal to 0 are resolved to auto_order(horizon) first.
MethodRun run_method(const EpidemicSeries& known, const EpidemicSeries& truth,
                     Method method, FirConfig config);

/// Scores both pipelines on every window. Each window contributes an
/// original row then a modified row; a window that fails for a pipeline
/// yields a row carrying the failure text instead of dropping the row.
/// The horizon/window fields of the passed configs are overridden per
/// window.
std::vector<ComparisonRow> compare_methods(
    const EpidemicSeries& series, std::span<const AnalysisWindow> windows,
    const FirConfig& original_config, const FirConfig& modified_config);

/// Evaluates the modified pipeline over the cartesian product
/// orders x alphas x alphas (order used for both filters) on one
/// window. Rows are sorted by err_infected ascending; failed rows sink
/// to the end in grid order.
std::vector<ComparisonRow> grid_sweep(const EpidemicSeries& series,
                                      const AnalysisWindow& window,
                                      std::span<const std::size_t> orders,
                                      std::span<const double> alphas);

/// Display formatting for error values: scientific with four decimals
/// below 1e-2 (e.g. "6.7120e-03"), otherwise six significant digits
/// (e.g. "0.045647"). Machine outputs keep full precision; this is for
/// tables and logs only.
std::string format_error(double value);

}  // namespace epifir
