#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "epifir/errors.hpp"

namespace epifir {

/// Non-fatal observation attached to a specific day index.
struct Warning {
  std::size_t index;
  std::string message;
};

/// Daily infected/removed counts for one region, plus its population.
/// Entries are stored as doubles so that derived quantities (fractions,
/// rates) need no conversion, but they represent whole individuals.
struct EpidemicSeries {
  std::vector<double> infected;
  std::vector<double> removed;
  double population = 0.0;
};

/// Same series normalized by population: i(t) = I(t)/n, r(t) = R(t)/n.
struct FractionSeries {
  std::vector<double> infected;
  std::vector<double> removed;
};

/// Daily transmission and recovery rates. beta[t] and gamma[t] describe
/// the transition from day t to day t+1, so both run one entry shorter
/// than the state series they were extracted from.
struct RateSeries {
  std::vector<double> beta;
  std::vector<double> gamma;
};

/// Result of advancing the state one day.
struct StepState {
  double infected = 0.0;
  double removed = 0.0;
  /// True when the step left the admissible region (i < 0 or i + r > 1
  /// for fractions, negative counts for count stepping). The values are
  /// still reported as computed; callers decide how to react.
  bool out_of_range = false;
};

/// Guard threshold for the susceptible fraction 1 - i - r. Below this
/// the transmission-rate denominator is treated as zero.
inline constexpr double kSusceptibleFloor = 1e-12;

/// Throws InvalidInput unless lengths match, population > 0, all entries
/// are finite, nonnegative, and I(t) + R(t) <= population.
void validate(const EpidemicSeries& series);

/// Throws InvalidInput unless lengths match and every day satisfies
/// 0 <= i, 0 <= r, i + r <= 1 with finite entries.
void validate(const FractionSeries& fractions);

/// Divides counts by population. Validates the input first.
FractionSeries to_fractions(const EpidemicSeries& series);

/// Recovers the daily rates that reproduce a fraction series exactly:
///   gamma(t) = (r(t+1) - r(t)) / i(t)
///   beta(t)  = ((i(t+1) - i(t)) + (r(t+1) - r(t))) / (i(t) * (1 - i(t) - r(t)))
/// Requires at least two days. Throws ZeroInfected when i(t) = 0 and
/// DepletedSusceptible when 1 - i(t) - r(t) <= kSusceptibleFloor.
/// Negative extracted rates are passed through unchanged; when
/// `warnings` is non-null a note is appended for each offending day.
RateSeries extract_rates(const FractionSeries& fractions,
                         std::vector<Warning>* warnings = nullptr);

/// Rate extraction on raw counts under the whole-population mixing
/// approximation S(t) ~= n:
///   gamma(t) = (R(t+1) - R(t)) / I(t)
///   beta(t)  = ((I(t+1) - I(t)) + (R(t+1) - R(t))) / I(t)
/// Same length/positivity requirements and warning behaviour as
/// extract_rates; no susceptible guard is involved.
RateSeries extract_rates_from_counts(
    const EpidemicSeries& series, std::vector<Warning>* warnings = nullptr);

/// One forward step of the fraction dynamics:
///   i(t+1) = (1 + beta(t) * (1 - i(t) - r(t)) - gamma(t)) * i(t)
///   r(t+1) = r(t) + gamma(t) * i(t)
/// Inputs are not clamped; out_of_range flags an inadmissible result.
StepState step_fractions(double infected, double removed, double beta,
                         double gamma);

/// One forward step of the count dynamics under S ~= n:
///   I(t+1) = (1 + beta(t) - gamma(t)) * I(t)
///   R(t+1) = R(t) + gamma(t) * I(t)
StepState step_counts(double infected, double removed, double beta,
                      double gamma);

/// Elementwise sum of the recovered and deceased compartments. A model
/// with separate recovery and death outflows collapses to the two-
/// compartment form used here by tracking their sum as "removed".
/// Throws DimensionMismatch when lengths differ.
std::vector<double> merge_compartments(std::span<const double> recovered,
                                       std::span<const double> deaths);

/// Replays the dynamics from an initial state through a rate series,
/// producing a fraction series one entry longer than the rates. The
/// exact inverse of extract_rates: extracting rates from the output
/// returns the input rates up to floating-point error. out-of-range
/// states are recorded as warnings (when requested), not clamped.
FractionSeries simulate(double infected0, double removed0,
                        const RateSeries& rates,
                        std::vector<Warning>* warnings = nullptr);

}  // namespace epifir
