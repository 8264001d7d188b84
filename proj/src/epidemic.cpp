#include "epifir/epidemic.hpp"

#include <cmath>
#include <string>

namespace epifir {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

bool all_finite(const std::vector<double>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void note_negative_rates(double beta, double gamma, std::size_t day,
                         std::vector<Warning>* warnings) {
  if (warnings == nullptr) return;
  if (beta < 0.0) {
    warnings->push_back(
        {day, "negative transmission rate beta(" + std::to_string(day) + ")"});
  }
  if (gamma < 0.0) {
    warnings->push_back(
        {day, "negative recovery rate gamma(" + std::to_string(day) + ")"});
  }
}

}  // namespace

void validate(const EpidemicSeries& series) {
  require(series.infected.size() == series.removed.size(),
          "infected and removed series differ in length");
  require(series.population > 0.0 && std::isfinite(series.population),
          "population must be positive and finite");
  require(all_finite(series.infected) && all_finite(series.removed),
          "series entries must be finite");
  for (std::size_t t = 0; t < series.infected.size(); ++t) {
    require(series.infected[t] >= 0.0 && series.removed[t] >= 0.0,
            "negative count at day " + std::to_string(t));
    require(series.infected[t] + series.removed[t] <= series.population,
            "infected + removed exceeds population at day " +
                std::to_string(t));
  }
}

void validate(const FractionSeries& fractions) {
  require(fractions.infected.size() == fractions.removed.size(),
          "infected and removed fraction series differ in length");
  require(all_finite(fractions.infected) && all_finite(fractions.removed),
          "fraction entries must be finite");
  for (std::size_t t = 0; t < fractions.infected.size(); ++t) {
    require(fractions.infected[t] >= 0.0 && fractions.removed[t] >= 0.0,
            "negative fraction at day " + std::to_string(t));
    require(fractions.infected[t] + fractions.removed[t] <= 1.0,
            "fractions sum past 1 at day " + std::to_string(t));
  }
}

FractionSeries to_fractions(const EpidemicSeries& series) {
  validate(series);
  FractionSeries fractions;
  fractions.infected.reserve(series.infected.size());
  fractions.removed.reserve(series.removed.size());
  for (double v : series.infected) fractions.infected.push_back(v / series.population);
  for (double v : series.removed) fractions.removed.push_back(v / series.population);
  return fractions;
}

RateSeries extract_rates(const FractionSeries& fractions,
                         std::vector<Warning>* warnings) {
  validate(fractions);
  const std::size_t days = fractions.infected.size();
  require(days >= 2, "rate extraction needs at least two days");

  RateSeries rates;
  rates.beta.reserve(days - 1);
  rates.gamma.reserve(days - 1);
  for (std::size_t t = 0; t + 1 < days; ++t) {
    const double i = fractions.infected[t];
    const double r = fractions.removed[t];
    if (i <= 0.0) throw ZeroInfected(t);
    const double susceptible = 1.0 - i - r;
    if (susceptible <= kSusceptibleFloor) throw DepletedSusceptible(t);

    const double di = fractions.infected[t + 1] - i;
    const double dr = fractions.removed[t + 1] - r;
    const double gamma = dr / i;
    const double beta = (di + dr) / (i * susceptible);
    note_negative_rates(beta, gamma, t, warnings);
    rates.beta.push_back(beta);
    rates.gamma.push_back(gamma);
  }
  return rates;
}

RateSeries extract_rates_from_counts(const EpidemicSeries& series,
                                     std::vector<Warning>* warnings) {
  validate(series);
  const std::size_t days = series.infected.size();
  require(days >= 2, "rate extraction needs at least two days");

  RateSeries rates;
  rates.beta.reserve(days - 1);
  rates.gamma.reserve(days - 1);
  for (std::size_t t = 0; t + 1 < days; ++t) {
    const double i = series.infected[t];
    if (i <= 0.0) throw ZeroInfected(t);

    const double di = series.infected[t + 1] - i;
    const double dr = series.removed[t + 1] - series.removed[t];
    const double gamma = dr / i;
    const double beta = (di + dr) / i;
    note_negative_rates(beta, gamma, t, warnings);
    rates.beta.push_back(beta);
    rates.gamma.push_back(gamma);
  }
  return rates;
}

StepState step_fractions(double infected, double removed, double beta,
                         double gamma) {
  StepState next;
  next.infected = (1.0 + beta * (1.0 - infected - removed) - gamma) * infected;
  next.removed = removed + gamma * infected;
  next.out_of_range = next.infected < 0.0 || next.removed < 0.0 ||
                      next.infected + next.removed > 1.0;
  return next;
}

StepState step_counts(double infected, double removed, double beta,
                      double gamma) {
  StepState next;
  next.infected = (1.0 + beta - gamma) * infected;
  next.removed = removed + gamma * infected;
  next.out_of_range = next.infected < 0.0 || next.removed < 0.0;
  return next;
}

std::vector<double> merge_compartments(std::span<const double> recovered,
                                       std::span<const double> deaths) {
  if (recovered.size() != deaths.size()) {
    throw DimensionMismatch("recovered and deceased series differ in length");
  }
  std::vector<double> removed;
  removed.reserve(recovered.size());
  for (std::size_t t = 0; t < recovered.size(); ++t) {
    removed.push_back(recovered[t] + deaths[t]);
  }
  return removed;
}

FractionSeries simulate(double infected0, double removed0,
                        const RateSeries& rates,
                        std::vector<Warning>* warnings) {
  require(rates.beta.size() == rates.gamma.size(),
          "beta and gamma series differ in length");
  require(std::isfinite(infected0) && std::isfinite(removed0) &&
              infected0 >= 0.0 && removed0 >= 0.0 &&
              infected0 + removed0 <= 1.0,
          "initial state is not an admissible fraction pair");

  FractionSeries out;
  out.infected.reserve(rates.beta.size() + 1);
  out.removed.reserve(rates.beta.size() + 1);
  out.infected.push_back(infected0);
  out.removed.push_back(removed0);
  for (std::size_t t = 0; t < rates.beta.size(); ++t) {
    const StepState next = step_fractions(out.infected.back(), out.removed.back(),
                                          rates.beta[t], rates.gamma[t]);
    if (next.out_of_range && warnings != nullptr) {
      warnings->push_back(
          {t + 1, "state left [0,1] at day " + std::to_string(t + 1)});
    }
    out.infected.push_back(next.infected);
    out.removed.push_back(next.removed);
  }
  return out;
}

}  // namespace epifir
