// Generates the bundled Minas Gerais 2020 fixture (data/
// minas_gerais_2020.csv). The upstream state-level case repository is
// not vendored here, so the fixture is a deterministic synthetic
// reconstruction: a smooth multi-wave epidemic at Minas Gerais scale
// with weekday reporting seasonality and mild multiplicative reporting
// noise layered on top. Regenerating with the default flags reproduces
// the committed file byte for byte.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "epifir/data.hpp"

namespace {

constexpr double kPopulation = 21292666.0;  // 2020 state estimate
constexpr int kDays = 245;                  // 2020-05-01 .. 2020-12-31

// Target net daily growth of the active count: first wave cresting in
// late August, a trough through October, and a year-end resurgence.
struct Knot {
  double day;
  double growth;
};
const std::vector<Knot> kGrowthKnots = {
    {0.0, 0.042},   {60.0, 0.034},  {100.0, 0.018},
    {116.0, 0.000}, {140.0, -0.016}, {165.0, -0.002},
    {185.0, 0.012}, {215.0, 0.017}, {244.0, 0.015},
};

double growth_at(double day) {
  if (day <= kGrowthKnots.front().day) return kGrowthKnots.front().growth;
  for (std::size_t k = 1; k < kGrowthKnots.size(); ++k) {
    if (day <= kGrowthKnots[k].day) {
      const Knot& a = kGrowthKnots[k - 1];
      const Knot& b = kGrowthKnots[k];
      const double frac = (day - a.day) / (b.day - a.day);
      return a.growth + frac * (b.growth - a.growth);
    }
  }
  return kGrowthKnots.back().growth;
}

double recovery_at(double day) {
  return 0.068 + 0.008 * std::sin(2.0 * std::numbers::pi * day / 180.0 + 1.0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic Minas Gerais 2020 fixture CSV"};
  std::string out = "data/minas_gerais_2020.csv";
  std::uint64_t seed = 7;
  double weekly_amplitude = 1.0;
  double noise_sigma = 0.04;
  app.add_option("--out", out, "output CSV path");
  app.add_option("--seed", seed, "reporting-noise seed");
  app.add_option("--weekly", weekly_amplitude,
                 "weekday seasonality amplitude (1 = default pattern)");
  app.add_option("--noise", noise_sigma,
                 "reporting noise sigma (lognormal, mean one)");
  CLI11_PARSE(app, argc, argv);

  // Weekday reporting multipliers, Monday first, normalized to mean one
  // and then scaled around one by the amplitude flag.
  double week[7] = {1.08, 1.10, 1.06, 1.03, 0.98, 0.82, 0.72};
  double mean = 0.0;
  for (double w : week) mean += w / 7.0;
  for (double& w : week) w = 1.0 + weekly_amplitude * (w / mean - 1.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto jitter = [&] {
    return std::exp(noise_sigma * normal(rng) -
                    0.5 * noise_sigma * noise_sigma);
  };

  // True (unreported) state as population fractions.
  double infected = 809.0 / kPopulation;
  double removed = 1031.0 / kPopulation;
  // Reported cumulative totals, kept real-valued and rounded on output.
  double confirmed = 1840.0;
  double recovered = 950.0;
  double deaths = 81.0;

  const std::int64_t first_day = epifir::serial_day(epifir::Date{2020, 5, 1});
  std::string text = "date,confirmed,recovered,deaths\n";
  for (int t = 0; t < kDays; ++t) {
    const epifir::Date date = epifir::from_serial_day(first_day + t);
    const long long c = std::llround(confirmed);
    const long long r = std::llround(recovered);
    const long long d = std::llround(deaths);
    if (c - r - d <= 0) {
      std::fprintf(stderr, "active count went nonpositive on %s\n",
                   epifir::to_string(date).c_str());
      return 1;
    }
    text += epifir::to_string(date) + "," + std::to_string(c) + "," +
            std::to_string(r) + "," + std::to_string(d) + "\n";
    if (t == kDays - 1) break;

    const double growth = growth_at(t);
    const double gamma = recovery_at(t);
    const double susceptible = 1.0 - infected - removed;
    const double beta = (growth + gamma) / susceptible;

    // True daily flows, in people.
    const double new_infections = beta * susceptible * infected * kPopulation;
    const double new_removals = gamma * infected * kPopulation;
    // Deaths' share of removals drifts down over the year.
    const double death_share = 0.045 - 0.020 * static_cast<double>(t) / 244.0;

    // Reporting: confirmed counts follow the weekday pattern directly;
    // recoveries/deaths are processed with a one-day-rotated pattern.
    const int dow = (4 + t) % 7;  // day 0 is a Friday
    confirmed += new_infections * week[dow] * jitter();
    const double removals_reported =
        new_removals * week[(dow + 6) % 7] * jitter();
    recovered += removals_reported * (1.0 - death_share);
    deaths += removals_reported * death_share;

    // Advance the true dynamics.
    const double next_infected = (1.0 + growth) * infected;
    removed += gamma * infected;
    infected = next_infected;
  }

  std::ofstream file(out, std::ios::binary);
  if (!file) {
    std::fprintf(stderr, "cannot write %s\n", out.c_str());
    return 1;
  }
  file << text;
  std::fprintf(stderr, "wrote %s (%d days)\n", out.c_str(), kDays);
  return 0;
}
