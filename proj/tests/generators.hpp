#pragma once

// Deterministic random generators shared by the unit suites and the
// acceptance gate. Everything is seeded explicitly so failures replay.

#include <cstddef>
#include <random>

#include "epifir/epidemic.hpp"
#include "epifir/ridge.hpp"

namespace testgen {

/// Epidemic-like admissible fraction series: the trajectory is driven
/// by bounded random growth and recovery, with guards keeping
/// i in [1e-3, ~0.39] and i + r <= 0.85 so every day admits rate
/// extraction (positive infected, susceptibles far from depletion).
inline epifir::FractionSeries random_fraction_series(std::mt19937_64& rng,
                                                     std::size_t length) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> pick_i0(0.01, 0.20);
  std::uniform_real_distribution<double> pick_r0(0.0, 0.30);
  std::uniform_real_distribution<double> pick_gamma(0.005, 0.05);

  epifir::FractionSeries series;
  double i = pick_i0(rng);
  double r = pick_r0(rng);
  series.infected.push_back(i);
  series.removed.push_back(r);
  for (std::size_t t = 1; t < length; ++t) {
    const double gamma = pick_gamma(rng);
    // Net daily growth g keeps the next state admissible: i + r grows by
    // (g + gamma) * i, so capping g caps the sum.
    const double headroom = 0.85 - (i + r);
    double hi = std::min(0.10, headroom / i - gamma);
    if (i > 0.35) hi = std::min(hi, 0.0);
    const double lo = -0.10;
    double g = hi < lo ? lo : lo + (hi - lo) * u01(rng);
    if ((1.0 + g) * i < 1e-3) g = 1e-3 / i - 1.0;

    const double beta = (g + gamma) / (1.0 - i - r);
    const epifir::StepState next = epifir::step_fractions(i, r, beta, gamma);
    i = next.infected;
    r = next.removed;
    series.infected.push_back(i);
    series.removed.push_back(r);
  }
  return series;
}

/// Dense matrix with entries uniform in [-2, 2].
inline epifir::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                                    std::size_t cols) {
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  epifir::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  }
  return m;
}

/// Tall random matrix (rows > cols) that is comfortably full column
/// rank: regenerated until the smallest singular value is at least
/// 1e-3 of the largest, so normal-equation comparisons stay well away
/// from conditioning noise.
inline epifir::Matrix random_full_rank_matrix(std::mt19937_64& rng,
                                              std::size_t rows,
                                              std::size_t cols) {
  while (true) {
    epifir::Matrix m = random_matrix(rng, rows, cols);
    const epifir::SvdFactors factors = epifir::svd(m);
    if (factors.rank == cols &&
        factors.sigma.back() > 1e-3 * factors.sigma.front()) {
      return m;
    }
  }
}

/// Random right-hand side with entries uniform in [-2, 2].
inline std::vector<double> random_vector(std::mt19937_64& rng,
                                         std::size_t length) {
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  std::vector<double> v(length);
  for (double& x : v) x = entry(rng);
  return v;
}

}  // namespace testgen
