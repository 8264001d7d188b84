#include "epifir/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace epifir {

namespace {

// Two column vectors count as orthogonal once |<c_p, c_q>| falls below
// this multiple of ||c_p|| ||c_q||; a sweep that applies no rotation
// means every pair passed that test.
constexpr double kPairTolerance = 1e-14;
constexpr int kMaxSweeps = 60;

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

// Orthogonalizes the columns of `a` (M x N, M >= N) in place by plane
// rotations, accumulating them into `v`. Returns false if the sweep cap
// ran out before a full sweep passed with no rotations.
bool orthogonalize_columns(Matrix& a, Matrix& v) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          app += a(i, p) * a(i, p);
          aqq += a(i, q) * a(i, q);
          apq += a(i, p) * a(i, q);
        }
        if (std::abs(apq) <=
            kPairTolerance * std::sqrt(app) * std::sqrt(aqq)) {
          continue;
        }
        rotated = true;

        // Jacobi rotation that zeroes the (p,q) entry of the 2x2 Gram
        // block; the smaller-angle root keeps the iteration stable.
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a(i, p);
          const double aq = a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) return true;
  }
  return false;
}

// Extends the first `have` orthonormal columns of `u` (M x M) to a full
// orthonormal basis. Each new column is the standard basis vector with
// the largest residual against the columns accepted so far: the residual
// norms of all M candidates square-sum to the number of missing
// directions, so the best candidate always has norm >= 1/sqrt(M) and the
// completion cannot stall. Residuals are re-orthogonalized twice for
// stability before normalization.
void complete_basis(Matrix& u, std::size_t have) {
  const std::size_t m = u.rows();
  std::vector<bool> used(m, false);

  const auto residual = [&](std::size_t k, std::size_t columns,
                            std::vector<double>& w) {
    w.assign(m, 0.0);
    w[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < columns; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += u(i, j) * w[i];
        for (std::size_t i = 0; i < m; ++i) w[i] -= dot * u(i, j);
      }
    }
    return std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
  };

  std::vector<double> w;
  for (std::size_t next = have; next < m; ++next) {
    double best_norm = -1.0;
    std::size_t best_k = m;
    std::vector<double> best_w;
    for (std::size_t k = 0; k < m; ++k) {
      if (used[k]) continue;
      const double norm = residual(k, next, w);
      if (norm > best_norm) {
        best_norm = norm;
        best_k = k;
        best_w = w;
      }
    }
    if (best_k == m || !(best_norm > 0.0)) {
      throw NonConvergence("failed to complete an orthonormal basis");
    }
    used[best_k] = true;
    for (std::size_t i = 0; i < m; ++i) u(i, next) = best_w[i] / best_norm;
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

SvdFactors svd(const Matrix& x) {
  if (x.rows() == 0 || x.cols() == 0) {
    throw InvalidInput("cannot decompose an empty matrix");
  }
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (!std::isfinite(x(i, j))) {
        throw InvalidInput("matrix entries must be finite");
      }
    }
  }

  // One-sided iteration wants at least as many rows as columns; a wide
  // input is decomposed transposed and the factors swapped at the end.
  const bool transposed = x.rows() < x.cols();
  Matrix a = transposed ? transpose(x) : x;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  Matrix v = Matrix::identity(n);
  if (!orthogonalize_columns(a, v)) {
    throw NonConvergence("column orthogonalization exceeded " +
                         std::to_string(kMaxSweeps) + " sweeps");
  }

  // Column norms are the singular values; sort them nonincreasing and
  // carry the columns of A and V along.
  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += a(i, j) * a(i, j);
    norms[j] = std::sqrt(sum);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return norms[l] > norms[r];
  });

  const double sigma_max = norms.empty() ? 0.0 : norms[order[0]];
  const double threshold = static_cast<double>(std::max(m, n)) *
                           std::numeric_limits<double>::epsilon() * sigma_max;

  SvdFactors out;
  out.u = Matrix(m, m);
  out.v = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
  }

  std::size_t rank = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double sigma = norms[order[j]];
    if (!(sigma > threshold)) break;  // also stops on an all-zero matrix
    out.sigma.push_back(sigma);
    for (std::size_t i = 0; i < m; ++i) {
      out.u(i, rank) = a(i, order[j]) / sigma;
    }
    ++rank;
  }
  out.rank = rank;
  complete_basis(out.u, rank);

  if (transposed) std::swap(out.u, out.v);
  return out;
}

RidgeSolution ridge_solve(const Matrix& x, std::span<const double> y,
                          double lambda) {
  if (y.size() != x.rows()) {
    throw DimensionMismatch("target length " + std::to_string(y.size()) +
                            " does not match " + std::to_string(x.rows()) +
                            " rows");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("ridge penalty must be finite and nonnegative");
  }
  for (double value : y) {
    if (!std::isfinite(value)) {
      throw InvalidInput("target entries must be finite");
    }
  }

  const SvdFactors factors = svd(x);
  RidgeSolution solution;
  solution.lambda = lambda;
  solution.coefficients.assign(x.cols(), 0.0);
  for (std::size_t j = 0; j < factors.rank; ++j) {
    double uty = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) uty += factors.u(i, j) * y[i];
    const double sigma = factors.sigma[j];
    const double weight = sigma * uty / (sigma * sigma + lambda);
    for (std::size_t i = 0; i < x.cols(); ++i) {
      solution.coefficients[i] += weight * factors.v(i, j);
    }
  }
  return solution;
}

std::vector<double> least_squares(const Matrix& x, std::span<const double> y) {
  return ridge_solve(x, y, 0.0).coefficients;
}

}  // namespace epifir
