#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "epifir/errors.hpp"

namespace epifir {

/// Minimal dense row-major matrix of doubles. Just enough surface for
/// the regression code and its tests; not a general linear-algebra type.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t row, std::size_t col) {
    return data_[row * cols_ + col];
  }
  double operator()(std::size_t row, std::size_t col) const {
    return data_[row * cols_ + col];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Full singular value decomposition X = U diag(sigma) V^T with square
/// orthogonal U (M x M) and V (N x N). `sigma` holds only the singular
/// values judged nonzero, in nonincreasing order, so sigma.size() ==
/// rank <= min(M, N).
struct SvdFactors {
  Matrix u;
  Matrix v;
  std::vector<double> sigma;
  std::size_t rank = 0;
};

/// One-sided Jacobi SVD. Deterministic; no pivot randomization. Throws
/// InvalidInput for empty or non-finite input and NonConvergence if the
/// sweep cap is exhausted before all column pairs are orthogonal.
SvdFactors svd(const Matrix& x);

struct RidgeSolution {
  std::vector<double> coefficients;
  double lambda = 0.0;
};

/// Ridge regression c = argmin ||y - X c||^2 + lambda ||c||^2, evaluated
/// spectrally: c = sum_j sigma_j (u_j^T y) / (sigma_j^2 + lambda) v_j over
/// the nonzero singular triplets. lambda = 0 yields the minimum-norm
/// least-squares solution through the same formula (the sum simply
/// becomes sum_j (u_j^T y) / sigma_j v_j), so the ridge path is
/// continuous at 0. Requires lambda >= 0 and y.size() == x.rows().
RidgeSolution ridge_solve(const Matrix& x, std::span<const double> y,
                          double lambda);

/// Minimum-norm least squares; exactly ridge_solve(x, y, 0).
std::vector<double> least_squares(const Matrix& x, std::span<const double> y);

}  // namespace epifir
