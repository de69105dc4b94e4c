#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "cosmax/errors.hpp"

namespace cosmax {

// Dense row-major matrix. Just enough linear algebra for this library; the
// heavy lifting happens on SymmetricMatrix via the Jacobi eigensolver below.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

// Symmetric matrix with packed lower-triangle storage, so (i,j) and (j,i)
// are the same slot and symmetry holds exactly by construction.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t dim, double fill = 0.0)
      : dim_(dim), data_(dim * (dim + 1) / 2, fill) {
    if (dim < 1) throw ConfigError("SymmetricMatrix requires dim >= 1");
  }

  static SymmetricMatrix identity(std::size_t dim) {
    SymmetricMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
  }

  // Builds from full rows; off-pair mismatches above `tol` are rejected.
  static SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                   double tol = 0.0) {
    const std::size_t n = rows.size();
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n)
        throw ConfigError("from_rows: ragged input");
      for (std::size_t j = 0; j <= i; ++j) {
        if (std::abs(rows[i][j] - rows[j][i]) > tol)
          throw AsymmetryError("from_rows: asymmetric input at (" +
                               std::to_string(i) + "," + std::to_string(j) + ")");
        m.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
      }
    }
    return m;
  }

  std::size_t dim() const { return dim_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { data_[index(i, j)] = v; }

  Matrix dense() const {
    Matrix d(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) d(i, j) = (*this)(i, j);
    return d;
  }

  bool operator==(const SymmetricMatrix&) const = default;

 private:
  static std::size_t index_of(std::size_t i, std::size_t j) {
    return i * (i + 1) / 2 + j;  // requires i >= j
  }
  std::size_t index(std::size_t i, std::size_t j) const {
    return i >= j ? index_of(i, j) : index_of(j, i);
  }

  std::size_t dim_;
  std::vector<double> data_;
};

// Eigenvalues in descending order; column j of `eigenvectors` pairs with
// eigenvalues[j]. Columns are orthonormal and carry a fixed sign convention:
// the entry of largest magnitude is positive (ties resolved to the lowest
// index), which makes output deterministic and fixture comparison stable.
struct EigenSystem {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  bool operator==(const EigenSystem&) const = default;
};

namespace detail {

// One cyclic Jacobi sweep over the upper triangle of `a`, accumulating the
// rotations into `v`. Rotations on exactly-zero entries are skipped, which
// also preserves block-diagonal structure exactly.
inline void jacobi_sweep(Matrix& a, Matrix& v, std::size_t sweep) {
  const std::size_t n = a.rows();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double apq = a(p, q);
      if (apq == 0.0) continue;
      const double g = 100.0 * std::abs(apq);
      // After a few sweeps, entries that no longer affect the diagonal at
      // working precision are zeroed outright (Rutishauser's device).
      if (sweep > 4 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
          std::abs(a(q, q)) + g == std::abs(a(q, q))) {
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        continue;
      }
      const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
      double t;
      if (std::abs(theta) > 1e150) {
        t = 1.0 / (2.0 * theta);
      } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
      }
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      const double tau = s / (1.0 + c);

      const double app = a(p, p);
      const double aqq = a(q, q);
      a(p, p) = app - t * apq;
      a(q, q) = aqq + t * apq;
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = akp - s * (akq + tau * akp);
        a(p, k) = a(k, p);
        a(k, q) = akq + s * (akp - tau * akq);
        a(q, k) = a(k, q);
      }
      for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = vkp - s * (vkq + tau * vkp);
        v(k, q) = vkq + s * (vkp - tau * vkq);
      }
    }
  }
}

inline double offdiag_sq(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) sum += 2.0 * a(i, j) * a(i, j);
  return sum;
}

}  // namespace detail

// Cyclic Jacobi eigendecomposition. Converged when the squared off-diagonal
// mass drops to 1e-24 of the squared Frobenius norm; capped at 100 sweeps,
// which for the dense m <= 20 matrices this library targets is never reached
// on finite input. The working copy is normalized by the largest entry so
// the convergence measure cannot overflow at extreme scales.
inline EigenSystem eigen_decompose(const SymmetricMatrix& m) {
  const std::size_t n = m.dim();
  Matrix a = m.dense();
  Matrix v = Matrix::identity(n);

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      if (!std::isfinite(m(i, j)))
        throw ConfigError("eigen_decompose: matrix has non-finite entries");
      scale = std::max(scale, std::abs(m(i, j)));
    }
  if (scale > 0.0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) /= scale;

  double frob_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob_sq += a(i, j) * a(i, j);
  const double stop = 1e-24 * frob_sq;

  bool converged = detail::offdiag_sq(a) <= stop;
  for (std::size_t sweep = 1; !converged && sweep <= 100; ++sweep) {
    detail::jacobi_sweep(a, v, sweep);
    converged = detail::offdiag_sq(a) <= stop;
  }
  if (!converged)
    throw ConvergenceError("jacobi eigensolver: sweep limit exceeded");
  if (scale > 0.0)
    for (std::size_t i = 0; i < n; ++i) a(i, i) *= scale;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a(src, src);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(arg, src))) arg = i;
    const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = sign * v(i, src);
  }
  return out;
}

namespace detail {

// V f(lambda) V^T assembled straight into packed symmetric storage.
template <typename F>
SymmetricMatrix spectral_apply(const EigenSystem& es, F&& f) {
  const std::size_t n = es.eigenvalues.size();
  std::vector<double> fv(n);
  for (std::size_t j = 0; j < n; ++j) fv[j] = f(es.eigenvalues[j]);
  SymmetricMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        sum += es.eigenvectors(i, k) * fv[k] * es.eigenvectors(j, k);
      out.set(i, j, sum);
    }
  return out;
}

inline void require_above_floor(const EigenSystem& es, double min_eigenvalue) {
  const double lambda_min = es.eigenvalues.back();
  if (lambda_min <= min_eigenvalue)
    throw ExactCollinearityError(
        "matrix is numerically singular: smallest eigenvalue " +
        std::to_string(lambda_min) + " <= " + std::to_string(min_eigenvalue));
}

}  // namespace detail

// Inverse of a positive-definite symmetric matrix through its spectrum.
// Throws ExactCollinearityError when any eigenvalue is at or below the floor.
inline SymmetricMatrix inverse_psd(const SymmetricMatrix& m,
                                   double min_eigenvalue = 1e-10) {
  EigenSystem es = eigen_decompose(m);
  detail::require_above_floor(es, min_eigenvalue);
  return detail::spectral_apply(es, [](double l) { return 1.0 / l; });
}

// Symmetric positive-definite inverse square root, V diag(1/sqrt(l)) V^T.
// This is the unique SPD solution of A A = m^{-1}.
inline SymmetricMatrix inverse_sqrt_psd(const SymmetricMatrix& m,
                                        double min_eigenvalue = 1e-10) {
  EigenSystem es = eigen_decompose(m);
  detail::require_above_floor(es, min_eigenvalue);
  return detail::spectral_apply(es, [](double l) { return 1.0 / std::sqrt(l); });
}

}  // namespace cosmax
