#pragma once

/*
 * Small dense linear algebra: row-major matrices, Gaussian elimination with
 * partial pivoting, and a cyclic Jacobi eigensolver for symmetric matrices.
 * Sized for desk-scale problems (Gram matrices up to p = 400; regression
 * systems up to p = 20); the callers enforce those guards.
 */

#include <cstddef>
#include <vector>

namespace subw::linalg {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<double>& data() const { return a_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

Vector matvec(const Matrix& m, const Vector& x);

// A^T A / rows (the Gram matrix of the rows, normalized by the row count).
Matrix gram_normalized(const Matrix& a);

// Solves m x = b by Gaussian elimination with partial pivoting.
Vector solve(Matrix m, Vector b);

struct JacobiResult {
  Vector eigenvalues;  // ascending
  int sweeps = 0;
};

// Cyclic Jacobi for symmetric matrices; iterates sweeps until the off-diagonal
// Frobenius norm drops below 1e-12 * max(1, ||A||_F). Refuses n > 400.
JacobiResult jacobi_eigenvalues(Matrix a);

double l2_norm(const Vector& v);
double linf_norm(const Vector& v);
double lp_norm(const Vector& v, double p);

}  // namespace subw::linalg
