#include "subw/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "subw/errors.hpp"

namespace subw::linalg {

Vector matvec(const Matrix& m, const Vector& x) {
  if (x.size() != m.cols()) throw InputError("matvec: dimension mismatch");
  Vector y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix gram_normalized(const Matrix& a) {
  const std::size_t n = a.rows();
  const std::size_t p = a.cols();
  if (n == 0 || p == 0) throw InputError("gram_normalized: empty matrix");
  Matrix g(p, p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = j; k < p; ++k) {
        g(j, k) += aij * a(i, k);
      }
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j; k < p; ++k) {
      const double v = g(j, k) / static_cast<double>(n);
      g(j, k) = v;
      g(k, j) = v;
    }
  }
  return g;
}

Vector solve(Matrix m, Vector b) {
  const std::size_t n = m.rows();
  if (m.cols() != n || b.size() != n) throw InputError("solve: dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::fabs(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::fabs(m(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-300) throw NumericError("solve: singular system");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
      std::swap(b[col], b[piv]);
    }
    const double d = m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = m(r, col) / d;
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
      b[r] -= factor * b[col];
    }
  }
  Vector x(n, 0.0);
  for (std::size_t ir = n; ir-- > 0;) {
    double s = b[ir];
    for (std::size_t j = ir + 1; j < n; ++j) s -= m(ir, j) * x[j];
    x[ir] = s / m(ir, ir);
  }
  return x;
}

namespace {

double offdiag_frobenius(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

JacobiResult jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("jacobi_eigenvalues: matrix must be square");
  if (n > 400) throw InputError("jacobi_eigenvalues: refusing n > 400 (desk-scale guard)");
  if (n == 0) throw InputError("jacobi_eigenvalues: empty matrix");

  const double scale = std::max(1.0, frobenius(a));
  const double target = 1e-12 * scale;
  JacobiResult out;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_frobenius(a) <= target) break;
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  if (offdiag_frobenius(a) > target) {
    throw NumericError("jacobi_eigenvalues: did not reach the off-diagonal target");
  }
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

double l2_norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double linf_norm(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double lp_norm(const Vector& v, double p) {
  if (!(p >= 1.0)) throw InputError("lp_norm: p must be >= 1");
  if (std::isinf(p)) return linf_norm(v);
  double s = 0.0;
  for (double x : v) s += std::pow(std::fabs(x), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace subw::linalg
