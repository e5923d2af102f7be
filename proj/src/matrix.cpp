#include "gmf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gmf/error.hpp"

namespace gmf {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw Error(ErrorCode::NotSquare, std::string(what) + " needs a square matrix, got " +
                                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

struct Factorization {
  ComplexMatrix l;
  double min_eigen_estimate = 0.0;
  int rank = 0;
  double scale = 0.0;
};

ComplexMatrix hermitian_part(const ComplexMatrix& a, double tol) {
  require_square(a, "PSD test");
  const double scale = a.max_abs();
  const double asym = max_abs_diff(a, a.adjoint());
  if (asym > tol * (1.0 + scale)) {
    throw Error(ErrorCode::NotHermitian, "max |A - A*| = " + std::to_string(asym));
  }
  return Complex(0.5) * (a + a.adjoint());
}

void require_finite(const std::vector<Complex>& entries) {
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::ParseError, "matrix entries must be finite");
    }
  }
}

Factorization factorize(const ComplexMatrix& herm, double tol) {
  const std::size_t n = herm.rows();
  Factorization f;
  f.scale = herm.max_abs();
  f.l = ComplexMatrix(n, n);
  f.min_eigen_estimate = std::numeric_limits<double>::infinity();
  const double threshold = tol * f.scale;
  ComplexMatrix s = herm;

  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = s(k, k).real();
    f.min_eigen_estimate = std::min(f.min_eigen_estimate, pivot);
    if (pivot > threshold) {
      const double d = std::sqrt(pivot);
      f.l(k, k) = d;
      for (std::size_t i = k + 1; i < n; ++i) f.l(i, k) = s(i, k) / d;
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j <= i; ++j) {
          s(i, j) -= f.l(i, k) * std::conj(f.l(j, k));
          s(j, i) = std::conj(s(i, j));
        }
      }
      ++f.rank;
      continue;
    }
    // Vanishing pivot: a PSD remainder must have a vanishing column too. The
    // 2x2 Schur estimate p - |s_ik|^2 / s_ii exposes the negative direction.
    for (std::size_t i = k + 1; i < n; ++i) {
      const double off = std::norm(s(i, k));
      if (off == 0.0) continue;
      const double denom = std::max({s(i, i).real(), threshold, std::numeric_limits<double>::min()});
      f.min_eigen_estimate = std::min(f.min_eigen_estimate, pivot - off / denom);
    }
  }
  if (n == 0) f.min_eigen_estimate = 0.0;
  return f;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::IndexOutOfRange, "entry count " + std::to_string(entries_.size()) +
                                                " does not match " + std::to_string(rows_) + "x" +
                                                std::to_string(cols_));
  }
  require_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::IndexOutOfRange, "ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DegreeMismatch, "inner dimensions differ in product");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DegreeMismatch, "shape mismatch in sum");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] += b.entries_[k];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(ErrorCode::DegreeMismatch, "shape mismatch in difference");
  }
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] -= b.entries_[k];
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& z : out.entries_) z *= s;
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

PsdVerdict check_psd(const ComplexMatrix& a, double tol) {
  const auto herm = hermitian_part(a, tol);
  const auto f = factorize(herm, tol);
  PsdVerdict v;
  v.tolerance_used = tol;
  v.min_eigen_estimate = f.min_eigen_estimate;
  v.is_psd = f.min_eigen_estimate >= -tol * f.scale;
  return v;
}

CholeskyFactor cholesky(const ComplexMatrix& a, double tol) { return cholesky(a, tol, tol); }

CholeskyFactor cholesky(const ComplexMatrix& a, double tol, double pivot_tol) {
  const auto herm = hermitian_part(a, tol);
  auto f = factorize(herm, pivot_tol);
  if (f.min_eigen_estimate < -tol * f.scale) {
    throw Error(ErrorCode::NotPsd, "minimum eigenvalue estimate " + std::to_string(f.min_eigen_estimate));
  }
  CholeskyFactor out;
  out.reconstruction_residual = max_abs_diff(f.l * f.l.adjoint(), a);
  out.rank_estimate = f.rank;
  out.l = std::move(f.l);
  return out;
}

ComplexMatrix submatrix(const ComplexMatrix& a, const IndexSequence& alpha, const IndexSequence& beta) {
  if (!alpha.bounded_by(static_cast<int>(a.rows())) || !beta.bounded_by(static_cast<int>(a.cols()))) {
    throw Error(ErrorCode::IndexOutOfRange, "submatrix index outside matrix bounds");
  }
  ComplexMatrix out(alpha.size(), beta.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (std::size_t j = 0; j < beta.size(); ++j) {
      out(i, j) = a(static_cast<std::size_t>(alpha[i]), static_cast<std::size_t>(beta[j]));
    }
  }
  return out;
}

ComplexMatrix column_selection(const ComplexMatrix& a, const IndexSequence& gamma) {
  return submatrix(a, IndexSequence::iota(static_cast<int>(a.rows())), gamma);
}

ComplexMatrix permutation_matrix(const Permutation& g) {
  const auto n = static_cast<std::size_t>(g.degree());
  ComplexMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) out(static_cast<std::size_t>(g(static_cast<int>(j))), j) = 1.0;
  return out;
}

Complex determinant(const ComplexMatrix& a) {
  require_square(a, "determinant");
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    const Complex pivot = lu(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = lu(i, k) / pivot;
      if (factor == Complex(0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
    }
  }
  return det;
}

}  // namespace gmf
