#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "gmf/permutation.hpp"

namespace gmf {

using Complex = std::complex<double>;

inline constexpr double kDefaultPsdTol = 1e-10;

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<const Complex> row(std::size_t i) const noexcept {
    return std::span<const Complex>(entries_).subspan(i * cols_, cols_);
  }

  ComplexMatrix adjoint() const;
  double max_abs() const noexcept;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct PsdVerdict {
  bool is_psd = false;
  double min_eigen_estimate = 0.0;
  double tolerance_used = 0.0;
};

/// Lower-triangular l with l * l^* reproducing the input.
struct CholeskyFactor {
  ComplexMatrix l;
  int rank_estimate = 0;
  double reconstruction_residual = 0.0;
};

/// Hermitian check followed by the pivot test of `cholesky`. The most negative
/// pivot (or the Schur-complement estimate at a vanishing pivot) is reported
/// as the minimum eigenvalue estimate.
PsdVerdict check_psd(const ComplexMatrix& a, double tol = kDefaultPsdTol);

/// Outer-product Cholesky without row exchanges. A pivot at or below
/// tol * max|a| is treated as zero and the rest of its column is cleared, so
/// rank-deficient PSD input still yields a lower-triangular factor.
CholeskyFactor cholesky(const ComplexMatrix& a, double tol = kDefaultPsdTol);
/// Same, with pivots at or below pivot_tol * max|a| treated as zero while a
/// pivot below -tol * max|a| still means NotPsd.
CholeskyFactor cholesky(const ComplexMatrix& a, double tol, double pivot_tol);

/// a[alpha | beta] with repetition allowed; indices 0-based.
ComplexMatrix submatrix(const ComplexMatrix& a, const IndexSequence& alpha, const IndexSequence& beta);

/// Columns gamma_1, ..., gamma_n of a (all rows): the matrix a[(n) | gamma].
ComplexMatrix column_selection(const ComplexMatrix& a, const IndexSequence& gamma);

/// (P_g)_{ij} = 1 iff i = g(j). Satisfies P_g P_h = P_{gh} and
/// a[(n) | g . gamma] = a[(n) | gamma] P_g.
ComplexMatrix permutation_matrix(const Permutation& g);

/// LU with partial pivoting.
Complex determinant(const ComplexMatrix& a);

}  // namespace gmf
