#include "gmf/gmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmf/error.hpp"

namespace gmf {

namespace {

void require_degree(const ComplexMatrix& a, int n, const char* what) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, std::string(what) + " needs a square matrix");
  if (a.rows() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::DegreeMismatch, std::string(what) + ": matrix is " + std::to_string(a.rows()) +
                                               "x" + std::to_string(a.cols()) + ", degree is " + std::to_string(n));
  }
}

}  // namespace

Complex diagonal_product(const ComplexMatrix& a, const Permutation& sigma) {
  require_degree(a, sigma.degree(), "diagonal product");
  Complex prod = 1.0;
  for (std::size_t i = 0; i < a.rows(); ++i) prod *= a(i, static_cast<std::size_t>(sigma(static_cast<int>(i))));
  return prod;
}

Complex main_diagonal_product(const ComplexMatrix& a) {
  return diagonal_product(a, Permutation::identity(static_cast<int>(a.rows())));
}

kernels::WeightedElements weighted_elements(const CharacterFn& chi) {
  const auto& g = chi.group();
  kernels::WeightedElements w;
  w.degree = g.degree();
  w.images.reserve(g.order() * static_cast<std::size_t>(g.degree()));
  for (const auto& e : g.elements()) w.images.insert(w.images.end(), e.images().begin(), e.images().end());
  w.weights = chi.element_values();
  return w;
}

GmfValue gmf(const ComplexMatrix& a, const CharacterFn& chi) {
  require_degree(a, chi.group().degree(), "generalized matrix function");
  GmfValue out;
  out.value = kernels::omp::weighted_diagonal_sum(a, weighted_elements(chi));
  out.group_order = chi.group().order();
  out.chi_degree = chi.degree().real();
  out.normalized = out.value / out.chi_degree;
  return out;
}

GmfValue gmf(const ComplexMatrix& a, const PermGroup& group, const CharacterFn& chi) {
  if (!group.same_as(chi.group())) {
    throw Error(ErrorCode::GroupMismatch, "character '" + chi.label() + "' is not defined on " + group.name());
  }
  return gmf(a, chi);
}

Complex permanent_ryser(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "permanent needs a square matrix");
  if (a.rows() > 24) throw Error(ErrorCode::TooLarge, "Ryser permanent supports n <= 24");
  return kernels::omp::permanent_ryser(a);
}

Complex permanent_naive(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "permanent needs a square matrix");
  if (a.rows() > 9) throw Error(ErrorCode::TooLarge, "naive permanent supports n <= 9");
  std::vector<int> images(a.rows());
  std::iota(images.begin(), images.end(), 0);
  Complex total = 0.0;
  do {
    Complex prod = 1.0;
    for (std::size_t i = 0; i < images.size(); ++i) prod *= a(i, static_cast<std::size_t>(images[i]));
    total += prod;
  } while (std::next_permutation(images.begin(), images.end()));
  return total;
}

bool all_diagonal_products_nonneg(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "diagonal products need a square matrix");
  if (a.rows() > 9) throw Error(ErrorCode::TooLarge, "exhaustive diagonal products support n <= 9");
  const double tol = 1e-12 * (1.0 + std::pow(a.max_abs(), static_cast<double>(a.rows())));
  std::vector<int> images(a.rows());
  std::iota(images.begin(), images.end(), 0);
  do {
    Complex prod = 1.0;
    for (std::size_t i = 0; i < images.size(); ++i) prod *= a(i, static_cast<std::size_t>(images[i]));
    if (prod.real() < -tol || std::abs(prod.imag()) > tol) return false;
  } while (std::next_permutation(images.begin(), images.end()));
  return true;
}

bool approx_equal(Complex x, Complex y, double tol, double floor) {
  return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y)) + floor;
}

}  // namespace gmf
