#pragma once

#include <cstddef>

#include "gmf/characters.hpp"
#include "gmf/kernels.hpp"
#include "gmf/matrix.hpp"

namespace gmf {

struct GmfValue {
  Complex value;
  std::size_t group_order = 0;
  double chi_degree = 0.0;
  Complex normalized;  // value / chi_degree
};

/// l_sigma(a) = prod_i a(i, sigma(i)).
Complex diagonal_product(const ComplexMatrix& a, const Permutation& sigma);

/// h(a): product of the main diagonal.
Complex main_diagonal_product(const ComplexMatrix& a);

/// Flattens chi's group with chi's values as weights.
kernels::WeightedElements weighted_elements(const CharacterFn& chi);

/// d^G_chi(a) = sum_{g in G} chi(g) l_g(a), summed over every element.
GmfValue gmf(const ComplexMatrix& a, const CharacterFn& chi);
/// As above, checking that chi lives on `group`.
GmfValue gmf(const ComplexMatrix& a, const PermGroup& group, const CharacterFn& chi);

/// O(2^n n) Ryser permanent; n <= 24.
Complex permanent_ryser(const ComplexMatrix& a);
/// Sum of l_sigma over all n! permutations; n <= 9.
Complex permanent_naive(const ComplexMatrix& a);

/// Every l_sigma(a) is real non-negative up to 1e-12 * (1 + max|a|^n).
bool all_diagonal_products_nonneg(const ComplexMatrix& a);

/// Relative comparison with an absolute floor near zero:
/// |x - y| <= tol * max(|x|, |y|) + floor.
bool approx_equal(Complex x, Complex y, double tol, double floor = 1e-12);

}  // namespace gmf
