#pragma once

// Hot loops of the library, each in two builds: `serial` is the plain
// reference used by the tests, `omp` splits the index range into a fixed
// number of chunks and combines chunk partials with a pairwise tree sum, so
// its result does not depend on the thread count.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gmf/matrix.hpp"

namespace gmf::kernels {

/// Elements of a permutation group flattened for the inner loops, with one
/// weight (usually a character value) per element.
struct WeightedElements {
  int degree = 0;
  std::vector<int> images;        // order x degree, row-major
  std::vector<Complex> weights;   // one per element

  std::size_t order() const noexcept { return weights.size(); }
  std::span<const int> element(std::size_t k) const {
    return std::span<const int>(images).subspan(k * static_cast<std::size_t>(degree), static_cast<std::size_t>(degree));
  }
};

enum class CosetChoice { Lexicographic, Randomized };

/// Input of the per-orbit decomposition term
///   (1/|G|) sum_{g in S_gamma} |d(L^gamma P_g)|^2
/// where S_gamma holds one g per orbit member (the coset of g . gamma).
struct OrbitTermInput {
  const ComplexMatrix* l = nullptr;
  const WeightedElements* group = nullptr;
  int alphabet = 0;
  CosetChoice choice = CosetChoice::Lexicographic;
  std::uint64_t seed = 0;
};

/// Pairwise (tree) summation in index order.
double pairwise_sum(std::span<const double> values);
Complex pairwise_sum(std::span<const Complex> values);

/// True when no bijection pi has gamma_{pi(i)} <= i for all i, i.e. every
/// diagonal product of L[(n)|gamma] touches the strictly upper triangle of
/// a lower-triangular L and vanishes exactly.
bool lower_triangular_zero(std::span<const int> gamma);

namespace serial {

/// Ryser inclusion-exclusion with Gray-code column updates.
Complex permanent_ryser(const ComplexMatrix& a);
/// sum_k weights[k] * prod_i a(i, g_k(i)).
Complex weighted_diagonal_sum(const ComplexMatrix& a, const WeightedElements& g);
/// Per-orbit decomposition terms for the given representative codes.
std::vector<double> orbit_terms(const OrbitTermInput& in, std::span<const std::uint64_t> rep_codes);
/// (1/|G_gamma|) |d(L^gamma)|^2 per representative (linear characters).
std::vector<double> linear_orbit_terms(const OrbitTermInput& in, std::span<const std::uint64_t> rep_codes);
/// sum over the given sequences of |d(L^omega)|^2.
double squared_gmf_sum(const ComplexMatrix& l, const WeightedElements& g, int alphabet,
                       std::span<const std::uint64_t> codes);

}  // namespace serial

namespace omp {

Complex permanent_ryser(const ComplexMatrix& a);
Complex weighted_diagonal_sum(const ComplexMatrix& a, const WeightedElements& g);
std::vector<double> orbit_terms(const OrbitTermInput& in, std::span<const std::uint64_t> rep_codes);
std::vector<double> linear_orbit_terms(const OrbitTermInput& in, std::span<const std::uint64_t> rep_codes);
double squared_gmf_sum(const ComplexMatrix& l, const WeightedElements& g, int alphabet,
                       std::span<const std::uint64_t> codes);

/// Threads used by the parallel kernels; 0 restores the runtime default.
void set_thread_count(int threads);
int thread_count();

}  // namespace omp

}  // namespace gmf::kernels
