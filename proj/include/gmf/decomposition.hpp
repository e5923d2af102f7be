#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmf/characters.hpp"
#include "gmf/kernels.hpp"
#include "gmf/matrix.hpp"

namespace gmf {

/// Sequences gamma whose stabilizer satisfies (chi, 1)_{G_gamma} != 0, the
/// support of the Cauchy-Binet expansion for generalized matrix functions.
struct OmegaSet {
  std::vector<IndexSequence> members;          // all of Omega, lexicographic
  std::vector<IndexSequence> representatives;  // lexicographic orbit minima inside Omega
  std::uint64_t total_sequences = 0;
  std::string group_name;
  std::string character_label;
};

inline constexpr double kOmegaThreshold = 1e-9;

OmegaSet compute_omega(const CharacterFn& chi, int alphabet, std::uint64_t cap = kDefaultEnumerationCap);

/// |LHS - RHS| / (1 + |LHS|) for
///   d((AB)[alpha|beta]) = chi(e)/|G| sum_{gamma in Omega} d(A[alpha|gamma]) d(B[gamma|beta]).
/// alpha and beta must lie in Omega; otherwise AlphaBetaNotInOmega.
double cauchy_binet_check(const ComplexMatrix& a, const ComplexMatrix& b, const CharacterFn& chi,
                          const IndexSequence& alpha, const IndexSequence& beta,
                          std::uint64_t cap = kDefaultEnumerationCap);

struct DecomposeOptions {
  double psd_tol = kDefaultPsdTol;
  std::uint64_t cap = kDefaultEnumerationCap;
  kernels::CosetChoice coset_choice = kernels::CosetChoice::Lexicographic;
  std::uint64_t seed = 0;
  bool parallel = true;
};

/// Normalized d^G_chi(A) as (1/|G|) sum_{gamma in Omega} |d(L[(n)|gamma])|^2
/// with A = L L^*.
Complex gmf_via_omega(const ComplexMatrix& a_psd, const CharacterFn& chi, const DecomposeOptions& options = {});

struct OrbitTerm {
  IndexSequence representative;
  std::size_t orbit_size = 0;
  double term = 0.0;
};

/// Normalized d^G_chi(A) = det(A) + [chi = 1] |G| prod_i |L_i1|^2 + residual_sum,
/// where residual_sum runs over the orbits left after removing those of
/// sigma.(1..n) and of the constant sequences.
struct DecompositionReport {
  std::string group_name;
  std::string character_label;
  int n = 0;
  std::size_t group_order = 0;
  bool principal = false;
  bool linear_formula = false;

  Complex lhs_normalized_gmf;
  Complex det_term;
  double delta_term = 0.0;
  double residual_sum = 0.0;
  Complex reconstructed;
  double identity_residual = 0.0;           // |lhs - reconstructed|
  double relative_identity_residual = 0.0;  // identity_residual / (1 + |lhs|)

  // Excluded orbits, evaluated explicitly.
  double gamma0_term = 0.0;           // orbit of (1, ..., n); equals det(A)
  double gamma1_term = 0.0;           // (1, ..., 1); equals the delta term for chi = 1
  double max_vanishing_term = 0.0;    // sigma.(1..n) with sigma not in G, and (k, ..., k) with k >= 2
  double det_check_residual = 0.0;    // |gamma0_term - det(A)|
  double delta_check_residual = 0.0;  // |gamma1_term - closed form| (chi = 1 only)

  std::size_t orbits_total = 0;
  std::size_t orbits_in_omega = 0;
  std::size_t orbits_excluded = 0;
  std::size_t orbits_contributing = 0;  // remaining orbits with a nonzero term
  std::vector<OrbitTerm> per_orbit_terms;  // contributing orbits only
};

/// Requires an irreducible chi ((chi, chi) = 1 within 1e-8) and PSD input.
DecompositionReport decompose(const ComplexMatrix& a_psd, const CharacterFn& chi, const DecomposeOptions& options = {});

/// Same identity through the per-orbit form (1/|G_gamma|) |d(L^gamma)|^2,
/// valid for linear chi.
DecompositionReport decompose_linear(const ComplexMatrix& a_psd, const CharacterFn& chi,
                                     const DecomposeOptions& options = {});

/// per(A) = det(A) + n! prod|L_i1|^2 + (n-1)! prod_{i<n}|L_i1|^2 |L_nn|^2 + rest,
/// the rest running over the remaining S_n orbits except (1, ..., 1, n); n >= 3.
struct PermanentExpansion {
  Complex permanent;
  Complex det_term;
  double first_column_term = 0.0;
  double last_column_term = 0.0;           // closed form
  double last_column_term_explicit = 0.0;  // orbit term of (1, ..., 1, n)
  double rest = 0.0;
  double reconstructed = 0.0;
};

PermanentExpansion permanent_expansion(const ComplexMatrix& a_psd, const DecomposeOptions& options = {});

}  // namespace gmf
