#include "gmf/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "gmf/error.hpp"
#include "gmf/gmf.hpp"

namespace gmf {

namespace {

struct OrbitInfo {
  IndexSequence representative;
  std::size_t orbit_size = 0;
  bool in_omega = false;
};

// Every orbit of G on Gamma_{n, alphabet} with its Omega membership.
std::vector<OrbitInfo> classify_orbits(const CharacterFn& chi, int alphabet, std::uint64_t cap) {
  const auto& g = chi.group();
  std::vector<OrbitInfo> out;
  for_each_orbit_representative(g, alphabet, cap, [&](const IndexSequence& rep, std::size_t size) {
    Complex sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < g.order(); ++k) {
      if (act(g.element(k), rep) == rep) {
        sum += chi.at_element(k);
        ++count;
      }
    }
    out.push_back({rep, size, std::abs(sum / static_cast<double>(count)) > kOmegaThreshold});
  });
  return out;
}

std::vector<std::uint64_t> orbit_member_codes(const PermGroup& g, const IndexSequence& rep, int alphabet) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> codes;
  for (const auto& e : g.elements()) {
    const auto c = act(e, rep).code(alphabet);
    if (seen.insert(c).second) codes.push_back(c);
  }
  std::sort(codes.begin(), codes.end());
  return codes;
}

void require_irreducible(const CharacterFn& chi) {
  if (!is_irreducible(chi, 1e-8)) {
    throw Error(ErrorCode::ChiNotIrreducible,
                "(chi, chi) = " + std::to_string(inner_product(chi, chi).real()) + " for '" + chi.label() + "'");
  }
}

DecompositionReport decompose_impl(const ComplexMatrix& a, const CharacterFn& chi, const DecomposeOptions& options,
                                   bool linear) {
  const auto& g = chi.group();
  const int n = g.degree();
  if (!a.is_square() || a.rows() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::DegreeMismatch, "matrix size does not match group degree");
  }
  const auto factor = cholesky(a, options.psd_tol);
  const auto weights = weighted_elements(chi);

  DecompositionReport r;
  r.group_name = g.name();
  r.character_label = chi.label();
  r.n = n;
  r.group_order = g.order();
  r.principal = chi.is_principal();
  r.linear_formula = linear;
  r.lhs_normalized_gmf = gmf(a, chi).normalized;
  r.det_term = determinant(a);

  double first_column = 1.0;
  for (int i = 0; i < n; ++i) first_column *= std::norm(factor.l(static_cast<std::size_t>(i), 0));
  const double delta_closed = r.principal ? static_cast<double>(g.order()) * first_column : 0.0;
  r.delta_term = delta_closed;

  const auto orbits = classify_orbits(chi, n, options.cap);
  r.orbits_total = orbits.size();

  const std::uint64_t gamma0_code = IndexSequence::iota(n).code(n);
  const std::uint64_t gamma1_code = 0;
  std::vector<std::uint64_t> remaining;
  std::vector<std::size_t> remaining_sizes;
  std::vector<std::uint64_t> excluded;
  for (const auto& o : orbits) {
    if (o.in_omega) ++r.orbits_in_omega;
    const bool distinct = o.representative.all_distinct();
    const bool constant = o.representative.is_constant();
    if (distinct || constant) {
      excluded.push_back(o.representative.code(n));
      if (o.in_omega) ++r.orbits_excluded;
      continue;
    }
    if (!o.in_omega) continue;
    remaining.push_back(o.representative.code(n));
    remaining_sizes.push_back(o.orbit_size);
  }

  kernels::OrbitTermInput in;
  in.l = &factor.l;
  in.group = &weights;
  in.alphabet = n;
  in.choice = options.coset_choice;
  in.seed = options.seed;

  auto evaluate = [&](std::span<const std::uint64_t> codes) {
    if (linear) {
      return options.parallel ? kernels::omp::linear_orbit_terms(in, codes) : kernels::serial::linear_orbit_terms(in, codes);
    }
    return options.parallel ? kernels::omp::orbit_terms(in, codes) : kernels::serial::orbit_terms(in, codes);
  };

  const auto terms = evaluate(remaining);
  r.residual_sum = options.parallel ? kernels::pairwise_sum(terms) : [&] {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (terms[k] == 0.0) continue;
    ++r.orbits_contributing;
    r.per_orbit_terms.push_back({IndexSequence::decode(remaining[k], n, n), remaining_sizes[k], terms[k]});
  }

  const auto excluded_terms = evaluate(excluded);
  for (std::size_t k = 0; k < excluded.size(); ++k) {
    if (excluded[k] == gamma0_code) {
      r.gamma0_term = excluded_terms[k];
    } else if (excluded[k] == gamma1_code) {
      r.gamma1_term = excluded_terms[k];
    } else {
      r.max_vanishing_term = std::max(r.max_vanishing_term, std::abs(excluded_terms[k]));
    }
  }
  // n == 1: (1) is both gamma0 and gamma1.
  if (n == 1) r.gamma1_term = r.gamma0_term;
  r.det_check_residual = std::abs(Complex(r.gamma0_term) - r.det_term);
  r.delta_check_residual = r.principal ? std::abs(r.gamma1_term - delta_closed) : 0.0;

  r.reconstructed = r.det_term + Complex(r.delta_term + r.residual_sum);
  r.identity_residual = std::abs(r.lhs_normalized_gmf - r.reconstructed);
  r.relative_identity_residual = r.identity_residual / (1.0 + std::abs(r.lhs_normalized_gmf));
  return r;
}

}  // namespace

OmegaSet compute_omega(const CharacterFn& chi, int alphabet, std::uint64_t cap) {
  const auto& g = chi.group();
  OmegaSet out;
  out.group_name = g.name();
  out.character_label = chi.label();
  out.total_sequences = checked_power(alphabet, g.degree(), cap);
  for (const auto& o : classify_orbits(chi, alphabet, cap)) {
    if (!o.in_omega) continue;
    out.representatives.push_back(o.representative);
    for (auto code : orbit_member_codes(g, o.representative, alphabet)) {
      out.members.push_back(IndexSequence::decode(code, g.degree(), alphabet));
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

double cauchy_binet_check(const ComplexMatrix& a, const ComplexMatrix& b, const CharacterFn& chi,
                          const IndexSequence& alpha, const IndexSequence& beta, std::uint64_t cap) {
  const auto& g = chi.group();
  const int n = g.degree();
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw Error(ErrorCode::NotSquare, "Cauchy-Binet check needs two square matrices of equal size");
  }
  const int size = static_cast<int>(a.rows());
  if (alpha.size() != static_cast<std::size_t>(n) || beta.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::DegreeMismatch, "alpha and beta must have length deg(G)");
  }
  if (!alpha.bounded_by(size) || !beta.bounded_by(size)) {
    throw Error(ErrorCode::IndexOutOfRange, "alpha or beta outside 1.." + std::to_string(size));
  }
  for (const auto* seq : {&alpha, &beta}) {
    const auto stab = stabilizer(g, *seq);
    if (std::abs(restricted_inner_with_trivial(chi, stab)) <= kOmegaThreshold) {
      throw Error(ErrorCode::AlphaBetaNotInOmega, seq->to_string() + " is not in Omega");
    }
  }
  const Complex lhs = gmf(submatrix(a * b, alpha, beta), chi).value;
  Complex rhs = 0.0;
  for (const auto& o : classify_orbits(chi, size, cap)) {
    if (!o.in_omega) continue;
    for (auto code : orbit_member_codes(g, o.representative, size)) {
      const auto gamma = IndexSequence::decode(code, n, size);
      rhs += gmf(submatrix(a, alpha, gamma), chi).value * gmf(submatrix(b, gamma, beta), chi).value;
    }
  }
  rhs *= chi.degree() / static_cast<double>(g.order());
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

Complex gmf_via_omega(const ComplexMatrix& a_psd, const CharacterFn& chi, const DecomposeOptions& options) {
  const auto& g = chi.group();
  const int n = g.degree();
  if (!a_psd.is_square() || a_psd.rows() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::DegreeMismatch, "matrix size does not match group degree");
  }
  const auto factor = cholesky(a_psd, options.psd_tol);
  const auto weights = weighted_elements(chi);
  std::vector<std::uint64_t> codes;
  for (const auto& o : classify_orbits(chi, n, options.cap)) {
    if (!o.in_omega) continue;
    const auto members = orbit_member_codes(g, o.representative, n);
    codes.insert(codes.end(), members.begin(), members.end());
  }
  const double sum = options.parallel ? kernels::omp::squared_gmf_sum(factor.l, weights, n, codes)
                                      : kernels::serial::squared_gmf_sum(factor.l, weights, n, codes);
  return sum / static_cast<double>(g.order());
}

DecompositionReport decompose(const ComplexMatrix& a_psd, const CharacterFn& chi, const DecomposeOptions& options) {
  require_irreducible(chi);
  return decompose_impl(a_psd, chi, options, false);
}

DecompositionReport decompose_linear(const ComplexMatrix& a_psd, const CharacterFn& chi,
                                     const DecomposeOptions& options) {
  if (!is_linear(chi)) throw Error(ErrorCode::ChiNotLinear, "'" + chi.label() + "' is not a linear character");
  require_irreducible(chi);
  return decompose_impl(a_psd, chi, options, true);
}

PermanentExpansion permanent_expansion(const ComplexMatrix& a_psd, const DecomposeOptions& options) {
  const int n = static_cast<int>(a_psd.rows());
  // for n = 2 the sequence (1, n) lies in the orbit of (1, ..., n)
  if (n < 3) throw Error(ErrorCode::NTooSmall, "permanent expansion needs n >= 3");
  auto sn = std::make_shared<const PermGroup>(symmetric_group(n));
  const auto chi = principal_character(sn);
  const auto report = decompose_linear(a_psd, chi, options);
  const auto factor = cholesky(a_psd, options.psd_tol);

  PermanentExpansion e;
  e.permanent = permanent_ryser(a_psd);
  e.det_term = report.det_term;
  e.first_column_term = report.delta_term;
  double prefix = 1.0;
  for (int i = 0; i + 1 < n; ++i) prefix *= std::norm(factor.l(static_cast<std::size_t>(i), 0));
  double fact = 1.0;
  for (int k = 2; k < n; ++k) fact *= k;
  const auto last = static_cast<std::size_t>(n - 1);
  e.last_column_term = fact * prefix * std::norm(factor.l(last, last));

  std::vector<int> special(static_cast<std::size_t>(n), 0);
  special.back() = n - 1;
  const IndexSequence special_seq(special);
  double rest = report.residual_sum;
  for (const auto& t : report.per_orbit_terms) {
    if (t.representative == special_seq) {
      e.last_column_term_explicit = t.term;
      rest -= t.term;
    }
  }
  e.rest = rest;
  e.reconstructed = e.det_term.real() + e.first_column_term + e.last_column_term + e.rest;
  return e;
}

}  // namespace gmf
