#pragma once

// Single-item pieces shared by the serial and OpenMP kernel builds.

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "gmf/kernels.hpp"

namespace gmf::kernels::detail {

inline std::uint64_t gray(std::uint64_t k) noexcept { return k ^ (k >> 1); }

/// Ryser terms for Gray indices k in [begin, end), begin >= 1, without the
/// global (-1)^n factor.
inline Complex ryser_range(const ComplexMatrix& a, std::uint64_t begin, std::uint64_t end) {
  const std::size_t n = a.rows();
  std::vector<Complex> row_sums(n, Complex(0.0));
  const std::uint64_t start_set = gray(begin - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if ((start_set >> j) & 1U) {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += a(i, j);
    }
  }
  Complex total = 0.0;
  for (std::uint64_t k = begin; k < end; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    const std::uint64_t set = gray(k);
    if ((set >> j) & 1U) {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += a(i, j);
    } else {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] -= a(i, j);
    }
    Complex prod = row_sums[0];
    for (std::size_t i = 1; i < n; ++i) prod *= row_sums[i];
    if (std::popcount(set) & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return total;
}

inline Complex finish_ryser(std::size_t n, Complex sum) { return (n % 2 == 1) ? -sum : sum; }

inline Complex diagonal_sum_range(const ComplexMatrix& a, const WeightedElements& g, std::size_t begin,
                                  std::size_t end) {
  const auto n = static_cast<std::size_t>(g.degree);
  Complex total = 0.0;
  for (std::size_t k = begin; k < end; ++k) {
    const Complex w = g.weights[k];
    if (w == Complex(0.0)) continue;
    const int* img = g.images.data() + k * n;
    Complex prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      prod *= a(i, static_cast<std::size_t>(img[i]));
      if (prod == Complex(0.0)) break;
    }
    total += w * prod;
  }
  return total;
}

/// d(L[(n)|cols]) = sum_h w_h prod_i L(i, cols[h(i)]).
inline Complex gmf_of_columns(const ComplexMatrix& l, const WeightedElements& g, std::span<const int> cols) {
  const auto n = static_cast<std::size_t>(g.degree);
  Complex total = 0.0;
  for (std::size_t k = 0; k < g.order(); ++k) {
    const Complex w = g.weights[k];
    if (w == Complex(0.0)) continue;
    const int* img = g.images.data() + k * n;
    Complex prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      prod *= l(i, static_cast<std::size_t>(cols[static_cast<std::size_t>(img[i])]));
      if (prod == Complex(0.0)) break;
    }
    total += w * prod;
  }
  return total;
}

inline void decode_into(std::uint64_t code, int alphabet, std::span<int> out) {
  const auto base = static_cast<std::uint64_t>(alphabet);
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<int>(code % base);
    code /= base;
  }
}

inline std::uint64_t acted_code(std::span<const int> g, std::span<const int> gamma, int alphabet) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    key = key * static_cast<std::uint64_t>(alphabet) + static_cast<std::uint64_t>(gamma[static_cast<std::size_t>(g[i])]);
  }
  return key;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t code) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (code + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double orbit_term(const OrbitTermInput& in, std::uint64_t rep_code) {
  const auto& g = *in.group;
  const auto n = static_cast<std::size_t>(g.degree);
  std::vector<int> gamma(n);
  decode_into(rep_code, in.alphabet, gamma);
  if (lower_triangular_zero(gamma)) return 0.0;

  // Visiting order of group elements; the first element reaching each orbit
  // member becomes that member's coset representative.
  std::vector<std::uint32_t> visit(g.order());
  std::iota(visit.begin(), visit.end(), 0U);
  if (in.choice == CosetChoice::Randomized) {
    std::mt19937_64 rng(mix_seed(in.seed, rep_code));
    std::shuffle(visit.begin(), visit.end(), rng);
  }
  std::vector<std::pair<std::uint64_t, std::uint32_t>> hits;
  hits.reserve(g.order());
  for (std::uint32_t pos = 0; pos < visit.size(); ++pos) {
    hits.emplace_back(acted_code(g.element(visit[pos]), gamma, in.alphabet), pos);
  }
  std::sort(hits.begin(), hits.end());

  std::vector<int> cols(n);
  double total = 0.0;
  for (std::size_t k = 0; k < hits.size(); ++k) {
    if (k > 0 && hits[k].first == hits[k - 1].first) continue;
    const auto perm = g.element(visit[hits[k].second]);
    // Columns of L^gamma P_g: column j is L's column gamma_{g(j)}.
    for (std::size_t j = 0; j < n; ++j) cols[j] = gamma[static_cast<std::size_t>(perm[j])];
    total += std::norm(gmf_of_columns(*in.l, g, cols));
  }
  return total / static_cast<double>(g.order());
}

inline double linear_orbit_term(const OrbitTermInput& in, std::uint64_t rep_code) {
  const auto& g = *in.group;
  const auto n = static_cast<std::size_t>(g.degree);
  std::vector<int> gamma(n);
  decode_into(rep_code, in.alphabet, gamma);
  if (lower_triangular_zero(gamma)) return 0.0;
  std::size_t stabilizer = 0;
  for (std::size_t k = 0; k < g.order(); ++k) {
    if (acted_code(g.element(k), gamma, in.alphabet) == rep_code) ++stabilizer;
  }
  return std::norm(gmf_of_columns(*in.l, g, gamma)) / static_cast<double>(stabilizer);
}

inline double squared_gmf(const ComplexMatrix& l, const WeightedElements& g, int alphabet, std::uint64_t code) {
  std::vector<int> omega(static_cast<std::size_t>(g.degree));
  decode_into(code, alphabet, omega);
  return std::norm(gmf_of_columns(l, g, omega));
}

}  // namespace gmf::kernels::detail
