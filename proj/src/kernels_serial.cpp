#include "kernel_detail.hpp"

namespace gmf::kernels {

namespace {

template <typename T>
T pairwise_sum_impl(std::span<const T> v) {
  if (v.size() <= 8) {
    T s{};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum_impl(v.first(half)) + pairwise_sum_impl(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise_sum_impl(values); }
Complex pairwise_sum(std::span<const Complex> values) { return pairwise_sum_impl(values); }

bool lower_triangular_zero(std::span<const int> gamma) {
  std::vector<int> sorted(gamma.begin(), gamma.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] > static_cast<int>(i)) return true;
  }
  return false;
}

namespace serial {

Complex permanent_ryser(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1.0;
  return detail::finish_ryser(n, detail::ryser_range(a, 1, std::uint64_t{1} << n));
}

Complex weighted_diagonal_sum(const ComplexMatrix& a, const WeightedElements& g) {
  return detail::diagonal_sum_range(a, g, 0, g.order());
}

std::vector<double> orbit_terms(const OrbitTermInput& in, std::span<const std::uint64_t> rep_codes) {
  std::vector<double> out(rep_codes.size());
  for (std::size_t k = 0; k < rep_codes.size(); ++k) out[k] = detail::orbit_term(in, rep_codes[k]);
  return out;
}

std::vector<double> linear_orbit_terms(const OrbitTermInput& in, std::span<const std::uint64_t> rep_codes) {
  std::vector<double> out(rep_codes.size());
  for (std::size_t k = 0; k < rep_codes.size(); ++k) out[k] = detail::linear_orbit_term(in, rep_codes[k]);
  return out;
}

double squared_gmf_sum(const ComplexMatrix& l, const WeightedElements& g, int alphabet,
                       std::span<const std::uint64_t> codes) {
  double total = 0.0;
  for (auto code : codes) total += detail::squared_gmf(l, g, alphabet, code);
  return total;
}

}  // namespace serial

}  // namespace gmf::kernels
