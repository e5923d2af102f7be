#include <omp.h>

#include "kernel_detail.hpp"

namespace gmf::kernels::omp {

namespace {

// Fixed partition of every reduction, independent of the thread count.
constexpr std::uint64_t kChunks = 64;

}  // namespace

void set_thread_count(int threads) {
  if (threads > 0) {
    omp_set_num_threads(threads);
  } else {
    omp_set_num_threads(omp_get_num_procs());
  }
}

int thread_count() { return omp_get_max_threads(); }

Complex permanent_ryser(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1.0;
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunks = std::min<std::uint64_t>(kChunks, total - 1);
  const std::uint64_t span = (total - 1 + chunks - 1) / chunks;
  std::vector<Complex> partial(chunks, Complex(0.0));
  const auto count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < count; ++c) {
    const std::uint64_t begin = 1 + static_cast<std::uint64_t>(c) * span;
    const std::uint64_t end = std::min(total, begin + span);
    if (begin < end) partial[static_cast<std::size_t>(c)] = detail::ryser_range(a, begin, end);
  }
  return detail::finish_ryser(n, pairwise_sum(partial));
}

Complex weighted_diagonal_sum(const ComplexMatrix& a, const WeightedElements& g) {
  const std::size_t order = g.order();
  if (order == 0) return 0.0;
  const std::size_t chunks = std::min<std::size_t>(kChunks, order);
  const std::size_t span = (order + chunks - 1) / chunks;
  std::vector<Complex> partial(chunks, Complex(0.0));
  const auto count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < count; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * span;
    const std::size_t end = std::min(order, begin + span);
    if (begin < end) partial[static_cast<std::size_t>(c)] = detail::diagonal_sum_range(a, g, begin, end);
  }
  return pairwise_sum(partial);
}

std::vector<double> orbit_terms(const OrbitTermInput& in, std::span<const std::uint64_t> rep_codes) {
  std::vector<double> out(rep_codes.size());
  const auto count = static_cast<std::int64_t>(rep_codes.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = detail::orbit_term(in, rep_codes[static_cast<std::size_t>(k)]);
  }
  return out;
}

std::vector<double> linear_orbit_terms(const OrbitTermInput& in, std::span<const std::uint64_t> rep_codes) {
  std::vector<double> out(rep_codes.size());
  const auto count = static_cast<std::int64_t>(rep_codes.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = detail::linear_orbit_term(in, rep_codes[static_cast<std::size_t>(k)]);
  }
  return out;
}

double squared_gmf_sum(const ComplexMatrix& l, const WeightedElements& g, int alphabet,
                       std::span<const std::uint64_t> codes) {
  std::vector<double> values(codes.size());
  const auto count = static_cast<std::int64_t>(codes.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k < count; ++k) {
    values[static_cast<std::size_t>(k)] = detail::squared_gmf(l, g, alphabet, codes[static_cast<std::size_t>(k)]);
  }
  return pairwise_sum(values);
}

}  // namespace gmf::kernels::omp
