#include <cmath>

#include "doctest.h"
#include "gmf/gmf.hpp"
#include "gmf/kernels.hpp"
#include "gmf/permgroup.hpp"
#include "gmf/random.hpp"
#include "oracles.hpp"

using gmf::Complex;
using gmf::ComplexMatrix;
namespace k = gmf::kernels;

namespace {

gmf::GroupPtr ptr(gmf::PermGroup g) { return std::make_shared<const gmf::PermGroup>(std::move(g)); }

bool brute_lower_triangular_zero(const std::vector<int>& gamma) {
  for (const auto& p : oracle::all_permutations(static_cast<int>(gamma.size()))) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i) ok = gamma[static_cast<std::size_t>(p[i])] <= static_cast<int>(i);
    if (ok) return false;
  }
  return true;
}

std::vector<std::uint64_t> rep_codes(const gmf::PermGroup& g, int alphabet) {
  std::vector<std::uint64_t> out;
  for (const auto& r : oracle::orbit_representatives(g, alphabet)) out.push_back(gmf::IndexSequence(r).code(alphabet));
  return out;
}

// Restores the default thread count when a test case leaves.
struct ThreadGuard {
  ~ThreadGuard() { k::omp::set_thread_count(0); }
};

}  // namespace

TEST_CASE("pairwise_sum") {
  CHECK(k::pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(k::pairwise_sum(std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0}) == 15.0);
  // (1 + 1e16) - 1e16 is lost left to right but the tree pairs (1e16, -1e16)
  CHECK(k::pairwise_sum(std::vector<double>{1e16, -1e16, 1.0, 0.0}) == 1.0);
  CHECK(k::pairwise_sum(std::vector<Complex>{Complex(1, 1), Complex(2, -1)}) == Complex(3, 0));
}

TEST_CASE("lower_triangular_zero matches brute force") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& s : oracle::all_sequences(n, n)) {
      CAPTURE(n);
      CHECK(k::lower_triangular_zero(s) == brute_lower_triangular_zero(s));
    }
  }
  CHECK_FALSE(k::lower_triangular_zero(std::vector<int>{0, 1, 2}));
  CHECK_FALSE(k::lower_triangular_zero(std::vector<int>{0, 0, 0}));
  CHECK(k::lower_triangular_zero(std::vector<int>{1, 1, 1}));
  CHECK(k::lower_triangular_zero(std::vector<int>{2, 2, 2}));
}

TEST_CASE("lower-triangular zero sequences give vanishing gmf of L^gamma") {
  gmf::Rng rng(31);
  const auto s4 = ptr(gmf::symmetric_group(4));
  const auto chi = gmf::principal_character(s4);
  const auto l = gmf::cholesky(gmf::random_psd(4, rng)).l;
  for (const auto& s : oracle::all_sequences(4, 4)) {
    if (!k::lower_triangular_zero(s)) continue;
    CHECK(oracle::gmf_sum(oracle::columns(l, s), chi) == Complex(0.0));
  }
}

TEST_CASE("Ryser kernels: serial, parallel and thread counts") {
  ThreadGuard guard;
  gmf::Rng rng(32);
  for (int n = 1; n <= 14; ++n) {
    const auto a = gmf::random_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng);
    const auto s = k::serial::permanent_ryser(a);
    k::omp::set_thread_count(1);
    const auto p1 = k::omp::permanent_ryser(a);
    k::omp::set_thread_count(3);
    const auto p3 = k::omp::permanent_ryser(a);
    k::omp::set_thread_count(8);
    const auto p8 = k::omp::permanent_ryser(a);
    CHECK(p1 == p3);
    CHECK(p1 == p8);
    double absper = 1.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double row = 0.0;
      for (auto z : a.row(i)) row += std::abs(z);
      absper *= row;
    }
    CHECK(std::abs(s - p1) <= 1e-12 * absper);
    if (n <= 7) CHECK(std::abs(s - oracle::naive_permanent(a)) <= 1e-12 * absper);
  }
}

TEST_CASE("weighted diagonal sum kernels") {
  ThreadGuard guard;
  gmf::Rng rng(33);
  for (int n = 2; n <= 6; ++n) {
    const auto g = ptr(gmf::symmetric_group(n));
    const auto a = gmf::random_psd(n, rng);
    for (const auto& chi : {gmf::principal_character(g), gmf::sign_character(g)}) {
      const auto w = gmf::weighted_elements(chi);
      CHECK(w.order() == g->order());
      CHECK(w.degree == n);
      const auto s = k::serial::weighted_diagonal_sum(a, w);
      k::omp::set_thread_count(1);
      const auto p1 = k::omp::weighted_diagonal_sum(a, w);
      k::omp::set_thread_count(5);
      CHECK(k::omp::weighted_diagonal_sum(a, w) == p1);
      CHECK(std::abs(s - p1) <= 1e-12 * std::max(1.0, std::abs(s)) * static_cast<double>(g->order()));
      CHECK(std::abs(s - oracle::gmf_sum(a, chi)) <= 1e-12 * std::max(1.0, std::abs(s)) * static_cast<double>(g->order()));
    }
  }
}

TEST_CASE("orbit term kernels match the explicit oracle") {
  ThreadGuard guard;
  gmf::Rng rng(34);
  std::vector<gmf::GroupPtr> groups{ptr(gmf::symmetric_group(3)), ptr(gmf::cyclic_group(4)), ptr(gmf::alternating_group(4)),
                                    ptr(gmf::klein_four_group())};
  for (const auto& g : groups) {
    const int n = g->degree();
    const auto l = gmf::cholesky(gmf::random_psd(n, rng)).l;
    const auto codes = rep_codes(*g, n);
    for (const auto& chi : gmf::character_table(g).irreducibles) {
      const auto w = gmf::weighted_elements(chi);
      const k::OrbitTermInput in{&l, &w, n, k::CosetChoice::Lexicographic, 0};
      const auto serial = k::serial::orbit_terms(in, codes);
      k::omp::set_thread_count(2);
      const auto parallel = k::omp::orbit_terms(in, codes);
      CHECK(serial == parallel);
      const auto reps = oracle::orbit_representatives(*g, n);
      for (std::size_t r = 0; r < reps.size(); ++r) {
        const double ref = oracle::orbit_term(l, chi, reps[r]);
        CHECK(std::abs(serial[r] - ref) <= 1e-12 * std::max(1.0, ref));
      }
      // a different transversal gives the same terms
      const k::OrbitTermInput shuffled{&l, &w, n, k::CosetChoice::Randomized, 77};
      const auto other = k::serial::orbit_terms(shuffled, codes);
      for (std::size_t r = 0; r < reps.size(); ++r) {
        CHECK(std::abs(other[r] - serial[r]) <= 1e-10 * std::max(1.0, serial[r]));
        CHECK(std::abs(oracle::orbit_term(l, chi, reps[r], true) - serial[r]) <= 1e-10 * std::max(1.0, serial[r]));
      }
      if (gmf::is_linear(chi)) {
        const auto lin = k::serial::linear_orbit_terms(in, codes);
        CHECK(lin == k::omp::linear_orbit_terms(in, codes));
        for (std::size_t r = 0; r < reps.size(); ++r) {
          CHECK(std::abs(lin[r] - serial[r]) <= 1e-12 * std::max(1.0, serial[r]));
        }
      }
    }
  }
}

TEST_CASE("squared gmf sum kernels") {
  ThreadGuard guard;
  gmf::Rng rng(35);
  const auto g = ptr(gmf::symmetric_group(3));
  const auto l = gmf::cholesky(gmf::random_psd(3, rng)).l;
  const auto chi = gmf::sn_character(gmf::Partition({2, 1}), g);
  const auto w = gmf::weighted_elements(chi);
  std::vector<std::uint64_t> codes;
  double ref = 0.0;
  for (const auto& s : oracle::all_sequences(3, 3)) {
    codes.push_back(gmf::IndexSequence(s).code(3));
    ref += std::norm(oracle::gmf_sum(oracle::columns(l, s), chi));
  }
  const double serial = k::serial::squared_gmf_sum(l, w, 3, codes);
  k::omp::set_thread_count(4);
  const double parallel = k::omp::squared_gmf_sum(l, w, 3, codes);
  k::omp::set_thread_count(1);
  CHECK(k::omp::squared_gmf_sum(l, w, 3, codes) == parallel);
  CHECK(std::abs(serial - ref) <= 1e-12 * std::max(1.0, ref));
  CHECK(std::abs(parallel - ref) <= 1e-12 * std::max(1.0, ref));
}
