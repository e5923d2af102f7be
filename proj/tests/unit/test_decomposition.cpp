#include <cmath>

#include "doctest.h"
#include "gmf/decomposition.hpp"
#include "gmf/gmf.hpp"
#include "gmf/permgroup.hpp"
#include "gmf/random.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using gmf::Complex;
using gmf::ComplexMatrix;
using gmf::ErrorCode;
using gmf::IndexSequence;

namespace {

gmf::GroupPtr ptr(gmf::PermGroup g) { return std::make_shared<const gmf::PermGroup>(std::move(g)); }

std::vector<gmf::GroupPtr> groups_of_degree(int n) {
  std::vector<gmf::GroupPtr> out{ptr(gmf::symmetric_group(n)), ptr(gmf::alternating_group(n)), ptr(gmf::cyclic_group(n)),
                                 ptr(gmf::trivial_group(n))};
  if (n == 4) {
    out.push_back(ptr(gmf::dihedral_group(4)));
    out.push_back(ptr(gmf::klein_four_group()));
    out.push_back(ptr(gmf::young_subgroup({2, 2})));
    out.push_back(ptr(gmf::young_subgroup({3, 1})));
  }
  return out;
}

double prod_first_column_sq(const ComplexMatrix& l) {
  double p = 1.0;
  for (std::size_t i = 0; i < l.rows(); ++i) p *= std::norm(l(i, 0));
  return p;
}

}  // namespace

TEST_CASE("compute_omega examples") {
  const auto s2 = ptr(gmf::symmetric_group(2));
  const auto om = gmf::compute_omega(gmf::sign_character(s2), 2);
  REQUIRE(om.members.size() == 2);
  CHECK(om.members[0] == IndexSequence({0, 1}));
  CHECK(om.members[1] == IndexSequence({1, 0}));
  REQUIRE(om.representatives.size() == 1);
  CHECK(om.representatives[0] == IndexSequence({0, 1}));
  CHECK(om.total_sequences == 4);

  for (int n = 2; n <= 4; ++n) {
    for (const auto& g : groups_of_degree(n)) {
      const auto o = gmf::compute_omega(gmf::principal_character(g), n);
      CHECK(o.members.size() == o.total_sequences);
      CHECK(static_cast<double>(o.members.size()) == std::pow(n, n));
    }
  }
}

TEST_CASE("compute_omega agrees with brute force") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& g : groups_of_degree(n)) {
      for (const auto& chi : gmf::character_table(g).irreducibles) {
        const auto o = gmf::compute_omega(chi, n);
        const auto ref = oracle::omega(chi, n);
        REQUIRE(o.members.size() == ref.size());
        for (std::size_t k = 0; k < ref.size(); ++k) CHECK(o.members[k] == IndexSequence(ref[k]));
        // distinct-entry sequences always belong to Omega
        std::size_t distinct = 0;
        for (const auto& m : o.members) {
          std::vector<int> v(m.entries().begin(), m.entries().end());
          std::sort(v.begin(), v.end());
          distinct += std::adjacent_find(v.begin(), v.end()) == v.end();
        }
        std::size_t fact = 1;
        for (int k = 2; k <= n; ++k) fact *= static_cast<std::size_t>(k);
        CHECK(distinct == fact);
        // representatives are orbit minima lying in Omega
        std::size_t members_from_reps = 0;
        for (const auto& r : o.representatives) {
          std::set<IndexSequence> orbit;
          for (const auto& e : g->elements()) orbit.insert(gmf::act(e, r));
          CHECK(*orbit.begin() == r);
          members_from_reps += orbit.size();
        }
        CHECK(members_from_reps == o.members.size());
      }
    }
  }
  CHECK_THROWS_CODE(gmf::compute_omega(gmf::principal_character(ptr(gmf::symmetric_group(4))), 4, 100),
                    ErrorCode::EnumerationTooLarge);
}

TEST_CASE("Cauchy-Binet examples") {
  gmf::Rng rng(41);
  for (int n = 2; n <= 4; ++n) {
    const auto id = ComplexMatrix::identity(static_cast<std::size_t>(n));
    for (const auto& g : groups_of_degree(n)) {
      for (const auto& chi : gmf::character_table(g).irreducibles) {
        CHECK(gmf::cauchy_binet_check(id, id, chi, IndexSequence::iota(n), IndexSequence::iota(n)) <= 1e-10);
      }
    }
  }
  const auto s3 = ptr(gmf::symmetric_group(3));
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = gmf::random_matrix(3, 3, rng);
    const auto b = gmf::random_matrix(3, 3, rng);
    CHECK(gmf::cauchy_binet_check(a, b, gmf::sign_character(s3), IndexSequence::iota(3), IndexSequence::iota(3)) <= 1e-9);
    const auto lhs = gmf::determinant(a * b);
    CHECK(std::abs(lhs - gmf::determinant(a) * gmf::determinant(b)) <= 1e-9 * std::max(1.0, std::abs(lhs)));
  }
  for (const auto& chi : gmf::character_table(s3).irreducibles) {
    const auto l = gmf::cholesky(gmf::random_psd(3, rng)).l;
    const auto omega = gmf::compute_omega(chi, 3);
    for (int t = 0; t < 4; ++t) {
      const auto& alpha = omega.members[rng.below(omega.members.size())];
      const auto& beta = omega.members[rng.below(omega.members.size())];
      CHECK(gmf::cauchy_binet_check(l, l.adjoint(), chi, alpha, beta) <= 1e-9);
    }
  }
}

TEST_CASE("Cauchy-Binet errors") {
  const auto s2 = ptr(gmf::symmetric_group(2));
  const auto id = ComplexMatrix::identity(2);
  CHECK_THROWS_CODE(gmf::cauchy_binet_check(id, id, gmf::sign_character(s2), IndexSequence({0, 0}), IndexSequence({0, 1})),
                    ErrorCode::AlphaBetaNotInOmega);
  CHECK_THROWS_CODE(gmf::cauchy_binet_check(id, ComplexMatrix::identity(3), gmf::sign_character(s2), IndexSequence({0, 1}),
                                            IndexSequence({0, 1})),
                    ErrorCode::NotSquare);
}

TEST_CASE("gmf_via_omega examples") {
  const ComplexMatrix a{{1.0, 1.0}, {1.0, 2.0}};
  const auto s2 = ptr(gmf::symmetric_group(2));
  CHECK(std::abs(gmf::gmf_via_omega(a, gmf::principal_character(s2)) - 3.0) <= 1e-14);
  CHECK(std::abs(gmf::gmf_via_omega(a, gmf::sign_character(s2)) - 1.0) <= 1e-14);
  for (int n = 2; n <= 5; ++n) {
    const auto sn = ptr(gmf::symmetric_group(n));
    CHECK(std::abs(gmf::gmf_via_omega(ComplexMatrix::identity(static_cast<std::size_t>(n)), gmf::principal_character(sn)) -
                   1.0) <= 1e-14);
  }
  CHECK_THROWS_CODE(gmf::gmf_via_omega(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}, gmf::principal_character(s2)),
                    ErrorCode::NotPsd);
}

TEST_CASE("decompose examples") {
  const ComplexMatrix a{{1.0, 1.0}, {1.0, 2.0}};
  const auto s2 = ptr(gmf::symmetric_group(2));
  const auto r = gmf::decompose(a, gmf::principal_character(s2));
  CHECK(std::abs(r.det_term - 1.0) <= 1e-14);
  CHECK(std::abs(r.delta_term - 2.0) <= 1e-14);
  CHECK(std::abs(r.residual_sum) <= 1e-14);
  CHECK(std::abs(r.lhs_normalized_gmf - 3.0) <= 1e-14);
  CHECK(r.identity_residual <= 1e-14);
  CHECK(r.principal);

  gmf::Rng rng(42);
  // diagonal PSD: structural zeros
  for (int n = 2; n <= 4; ++n) {
    std::vector<Complex> d;
    for (int i = 0; i < n; ++i) d.push_back(0.2 + rng.uniform());
    const auto diag = ComplexMatrix::diagonal(d);
    for (const auto& g : groups_of_degree(n)) {
      for (const auto& chi : gmf::character_table(g).irreducibles) {
        const auto rep = gmf::decompose(diag, chi);
        CHECK(rep.delta_term == 0.0);
        CHECK(std::abs(rep.reconstructed - rep.lhs_normalized_gmf) <= 1e-12 * std::abs(rep.lhs_normalized_gmf));
      }
    }
  }
  // sign on S_n
  for (int n = 2; n <= 5; ++n) {
    const auto sn = ptr(gmf::symmetric_group(n));
    const auto psd = gmf::random_psd(n, rng);
    const auto rep = gmf::decompose(psd, gmf::sign_character(sn));
    const auto det = gmf::determinant(psd);
    CHECK(std::abs(rep.lhs_normalized_gmf - det) <= 1e-9 * std::abs(det));
    CHECK(rep.delta_term == 0.0);
    CHECK(std::abs(rep.residual_sum) <= 1e-9 * std::abs(det));
  }
}

TEST_CASE("decompose errors") {
  const auto s3 = ptr(gmf::symmetric_group(3));
  const auto t = gmf::character_table(s3);
  std::vector<Complex> sum;
  for (std::size_t c = 0; c < t.irreducibles[0].values().size(); ++c) {
    sum.push_back(t.irreducibles[0].values()[c] + t.irreducibles[1].values()[c]);
  }
  const gmf::CharacterFn reducible(s3, sum, "1+sign");
  const auto a = ComplexMatrix::identity(3);
  CHECK_THROWS_CODE(gmf::decompose(a, reducible), ErrorCode::ChiNotIrreducible);
  CHECK_THROWS_CODE(gmf::decompose_linear(a, t.irreducibles[2]), ErrorCode::ChiNotLinear);
  CHECK_THROWS_CODE(gmf::decompose(ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 1.0}}, t.irreducibles[0]),
                    ErrorCode::NotPsd);
  CHECK_THROWS_CODE(gmf::decompose(ComplexMatrix::identity(4), t.irreducibles[0]), ErrorCode::DegreeMismatch);
  // gmf accepts the reducible character
  CHECK(gmf::gmf(a, reducible).value == Complex(2.0));
}

TEST_CASE("decomposition identity, dual path and Schur on a sweep") {
  gmf::Rng rng(43);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& g : groups_of_degree(n)) {
      for (const auto& chi : gmf::character_table(g).irreducibles) {
        for (int trial = 0; trial < 3; ++trial) {
          const auto a = gmf::random_psd(n, rng, trial == 2 ? gmf::PsdMode::Rank1Diag : gmf::PsdMode::Generic);
          const auto rep = gmf::decompose(a, chi);
          const auto direct = gmf::gmf(a, chi).normalized;
          const auto via = gmf::gmf_via_omega(a, chi);
          CHECK(rep.relative_identity_residual <= 1e-9);
          CHECK(std::abs(direct - via) <= 1e-8 * (1.0 + std::abs(direct)));
          CHECK(std::abs(direct - rep.reconstructed) <= 1e-8 * (1.0 + std::abs(direct)));
          CHECK(std::abs(rep.det_term.imag()) <= 1e-9);
          CHECK(rep.residual_sum >= -1e-9);
          CHECK(rep.lhs_normalized_gmf.real() >= rep.det_term.real() - 1e-9 * (1.0 + std::abs(rep.det_term)));
          if (!chi.is_principal()) CHECK(rep.delta_term == 0.0);
          CHECK(rep.det_check_residual <= 1e-12 * (1.0 + std::abs(rep.det_term)));
          CHECK(rep.max_vanishing_term <= 1e-12);
          if (chi.is_principal()) {
            const auto l = gmf::cholesky(a).l;
            const double closed = static_cast<double>(g->order()) * prod_first_column_sq(l);
            CHECK(std::abs(rep.gamma1_term - closed) <= 1e-12 * std::max(1.0, closed));
            CHECK(std::abs(rep.delta_term - closed) <= 1e-12 * std::max(1.0, closed));
          }
        }
      }
    }
  }
}

TEST_CASE("per-orbit terms match the explicit oracle") {
  gmf::Rng rng(44);
  for (const auto& g : {ptr(gmf::symmetric_group(3)), ptr(gmf::dihedral_group(4)), ptr(gmf::cyclic_group(4))}) {
    const int n = g->degree();
    const auto a = gmf::random_psd(n, rng);
    const auto l = gmf::cholesky(a).l;
    for (const auto& chi : gmf::character_table(g).irreducibles) {
      const auto rep = gmf::decompose(a, chi);
      double sum = 0.0;
      for (const auto& t : rep.per_orbit_terms) {
        std::vector<int> r(t.representative.entries().begin(), t.representative.entries().end());
        const double ref = oracle::orbit_term(l, chi, r);
        CHECK(std::abs(t.term - ref) <= 1e-12 * std::max(1.0, ref));
        CHECK(t.term > 0.0);
        sum += t.term;
      }
      CHECK(std::abs(sum - rep.residual_sum) <= 1e-12 * std::max(1.0, sum));
      CHECK(rep.orbits_contributing == rep.per_orbit_terms.size());
      CHECK(rep.orbits_total == oracle::orbit_representatives(*g, n).size());
    }
  }
}

TEST_CASE("randomized coset representatives leave every term unchanged") {
  gmf::Rng rng(45);
  for (const auto& g : {ptr(gmf::symmetric_group(4)), ptr(gmf::alternating_group(4)), ptr(gmf::dihedral_group(4))}) {
    const auto a = gmf::random_psd(4, rng);
    for (const auto& chi : gmf::character_table(g).irreducibles) {
      const auto lex = gmf::decompose(a, chi);
      gmf::DecomposeOptions opt;
      opt.coset_choice = gmf::kernels::CosetChoice::Randomized;
      opt.seed = 1234;
      const auto rnd = gmf::decompose(a, chi, opt);
      REQUIRE(lex.per_orbit_terms.size() == rnd.per_orbit_terms.size());
      for (std::size_t k = 0; k < lex.per_orbit_terms.size(); ++k) {
        CHECK(lex.per_orbit_terms[k].representative == rnd.per_orbit_terms[k].representative);
        CHECK(std::abs(lex.per_orbit_terms[k].term - rnd.per_orbit_terms[k].term) <= 1e-10);
      }
      CHECK(std::abs(lex.residual_sum - rnd.residual_sum) <= 1e-10);
    }
  }
}

TEST_CASE("serial and parallel decompositions agree exactly") {
  gmf::Rng rng(46);
  const auto s4 = ptr(gmf::symmetric_group(4));
  const auto a = gmf::random_psd(4, rng);
  for (const auto& chi : gmf::character_table(s4).irreducibles) {
    gmf::DecomposeOptions serial;
    serial.parallel = false;
    const auto p = gmf::decompose(a, chi);
    const auto s = gmf::decompose(a, chi, serial);
    REQUIRE(p.per_orbit_terms.size() == s.per_orbit_terms.size());
    for (std::size_t k = 0; k < p.per_orbit_terms.size(); ++k) CHECK(p.per_orbit_terms[k].term == s.per_orbit_terms[k].term);
    CHECK(std::abs(p.residual_sum - s.residual_sum) <= 1e-13 * std::max(1.0, s.residual_sum));
  }
}

TEST_CASE("linear decomposition agrees with the general one") {
  gmf::Rng rng(47);
  const auto c4 = ptr(gmf::cyclic_group(4));
  const auto klein = ptr(gmf::klein_four_group());
  const auto s4 = ptr(gmf::symmetric_group(4));
  std::vector<gmf::CharacterFn> chars;
  for (const auto& chi : gmf::character_table(c4).irreducibles) chars.push_back(chi);
  for (const auto& chi : gmf::character_table(klein).irreducibles) chars.push_back(chi);
  chars.push_back(gmf::sign_character(s4));
  chars.push_back(gmf::principal_character(s4));
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = gmf::random_psd(4, rng);
    const auto& chi = chars[static_cast<std::size_t>(trial) % chars.size()];
    const auto full = gmf::decompose(a, chi);
    const auto lin = gmf::decompose_linear(a, chi);
    CHECK(lin.linear_formula);
    CHECK(std::abs(full.residual_sum - lin.residual_sum) <= 1e-9 * std::max(1.0, full.residual_sum));
    CHECK(std::abs(full.reconstructed - lin.reconstructed) <= 1e-9 * std::max(1.0, std::abs(full.reconstructed)));
    CHECK(lin.relative_identity_residual <= 1e-9);
  }
}

TEST_CASE("permanent expansion") {
  for (int n = 3; n <= 5; ++n) {
    const auto e = gmf::permanent_expansion(ComplexMatrix::identity(static_cast<std::size_t>(n)));
    CHECK(e.permanent == Complex(1.0));
    CHECK(std::abs(e.det_term - 1.0) <= 1e-15);
    CHECK(e.first_column_term == 0.0);
    CHECK(e.last_column_term == 0.0);
    CHECK(std::abs(e.rest) <= 1e-15);
    CHECK(std::abs(e.reconstructed - 1.0) <= 1e-15);
  }
  gmf::Rng rng(48);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 3;
    const auto a = gmf::random_psd(n, rng);
    const auto e = gmf::permanent_expansion(a);
    const auto l = gmf::cholesky(a).l;
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    double last = fact / n * std::norm(l(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1)));
    for (int i = 0; i + 1 < n; ++i) last *= std::norm(l(static_cast<std::size_t>(i), 0));
    CHECK(std::abs(e.first_column_term - fact * prod_first_column_sq(l)) <= 1e-12 * std::max(1.0, e.first_column_term));
    CHECK(std::abs(e.last_column_term - last) <= 1e-12 * std::max(1.0, last));
    CHECK(std::abs(e.last_column_term_explicit - last) <= 1e-10 * std::max(1.0, last));
    CHECK(e.rest >= -1e-9);
    const auto per = gmf::permanent_naive(a);
    CHECK(std::abs(e.permanent - per) <= 1e-9 * std::abs(per));
    CHECK(std::abs(e.reconstructed - per.real()) <= 1e-9 * std::abs(per));
  }
  CHECK_THROWS_CODE(gmf::permanent_expansion(ComplexMatrix::identity(1)), ErrorCode::NTooSmall);
  CHECK_THROWS_CODE(gmf::permanent_expansion(ComplexMatrix::identity(2)), ErrorCode::NTooSmall);
}
