// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failed criteria (0 when everything holds).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "gmf/characters.hpp"
#include "gmf/conjecture.hpp"
#include "gmf/decomposition.hpp"
#include "gmf/gmf.hpp"
#include "gmf/permgroup.hpp"
#include "gmf/random.hpp"
#include "oracles.hpp"

using gmf::Complex;
using gmf::ComplexMatrix;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail, Clock::time_point start) {
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("[%s] %d %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

gmf::GroupPtr ptr(gmf::PermGroup g) { return std::make_shared<const gmf::PermGroup>(std::move(g)); }

struct SweepGroup {
  gmf::GroupPtr group;
  gmf::CharacterTable table;
};

std::vector<SweepGroup> sweep_groups(int n) {
  std::vector<gmf::GroupPtr> gs{ptr(gmf::symmetric_group(n)), ptr(gmf::alternating_group(n)), ptr(gmf::cyclic_group(n))};
  if (n == 4) {
    gs.push_back(ptr(gmf::dihedral_group(4)));
    gs.push_back(ptr(gmf::klein_four_group()));
    gs.push_back(ptr(gmf::young_subgroup({2, 2})));
    gs.push_back(ptr(gmf::young_subgroup({3, 1})));
  }
  std::vector<SweepGroup> out;
  for (auto& g : gs) out.push_back({g, gmf::character_table(g)});
  return out;
}

ComplexMatrix abs_matrix(const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = std::abs(a(i, j));
  }
  return out;
}

double rel(Complex x, Complex y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

// Criteria 1, 2, 3 and 10 share one sweep.
void sweep_criteria(const std::map<int, std::vector<SweepGroup>>& groups) {
  const auto start = Clock::now();
  double max_identity = 0.0;
  double max_dual = 0.0;
  double worst_schur = 0.0;  // most negative (lhs - det) / (1 + |det|)
  double max_vanishing = 0.0;
  double max_gamma1_other = 0.0;
  std::size_t pairs = 0;
  std::size_t evaluations = 0;
  for (const auto& [n, gs] : groups) {
    gmf::Rng rng(1000 + static_cast<std::uint64_t>(n));
    std::vector<ComplexMatrix> mats;
    for (int k = 0; k < 100; ++k) mats.push_back(gmf::random_psd(n, rng));
    for (const auto& sg : gs) {
      for (const auto& chi : sg.table.irreducibles) {
        ++pairs;
        for (const auto& a : mats) {
          const auto rep = gmf::decompose(a, chi);
          const auto direct = gmf::gmf(a, chi).normalized;
          const auto via = gmf::gmf_via_omega(a, chi);
          max_identity = std::max(max_identity, rep.relative_identity_residual);
          max_dual = std::max({max_dual, std::abs(via - direct) / (1.0 + std::abs(direct)),
                               std::abs(rep.reconstructed - direct) / (1.0 + std::abs(direct))});
          const double det = gmf::determinant(a).real();
          worst_schur = std::min(worst_schur, (direct.real() - det) / (1.0 + std::abs(det)));
          max_vanishing = std::max(max_vanishing, rep.max_vanishing_term);
          if (!chi.is_principal()) max_gamma1_other = std::max(max_gamma1_other, rep.gamma1_term);
          ++evaluations;
        }
      }
    }
  }
  const std::string scope = std::to_string(pairs) + " (G, chi) pairs, " + std::to_string(evaluations) + " evaluations";
  report(1, max_identity <= 1e-8, "decomposition identity", "max relative residual " + fmt("%.3g", max_identity) + ", " + scope,
         start);
  report(2, max_dual <= 1e-8, "dual-path evaluation", "max relative difference " + fmt("%.3g", max_dual), start);
  report(3, worst_schur >= -1e-9, "Schur inequality",
         "min (lhs - det)/(1 + |det|) = " + fmt("%.3g", worst_schur), start);
  report(10, max_vanishing <= 1e-12 && max_gamma1_other <= 1e-12, "vanishing orbit terms",
         "max sigma.gamma0 / gamma^k term " + fmt("%.3g", max_vanishing) + ", gamma^1 term for chi != 1 " +
             fmt("%.3g", max_gamma1_other),
         start);
}

void criterion4() {
  const auto start = Clock::now();
  const bool mn_ok = gmf::m_n(4) == 146 && gmf::m_n(5) == 1948 && gmf::m_n(6) == 29830;
  gmf::Rng rng(4004);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto a = gmf::random_psd(2, rng);
    const auto l = gmf::cholesky(a).l;
    const auto per = gmf::permanent_naive(a);
    const auto rhs = gmf::determinant(a) + 2.0 * std::norm(l(0, 0) * l(1, 0));
    worst = std::max(worst, rel(rhs, per));
  }
  report(4, mn_ok && worst <= 1e-10, "closed-form anchors",
         std::string("M_4, M_5, M_6 = ") + gmf::m_n(4).str() + ", " + gmf::m_n(5).str() + ", " + gmf::m_n(6).str() +
             "; n = 2 identity max relative error " + fmt("%.3g", worst),
         start);
}

void criterion5() {
  const auto start = Clock::now();
  std::vector<gmf::GroupPtr> subgroups;
  for (auto& g : gmf::all_subgroups(4)) subgroups.push_back(ptr(std::move(g)));
  gmf::Rng rng(5005);
  int members = 0;
  int affirmed = 0;
  int verified = 0;
  double worst_margin = 0.0;  // min margin / scale
  int skipped_bases = 0;
  for (int base = 0; base < 50; ++base) {
    const auto a = gmf::random_psd(4, rng);
    const auto l = gmf::cholesky(a).l;
    bool nonzero_first = true;
    for (std::size_t i = 0; i < 4; ++i) nonzero_first = nonzero_first && std::abs(l(i, 0)) > 1e-8;
    if (!nonzero_first) {
      ++skipped_bases;
      --base;
      continue;
    }
    const double bound = gmf::class_bound(a);
    const double top = std::isfinite(bound) ? bound : 1.0;
    for (int v = 0; v < 10; ++v) {
      std::vector<double> lambdas(3);
      for (auto& x : lambdas) x = v == 0 ? top : top * (1.0 - rng.uniform());
      const auto member = gmf::generate_class(a, lambdas);
      ++members;
      if (gmf::criterion_check(member).verdict == gmf::Verdict::AffirmedByCriterion) ++affirmed;
      const auto r = gmf::verify_conjecture_numeric(member, subgroups);
      if (r.verdict == gmf::Verdict::VerifiedNumerically && r.min_margin >= -1e-9 * r.scale) ++verified;
      worst_margin = std::min(worst_margin, r.min_margin / r.scale);
    }
  }
  report(5, affirmed == members && verified == members && members == 500, "criterion soundness",
         std::to_string(affirmed) + "/" + std::to_string(members) + " affirmed by criterion, " + std::to_string(verified) +
             "/" + std::to_string(members) + " verified over " + std::to_string(subgroups.size()) +
             " subgroups, min margin/scale " + fmt("%.3g", worst_margin) +
             (skipped_bases ? ", redrawn bases " + std::to_string(skipped_bases) : std::string{}),
         start);
}

void criterion6() {
  const auto start = Clock::now();
  gmf::Rng rng(6006);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 7;
    const auto a = gmf::random_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng);
    const auto naive = gmf::permanent_naive(a);
    const auto ryser = gmf::permanent_ryser(a);
    worst = std::max(worst, std::abs(ryser - naive) / std::abs(naive));
  }
  const auto big = gmf::random_matrix(20, 20, rng);
  const auto t0 = Clock::now();
  const auto per20 = gmf::permanent_ryser(big);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report(6, worst <= 1e-9 && secs < 5.0 && std::isfinite(per20.real()), "permanent kernel",
         "Ryser vs naive max relative error " + fmt("%.3g", worst) + " on 200 matrices; n = 20 in " + fmt("%.3f", secs) + " s",
         start);
}

void criterion7() {
  const auto start = Clock::now();
  gmf::Rng rng(7007);
  int agree = 0;
  int vanishing = 0;
  const int patterns = 200;
  for (int k = 0; k < patterns; ++k) {
    const int n = 1 + k % 6;
    auto a = gmf::random_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng);
    const double density = 0.2 + 0.6 * rng.uniform();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (rng.uniform() >= density) a(i, j) = 0.0;
      }
    }
    const auto m = gmf::frobenius_koenig(a);
    const bool exhaustive = oracle::all_diagonals_vanish(a);
    bool ok = m.perfect == !exhaustive;
    if (!m.perfect) {
      ++vanishing;
      ok = ok && m.zero_block.rows.size() + m.zero_block.cols.size() == static_cast<std::size_t>(n + 1);
      for (int r : m.zero_block.rows) {
        for (int c : m.zero_block.cols) ok = ok && a(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) == Complex(0.0);
      }
    }
    agree += ok;
  }
  int routed = 0;
  int fixtures = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 6;
    const auto r1 = gmf::quick_affirm(gmf::random_psd(n, rng, gmf::PsdMode::Rank1));
    routed += r1.proposition == "rank-1";
    const auto r2 = gmf::quick_affirm(gmf::random_psd(n, rng, gmf::PsdMode::Rank1Diag));
    routed += r2.proposition == "rank1-plus-diagonal";
    fixtures += 2;
  }
  report(7, agree == patterns && routed == fixtures, "structural classifiers",
         "Frobenius-Koenig agreement " + std::to_string(agree) + "/" + std::to_string(patterns) + " (" +
             std::to_string(vanishing) + " vanishing), fixtures routed " + std::to_string(routed) + "/" +
             std::to_string(fixtures),
         start);
}

void criterion8(const std::map<int, std::vector<SweepGroup>>& groups) {
  const auto start = Clock::now();
  const auto s4 = ptr(gmf::symmetric_group(4));
  const auto table = gmf::character_table(s4);
  std::vector<gmf::CharacterFn> mn;
  for (const auto& p : gmf::partitions_of(4)) mn.push_back(gmf::sn_character(p, s4));
  std::vector<bool> used(mn.size(), false);
  double worst_raw = 0.0;
  double worst_snapped = 0.0;
  bool matched = table.irreducibles.size() == mn.size();
  for (std::size_t r = 0; r < table.irreducibles.size() && matched; ++r) {
    std::size_t best = mn.size();
    double best_err = 1e300;
    for (std::size_t k = 0; k < mn.size(); ++k) {
      if (used[k]) continue;
      double err = 0.0;
      for (std::size_t c = 0; c < mn[k].values().size(); ++c) err = std::max(err, std::abs(table.raw_values[r][c] - mn[k].values()[c]));
      if (err < best_err) {
        best_err = err;
        best = k;
      }
    }
    if (best == mn.size()) {
      matched = false;
      break;
    }
    used[best] = true;
    worst_raw = std::max(worst_raw, best_err);
    for (std::size_t c = 0; c < mn[best].values().size(); ++c) {
      worst_snapped = std::max(worst_snapped, std::abs(table.irreducibles[r].values()[c] - mn[best].values()[c]));
    }
  }
  bool degrees_ok = true;
  double worst_orth = std::max(table.row_orthogonality_residual, table.column_orthogonality_residual);
  int tables = 0;
  for (const auto& [n, gs] : groups) {
    for (const auto& sg : gs) {
      double sum = 0.0;
      for (const auto& chi : sg.table.irreducibles) sum += std::norm(chi.degree());
      degrees_ok = degrees_ok && sum == static_cast<double>(sg.group->order());
      worst_orth = std::max({worst_orth, sg.table.row_orthogonality_residual, sg.table.column_orthogonality_residual});
      ++tables;
    }
  }
  report(8, matched && worst_raw <= 1e-6 && worst_snapped == 0.0 && degrees_ok && worst_orth <= 1e-8, "character tables",
         "S_4 raw error " + fmt("%.3g", worst_raw) + ", snapped error " + fmt("%.3g", worst_snapped) +
             ", sum of squared degrees = |G| on " + std::to_string(tables) + " tables, max orthogonality residual " +
             fmt("%.3g", worst_orth),
         start);
}

void criterion9(const std::map<int, std::vector<SweepGroup>>& groups) {
  const auto start = Clock::now();
  gmf::Rng rng(9009);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 4;
    const auto& gs = groups.at(n);
    const auto& sg = gs[static_cast<std::size_t>(k / 4) % gs.size()];
    const auto& chi = sg.table.irreducibles[static_cast<std::size_t>(k / 4) % sg.table.irreducibles.size()];
    const auto a = gmf::random_psd(n, rng);
    std::vector<Complex> c;
    for (int i = 0; i < n; ++i) c.push_back(rng.complex_normal());
    const auto s = gmf::congruence_scale(a, c);
    const auto lhs = gmf::gmf(s.matrix, chi).normalized;
    const auto rhs = s.factor * gmf::gmf(a, chi).normalized;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
  }
  report(9, worst <= 1e-9, "congruence covariance", "max relative error " + fmt("%.3g", worst) + " on 100 pairs", start);
}

}  // namespace

int main() {
  std::map<int, std::vector<SweepGroup>> groups;
  for (int n = 2; n <= 5; ++n) groups[n] = sweep_groups(n);
  sweep_criteria(groups);
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8(groups);
  criterion9(groups);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
