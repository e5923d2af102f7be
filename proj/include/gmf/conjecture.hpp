#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmf/matching.hpp"
#include "gmf/matrix.hpp"
#include "gmf/permgroup.hpp"

namespace gmf {

/// Upper bound on the number of contributing orbits for n > 3:
///   n^n - (n-1)^n - n! - c_n - 1,
/// c_n = n^{(n-4)/2} ((n-2)/2)^{(n+2)/2} (n+4)/2 for even n,
/// c_n = n^{(n-5)/2} ((n-1)/2)^{(n+1)/2} (n+3)/2 for odd n.
boost::multiprecision::cpp_int m_n(int n);

struct EpsilonData {
  int n = 0;
  std::size_t group_order = 0;
  double alpha = 0.0;   // prod_i |L_i1|
  double alpha0 = 0.0;  // max_i |L_i1|
  std::string m_n;      // exact, decimal
  double m_n_value = 0.0;
  double eps_ng = 0.0;      // (alpha/|G|) sqrt(2 n! / (3 M_n))
  double eps_bar_ng = 0.0;  // min(eps_ng / alpha0^{n-1}, 1)
  double eps_n = 0.0;       // min((alpha/alpha0^{n-1}) sqrt(2 / (3 n! M_n)), 1)
};

/// Thresholds for the lower-triangular factor l of A = l l^*. When alpha0 is
/// zero the ratios are taken as +inf and both capped values become 1.
EpsilonData epsilon_data(const ComplexMatrix& l, std::size_t group_order);

/// det(A) + ([chi = 1] |G| + (2/3) n!) prod_i |L_i1|^2.
double entry_bound(double det, int n, std::size_t group_order, bool principal, double alpha);

enum class Verdict { AffirmedByCriterion, AffirmedByProposition, VerifiedNumerically, Inconclusive, PotentialCounterexample };

std::string_view to_string(Verdict v);
/// 0 for the affirmed and verified verdicts, 2 for Inconclusive, 3 for
/// PotentialCounterexample.
int exit_code(Verdict v);

struct EntryComparison {
  int row = 0;  // 0-based
  int col = 0;
  double abs_value = 0.0;
  double ratio = 0.0;  // abs_value / eps_n (inf when eps_n == 0 and abs_value > 0)
};

struct CriterionDetails {
  EpsilonData epsilon;
  double max_off_column = 0.0;  // max_{k, j != 1} |L_kj|
  double slack = 0.0;           // accepted excess over eps_n from roundoff
  bool passed = false;
  std::vector<EntryComparison> table;  // every entry of L outside column 1 on or below the diagonal
  double det = 0.0;
  double bound_principal = 0.0;     // entry bound for (S_n, 1)
  double bound_nonprincipal = 0.0;  // entry bound for S_n and chi != 1
};

struct ClassifierCheck {
  std::string name;
  bool fired = false;
  std::string detail;
};

struct RankOneDiagFit {
  bool fits = false;
  std::vector<Complex> v;
  std::vector<double> d;
  double residual = 0.0;
};

struct MarginRecord {
  std::string group;
  std::string character;
  double chi_degree = 0.0;
  Complex normalized_gmf;
  Complex permanent;
  double margin = 0.0;  // Re(per(A) - normalized gmf)
  double scale = 0.0;
  bool rechecked = false;
};

struct ConjectureReport {
  std::string matrix_id;
  int n = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::string proposition;  // set with AffirmedByProposition
  std::vector<std::string> notes;

  std::optional<CriterionDetails> criterion;
  std::vector<ClassifierCheck> classifiers;
  std::optional<ZeroBlock> zero_block;
  std::optional<RankOneDiagFit> rank_one_diag;

  std::vector<MarginRecord> margins;
  double min_margin = 0.0;
  double scale = 0.0;
  double tolerance = 0.0;
};

struct ConjectureOptions {
  double tol = 1e-9;
  double psd_tol = kDefaultPsdTol;
  std::string matrix_id;
};

/// |L_kj| <= eps_n for every k and j != 1 affirms the conjecture for every
/// G <= S_n and irreducible chi. For n <= 3 the conjecture is known and the
/// verdict is AffirmedByCriterion without the entry test.
ConjectureReport criterion_check(const ComplexMatrix& a, const ConjectureOptions& options = {});

/// Classifiers in order: non-negative real, zero row, zero column,
/// Frobenius-Koenig zero block, rank 1, rank 1 plus non-negative diagonal.
/// The first that fires gives AffirmedByProposition.
ConjectureReport quick_affirm(const ComplexMatrix& a, const ConjectureOptions& options = {});

/// The Frobenius-Koenig test on the support |a_ij| > zero_tol.
MatchingResult frobenius_koenig(const ComplexMatrix& a, double zero_tol = 0.0);

/// A = v v^* + diag(d) with d >= -tol * scale.
RankOneDiagFit fit_rank_one_plus_diagonal(const ComplexMatrix& a, double tol = 1e-9);

/// Largest eigenvalue ratio sigma_2 / sigma_1 test with threshold 1e-8.
bool numerically_rank_one(const ComplexMatrix& a, double threshold = 1e-8);

/// a = eps_n / max_{2 <= i, j <= n} |L_ij|; +inf when that maximum is zero.
double class_bound(const ComplexMatrix& a, double psd_tol = kDefaultPsdTol);

/// L diag(1, lambda_2^2, ..., lambda_n^2) L^* for 0 < lambda_i <= a (<= 1
/// when a is infinite). lambdas has n - 1 entries.
ComplexMatrix generate_class(const ComplexMatrix& a, const std::vector<double>& lambdas,
                             double psd_tol = kDefaultPsdTol);

struct CongruenceResult {
  ComplexMatrix matrix;    // D A D^*
  double factor = 0.0;     // |prod c_i|^2
  bool transfer_valid = false;  // every c_i nonzero
};

CongruenceResult congruence_scale(const ComplexMatrix& a, const std::vector<Complex>& c);

/// Margins per(A) - normalized d^G_chi(A) for every listed group and every
/// irreducible chi of its computed character table. Numerical evidence only.
ConjectureReport verify_conjecture_numeric(const ComplexMatrix& a, const std::vector<GroupPtr>& groups,
                                           const ConjectureOptions& options = {});

}  // namespace gmf
