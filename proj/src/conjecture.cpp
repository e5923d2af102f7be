#include "gmf/conjecture.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gmf/characters.hpp"
#include "gmf/error.hpp"
#include "gmf/gmf.hpp"

namespace gmf {

namespace bmp = boost::multiprecision;

namespace {

bmp::cpp_int ipow(const bmp::cpp_int& base, int exp) {
  bmp::cpp_int out = 1;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_psd(const ComplexMatrix& a, double psd_tol) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "expected a square matrix");
  const auto verdict = check_psd(a, psd_tol);
  if (!verdict.is_psd) {
    throw Error(ErrorCode::NotPsd, "minimum eigenvalue estimate " + std::to_string(verdict.min_eigen_estimate));
  }
}

// max_{2 <= i, j <= n} |L_ij|.
double lower_block_max(const ComplexMatrix& l) {
  double m = 0.0;
  for (std::size_t i = 1; i < l.rows(); ++i) {
    for (std::size_t j = 1; j < l.cols(); ++j) m = std::max(m, std::abs(l(i, j)));
  }
  return m;
}

// Factor whose entries the criterion reads. Pivots of class members scale
// like lambda^2 and fall far below psd_tol; zeroing them would move mass of
// order sqrt(psd_tol) into later columns, so only roundoff-sized pivots
// count as zero here.
CholeskyFactor criterion_factor(const ComplexMatrix& a, double psd_tol) {
  const double roundoff = 64.0 * static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon();
  return cholesky(a, psd_tol, std::min(psd_tol, roundoff));
}

}  // namespace

bmp::cpp_int m_n(int n) {
  if (n <= 3) throw Error(ErrorCode::NTooSmall, "M_n is defined for n > 3, got " + std::to_string(n));
  bmp::cpp_int fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  bmp::cpp_int c;
  if (n % 2 == 0) {
    c = ipow(n, (n - 4) / 2) * ipow((n - 2) / 2, (n + 2) / 2) * ((n + 4) / 2);
  } else {
    c = ipow(n, (n - 5) / 2) * ipow((n - 1) / 2, (n + 1) / 2) * ((n + 3) / 2);
  }
  return ipow(n, n) - ipow(n - 1, n) - fact - c - 1;
}

EpsilonData epsilon_data(const ComplexMatrix& l, std::size_t group_order) {
  const int n = static_cast<int>(l.rows());
  const auto mn = m_n(n);
  EpsilonData e;
  e.n = n;
  e.group_order = group_order;
  e.m_n = mn.str();
  e.m_n_value = mn.convert_to<double>();
  e.alpha = 1.0;
  for (std::size_t i = 0; i < l.rows(); ++i) {
    const double v = std::abs(l(i, 0));
    e.alpha *= v;
    e.alpha0 = std::max(e.alpha0, v);
  }
  const double nf = factorial(n);
  e.eps_ng = e.alpha / static_cast<double>(group_order) * std::sqrt(2.0 * nf / (3.0 * e.m_n_value));
  if (e.alpha0 == 0.0) {
    e.eps_bar_ng = 1.0;
    e.eps_n = 1.0;
    return e;
  }
  // alpha / alpha0^{n-1} = alpha0 * prod_i (|L_i1| / alpha0), free of overflow.
  double ratio = e.alpha0;
  for (std::size_t i = 0; i < l.rows(); ++i) ratio *= std::abs(l(i, 0)) / e.alpha0;
  const double scaled = ratio / static_cast<double>(group_order) * std::sqrt(2.0 * nf / (3.0 * e.m_n_value));
  e.eps_bar_ng = std::min(scaled, 1.0);
  e.eps_n = std::min(ratio * std::sqrt(2.0 / (3.0 * nf * e.m_n_value)), 1.0);
  return e;
}

double entry_bound(double det, int n, std::size_t group_order, bool principal, double alpha) {
  const double weight = (principal ? static_cast<double>(group_order) : 0.0) + 2.0 / 3.0 * factorial(n);
  return det + weight * alpha * alpha;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::AffirmedByCriterion: return "AffirmedByCriterion";
    case Verdict::AffirmedByProposition: return "AffirmedByProposition";
    case Verdict::VerifiedNumerically: return "VerifiedNumerically";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::PotentialCounterexample: return "PotentialCounterexample";
  }
  return "Inconclusive";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Inconclusive: return 2;
    case Verdict::PotentialCounterexample: return 3;
    default: return 0;
  }
}

ConjectureReport criterion_check(const ComplexMatrix& a, const ConjectureOptions& options) {
  require_psd(a, options.psd_tol);
  ConjectureReport r;
  r.matrix_id = options.matrix_id;
  r.n = static_cast<int>(a.rows());
  r.tolerance = options.tol;
  if (r.n <= 3) {
    r.verdict = Verdict::AffirmedByCriterion;
    r.notes.push_back("n <= 3: the inequality holds for every PSD matrix of this size");
    return r;
  }
  const auto factor = criterion_factor(a, options.psd_tol);
  const auto& l = factor.l;
  CriterionDetails c;
  c.epsilon = epsilon_data(l, static_cast<std::size_t>(factorial(r.n)));
  const double eps = c.epsilon.eps_n;
  for (std::size_t k = 1; k < l.rows(); ++k) {
    for (std::size_t j = 1; j <= k; ++j) {
      const double v = std::abs(l(k, j));
      c.max_off_column = std::max(c.max_off_column, v);
      const double ratio = eps > 0.0 ? v / eps : (v > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      c.table.push_back({static_cast<int>(k), static_cast<int>(j), v, ratio});
    }
  }
  c.slack = options.tol * (1.0 + eps);
  c.passed = c.max_off_column <= eps + c.slack;
  c.det = determinant(a).real();
  c.bound_principal = entry_bound(c.det, r.n, static_cast<std::size_t>(factorial(r.n)), true, c.epsilon.alpha);
  c.bound_nonprincipal = entry_bound(c.det, r.n, static_cast<std::size_t>(factorial(r.n)), false, c.epsilon.alpha);
  r.verdict = c.passed ? Verdict::AffirmedByCriterion : Verdict::Inconclusive;
  if (!c.passed) r.notes.push_back("criterion is sufficient, not necessary; try quick-affirm or verify");
  r.criterion = std::move(c);
  return r;
}

MatchingResult frobenius_koenig(const ComplexMatrix& a, double zero_tol) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "Frobenius-Koenig test needs a square matrix");
  SupportPattern support(a.rows(), std::vector<bool>(a.cols(), false));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) support[i][j] = std::abs(a(i, j)) > zero_tol;
  }
  return maximum_matching(support);
}

bool numerically_rank_one(const ComplexMatrix& a, double threshold) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> s;
  for (Eigen::Index i = 0; i < n; ++i) s.push_back(std::abs(solver.eigenvalues()(i)));
  std::sort(s.rbegin(), s.rend());
  if (s.empty() || s[0] == 0.0) return false;
  return s.size() == 1 || s[1] <= threshold * s[0];
}

RankOneDiagFit fit_rank_one_plus_diagonal(const ComplexMatrix& a, double tol) {
  const std::size_t n = a.rows();
  RankOneDiagFit fit;
  fit.v.assign(n, 0.0);
  fit.d.assign(n, 0.0);
  const double scale = std::max(a.max_abs(), std::numeric_limits<double>::min());
  const double zero = tol * scale;

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && std::abs(a(i, j)) > zero) {
        support.push_back(i);
        break;
      }
    }
  }
  if (support.size() == 2) {
    // One off-diagonal pair: |v_i|^2 |v_j|^2 = |a_ij|^2, split evenly in the
    // ratio of the diagonal so both d_i stay non-negative when A is PSD.
    const auto i = support[0];
    const auto j = support[1];
    const double b = std::abs(a(i, j));
    const double aii = a(i, i).real();
    const double ajj = a(j, j).real();
    if (aii <= 0.0 || ajj <= 0.0) return fit;
    const double t = b * std::sqrt(aii / ajj);
    fit.v[i] = std::sqrt(t);
    fit.v[j] = std::conj(a(i, j)) / std::sqrt(t);
  } else if (support.size() >= 3) {
    std::size_t p = support[0];
    double best_row = -1.0;
    for (auto i : support) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) s += std::abs(a(i, j));
      }
      if (s > best_row) {
        best_row = s;
        p = i;
      }
    }
    std::size_t bj = 0;
    std::size_t bk = 0;
    double best = -1.0;
    for (auto j : support) {
      for (auto k : support) {
        if (j == p || k == p || j == k) continue;
        if (std::abs(a(j, k)) > best) {
          best = std::abs(a(j, k));
          bj = j;
          bk = k;
        }
      }
    }
    if (best <= zero) return fit;
    const double vp2 = std::abs(a(p, bj)) * std::abs(a(p, bk)) / best;
    const double vp = std::sqrt(vp2);
    if (vp == 0.0) return fit;
    for (auto i : support) fit.v[i] = i == p ? Complex(vp) : a(i, p) / vp;
  }
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) residual = std::max(residual, std::abs(a(i, j) - fit.v[i] * std::conj(fit.v[j])));
    }
  }
  fit.residual = residual;
  bool diag_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    fit.d[i] = a(i, i).real() - std::norm(fit.v[i]);
    if (fit.d[i] < -zero || std::abs(a(i, i).imag()) > zero) diag_ok = false;
  }
  fit.fits = diag_ok && residual <= zero;
  return fit;
}

ConjectureReport quick_affirm(const ComplexMatrix& a, const ConjectureOptions& options) {
  require_psd(a, options.psd_tol);
  ConjectureReport r;
  r.matrix_id = options.matrix_id;
  r.n = static_cast<int>(a.rows());
  r.tolerance = options.tol;
  const std::size_t n = a.rows();
  const double zero = options.tol * a.max_abs();

  auto fire = [&](const std::string& name, const std::string& proposition, const std::string& detail) {
    r.classifiers.push_back({name, true, detail});
    r.verdict = Verdict::AffirmedByProposition;
    r.proposition = proposition;
  };
  auto miss = [&](const std::string& name, const std::string& detail = {}) {
    r.classifiers.push_back({name, false, detail});
  };

  bool nonneg = true;
  for (auto x : a.entries()) {
    if (x.real() < -zero || std::abs(x.imag()) > zero) nonneg = false;
  }
  if (nonneg) {
    fire("non-negative-real", "non-negative-real", "every entry is real and non-negative");
    return r;
  }
  miss("non-negative-real");

  std::optional<std::size_t> zero_col;
  std::optional<std::size_t> zero_row;
  for (std::size_t k = 0; k < n; ++k) {
    bool col = true;
    bool row = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(a(i, k)) > zero) col = false;
      if (std::abs(a(k, i)) > zero) row = false;
    }
    if (col && !zero_col) zero_col = k;
    if (row && !zero_row) zero_row = k;
  }
  if (zero_col) {
    fire("zero-row-or-column", "zero-column", "column " + std::to_string(*zero_col + 1) + " vanishes");
    return r;
  }
  if (zero_row) {
    fire("zero-row-or-column", "zero-row", "row " + std::to_string(*zero_row + 1) + " vanishes");
    return r;
  }
  miss("zero-row-or-column");

  const auto fk = frobenius_koenig(a, zero);
  if (!fk.perfect) {
    r.zero_block = fk.zero_block;
    fire("frobenius-koenig", "frobenius-koenig",
         std::to_string(fk.zero_block.rows.size()) + "x" + std::to_string(fk.zero_block.cols.size()) + " zero block");
    return r;
  }
  miss("frobenius-koenig", "perfect matching on the support");

  if (numerically_rank_one(a)) {
    fire("rank-1", "rank-1", "sigma_2 <= 1e-8 sigma_1");
    return r;
  }
  miss("rank-1");

  auto fit = fit_rank_one_plus_diagonal(a, options.tol);
  const bool fits = fit.fits;
  r.rank_one_diag = std::move(fit);
  if (fits) {
    fire("rank1-plus-diagonal", "rank1-plus-diagonal", "A = v v^* + diag(d) with d >= 0");
    return r;
  }
  miss("rank1-plus-diagonal");
  r.verdict = Verdict::Inconclusive;
  return r;
}

double class_bound(const ComplexMatrix& a, double psd_tol) {
  require_psd(a, psd_tol);
  const auto factor = criterion_factor(a, psd_tol);
  const auto eps = epsilon_data(factor.l, static_cast<std::size_t>(factorial(static_cast<int>(a.rows()))));
  const double m = lower_block_max(factor.l);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return eps.eps_n / m;
}

ComplexMatrix generate_class(const ComplexMatrix& a, const std::vector<double>& lambdas, double psd_tol) {
  require_psd(a, psd_tol);
  const std::size_t n = a.rows();
  if (lambdas.size() + 1 != n) {
    throw Error(ErrorCode::DegreeMismatch,
                "expected " + std::to_string(n - 1) + " lambdas, got " + std::to_string(lambdas.size()));
  }
  const double zero = psd_tol * a.max_abs();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a(i, 0)) <= zero) {
      throw Error(ErrorCode::ZeroInFirstColumn, "entry (" + std::to_string(i + 1) + ",1) is zero");
    }
  }
  const double bound = class_bound(a, psd_tol);
  const double cap = std::isinf(bound) ? 1.0 : bound;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double lam = lambdas[k];
    if (!(lam > 0.0) || lam > cap * (1.0 + 1e-12)) {
      throw Error(ErrorCode::LambdaOutOfRange,
                  "lambda_" + std::to_string(k + 2) + " = " + std::to_string(lam) + " outside (0, " + std::to_string(cap) + "]");
    }
  }
  const auto l = criterion_factor(a, psd_tol).l;
  ComplexMatrix ld = l;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) ld(i, j) *= lambdas[j - 1];
  }
  const auto x = ld * ld.adjoint();
  return 0.5 * (x + x.adjoint());
}

CongruenceResult congruence_scale(const ComplexMatrix& a, const std::vector<Complex>& c) {
  if (!a.is_square() || c.size() != a.rows()) {
    throw Error(ErrorCode::DegreeMismatch, "need one scale factor per row");
  }
  CongruenceResult out;
  out.matrix = ComplexMatrix(a.rows(), a.cols());
  Complex prod = 1.0;
  out.transfer_valid = true;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    prod *= c[i];
    if (c[i] == 0.0) out.transfer_valid = false;
    for (std::size_t j = 0; j < a.cols(); ++j) out.matrix(i, j) = c[i] * a(i, j) * std::conj(c[j]);
  }
  out.factor = std::norm(prod);
  return out;
}

ConjectureReport verify_conjecture_numeric(const ComplexMatrix& a, const std::vector<GroupPtr>& groups,
                                           const ConjectureOptions& options) {
  require_psd(a, options.psd_tol);
  const int n = static_cast<int>(a.rows());
  if (n > 7) throw Error(ErrorCode::GroupTooLarge, "numeric verification supports n <= 7");
  ConjectureReport r;
  r.matrix_id = options.matrix_id;
  r.n = n;
  r.tolerance = options.tol;

  std::vector<CharacterFn> characters;
  for (const auto& g : groups) {
    if (g->degree() != n) {
      throw Error(ErrorCode::DegreeMismatch, g->name() + " has degree " + std::to_string(g->degree()));
    }
    auto table = character_table(g);
    for (auto& chi : table.irreducibles) characters.push_back(std::move(chi));
  }

  const Complex per = permanent_ryser(a);
  // sum_sigma |l_sigma(A)| bounds every |normalized gmf| and sets the roundoff scale.
  ComplexMatrix abs_a(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) abs_a(i, j) = std::abs(a(i, j));
  }
  r.scale = std::max(permanent_ryser(abs_a).real(), std::numeric_limits<double>::min());

  r.margins.resize(characters.size());
  const auto count = static_cast<std::int64_t>(characters.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto& chi = characters[static_cast<std::size_t>(k)];
    auto& m = r.margins[static_cast<std::size_t>(k)];
    m.group = chi.group().name();
    m.character = chi.label();
    m.chi_degree = chi.degree().real();
    m.normalized_gmf = gmf(a, chi).normalized;
    m.permanent = per;
    m.scale = r.scale;
    m.margin = (per - m.normalized_gmf).real();
  }

  const double floor = -options.tol * r.scale;
  for (std::size_t k = 0; k < r.margins.size(); ++k) {
    auto& m = r.margins[k];
    if (m.margin >= floor) continue;
    // Recheck with independent summation before reporting.
    const auto& chi = characters[k];
    const Complex naive_per = permanent_naive(a);
    const Complex value = kernels::serial::weighted_diagonal_sum(a, weighted_elements(chi)) / chi.degree();
    m.rechecked = true;
    m.permanent = naive_per;
    m.normalized_gmf = value;
    m.margin = (naive_per - value).real();
  }

  r.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& m : r.margins) r.min_margin = std::min(r.min_margin, m.margin);
  if (r.margins.empty()) r.min_margin = 0.0;
  if (r.min_margin >= floor) {
    r.verdict = Verdict::VerifiedNumerically;
    r.notes.push_back("numerical evidence for the tested groups only, not a proof");
  } else {
    r.verdict = Verdict::PotentialCounterexample;
    r.notes.push_back("negative margin survived the naive recheck; inspect the matrix and margins");
  }
  return r;
}

}  // namespace gmf
