#include "gmf/characters.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gmf/error.hpp"

namespace gmf {

namespace {

void require_same_group(const CharacterFn& a, const CharacterFn& b) {
  if (!a.group().same_as(b.group())) {
    throw Error(ErrorCode::GroupMismatch, "characters '" + a.label() + "' and '" + b.label() +
                                              "' live on different groups");
  }
}

// Beta-set of a partition with `len` beads: beta_i = lambda_i + len - 1 - i.
std::vector<int> beta_set(std::span<const int> parts, std::size_t len) {
  std::vector<int> beta(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    const int part = i < parts.size() ? parts[i] : 0;
    beta[i] = part + static_cast<int>(len - 1 - i);
  }
  return beta;
}

std::vector<int> from_beta_set(std::vector<int> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<>());
  std::vector<int> parts;
  const std::size_t len = beta.size();
  for (std::size_t i = 0; i < len; ++i) {
    const int part = beta[i] - static_cast<int>(len - 1 - i);
    if (part > 0) parts.push_back(part);
  }
  return parts;
}

std::int64_t mn_recursive(const std::vector<int>& lambda, std::span<const int> mu) {
  if (mu.empty()) return lambda.empty() ? 1 : 0;
  const int r = mu.front();
  const auto beta = beta_set(lambda, lambda.size());
  std::int64_t total = 0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const int target = beta[k] - r;
    if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    // Leg length = beads strictly between target and beta[k].
    int between = 0;
    for (int b : beta) {
      if (b > target && b < beta[k]) ++between;
    }
    auto moved = beta;
    moved[k] = target;
    const std::int64_t sub = mn_recursive(from_beta_set(std::move(moved)), mu.subspan(1));
    total += (between % 2 == 0) ? sub : -sub;
  }
  return total;
}

Complex snap_to_gaussian_integer(Complex z, double tol) {
  const double re = std::round(z.real());
  const double im = std::round(z.imag());
  return (std::abs(z - Complex(re, im)) <= tol) ? Complex(re, im) : z;
}

struct StructureConstants {
  std::size_t classes = 0;
  std::vector<double> c;  // c[(i * r + j) * r + k]: pairs (x, y) in C_i x C_j with xy = rep_k
  double at(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * classes + j) * classes + k]; }
};

StructureConstants structure_constants(const PermGroup& g) {
  StructureConstants sc;
  const std::size_t r = g.classes().size();
  sc.classes = r;
  sc.c.assign(r * r * r, 0.0);
  for (std::size_t k = 0; k < r; ++k) {
    const auto& z = g.element(g.classes()[k].representative);
    for (std::size_t x = 0; x < g.order(); ++x) {
      const auto y = g.element(g.inverse_index(x)) * z;
      const std::size_t yi = *g.index_of(y);
      sc.c[(g.class_of(x) * r + g.class_of(yi)) * r + k] += 1.0;
    }
  }
  return sc;
}

bool is_all_ones(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](Complex z) { return std::abs(z - Complex(1.0)) < 1e-9; });
}

}  // namespace

CharacterFn::CharacterFn(GroupPtr group, std::vector<Complex> class_values, std::string label)
    : group_(std::move(group)), values_(std::move(class_values)), label_(std::move(label)) {
  if (!group_) throw Error(ErrorCode::ValidationFailed, "character without a group");
  if (values_.size() != group_->classes().size()) {
    throw Error(ErrorCode::ValidationFailed, "character needs " + std::to_string(group_->classes().size()) +
                                                 " class values, got " + std::to_string(values_.size()));
  }
}

Complex CharacterFn::operator()(const Permutation& g) const {
  const auto idx = group_->index_of(g);
  if (!idx) throw Error(ErrorCode::ElementNotInGroup, g.to_cycle_string() + " is not in " + group_->name());
  return at_element(*idx);
}

std::vector<Complex> CharacterFn::element_values() const {
  std::vector<Complex> out(group_->order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at_element(i);
  return out;
}

bool CharacterFn::is_principal(double tol) const {
  return std::all_of(values_.begin(), values_.end(), [&](Complex z) { return std::abs(z - Complex(1.0)) <= tol; });
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw Error(ErrorCode::BadPartition, "empty partition");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw Error(ErrorCode::BadPartition, "parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw Error(ErrorCode::BadPartition, "parts must be non-increasing");
    total_ += parts_[i];
  }
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  int cur = -1;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur = (cur < 0 ? 0 : cur * 10) + (c - '0');
    } else {
      if (cur >= 0) parts.push_back(cur);
      cur = -1;
      if (c != ',' && c != '[' && c != ']' && c != '(' && c != ')' && !std::isspace(static_cast<unsigned char>(c))) {
        throw Error(ErrorCode::BadPartition, "cannot parse partition '" + std::string(text) + "'");
      }
    }
  }
  if (cur >= 0) parts.push_back(cur);
  return Partition(std::move(parts));
}

std::string Partition::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "," : "") + std::to_string(parts_[i]);
  return out + "]";
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

Complex inner_product(const CharacterFn& chi, const CharacterFn& psi) {
  require_same_group(chi, psi);
  const auto& g = chi.group();
  Complex sum = 0.0;
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    sum += static_cast<double>(g.classes()[c].members.size()) * std::conj(chi.at_class(c)) * psi.at_class(c);
  }
  return sum / static_cast<double>(g.order());
}

Complex restricted_inner_with_trivial(const CharacterFn& chi, std::span<const Permutation> subgroup_elements) {
  if (subgroup_elements.empty()) throw Error(ErrorCode::ValidationFailed, "empty subgroup");
  Complex sum = 0.0;
  for (const auto& h : subgroup_elements) sum += chi(h);
  return sum / static_cast<double>(subgroup_elements.size());
}

std::int64_t murnaghan_nakayama(const Partition& lambda, std::span<const int> cycle_type) {
  const int total = std::accumulate(cycle_type.begin(), cycle_type.end(), 0);
  if (total != lambda.size()) {
    throw Error(ErrorCode::BadPartition, "cycle type sums to " + std::to_string(total) + ", partition to " +
                                             std::to_string(lambda.size()));
  }
  std::vector<int> mu(cycle_type.begin(), cycle_type.end());
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return mn_recursive(std::vector<int>(lambda.parts().begin(), lambda.parts().end()), mu);
}

std::int64_t hook_length_degree(const Partition& lambda) {
  const auto parts = lambda.parts();
  std::vector<int> conjugate(static_cast<std::size_t>(parts.front()), 0);
  for (int p : parts) {
    for (int j = 0; j < p; ++j) ++conjugate[static_cast<std::size_t>(j)];
  }
  // n! / prod hooks, accumulated as a ratio of integers (n <= 20 fits).
  std::int64_t numerator = 1;
  for (int k = 2; k <= lambda.size(); ++k) numerator *= k;
  std::int64_t hooks = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int j = 0; j < parts[i]; ++j) {
      hooks *= (parts[i] - j - 1) + (conjugate[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1) + 1;
    }
  }
  return numerator / hooks;
}

CharacterFn sn_character(const Partition& lambda, const GroupPtr& group) {
  if (lambda.size() != group->degree()) {
    throw Error(ErrorCode::BadPartition, "partition of " + std::to_string(lambda.size()) + " on a group of degree " +
                                             std::to_string(group->degree()));
  }
  std::vector<Complex> values;
  values.reserve(group->classes().size());
  for (const auto& c : group->classes()) {
    const auto type = group->element(c.representative).cycle_type();
    values.emplace_back(static_cast<double>(murnaghan_nakayama(lambda, type)), 0.0);
  }
  return CharacterFn(group, std::move(values), "chi" + lambda.to_string());
}

CharacterFn sn_irreducible(const Partition& lambda) {
  if (lambda.size() > 8) throw Error(ErrorCode::BadPartition, "S_n characters are supported for n <= 8");
  auto sn = std::make_shared<const PermGroup>(symmetric_group(lambda.size()));
  auto chi = sn_character(lambda, sn);
  if (std::llround(chi.degree().real()) != hook_length_degree(lambda)) {
    throw Error(ErrorCode::ValidationFailed, "Murnaghan-Nakayama degree disagrees with the hook length formula");
  }
  return chi;
}

CharacterFn sign_character(const GroupPtr& group) {
  std::vector<Complex> values;
  for (const auto& c : group->classes()) values.emplace_back(group->element(c.representative).sign(), 0.0);
  return CharacterFn(group, std::move(values), "sign");
}

CharacterFn principal_character(const GroupPtr& group) {
  return CharacterFn(group, std::vector<Complex>(group->classes().size(), Complex(1.0)), "principal");
}

std::pair<double, double> orthogonality_residuals(const std::vector<CharacterFn>& table) {
  double row = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      const Complex ip = inner_product(table[i], table[j]);
      row = std::max(row, std::abs(ip - Complex(i == j ? 1.0 : 0.0)));
    }
  }
  double col = 0.0;
  if (!table.empty()) {
    const auto& g = table.front().group();
    const std::size_t r = g.classes().size();
    const double order = static_cast<double>(g.order());
    // Normalized so the diagonal target is 1: sum_i chi_i(a) conj(chi_i(b)) * |C_a| / |G|.
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) {
        Complex s = 0.0;
        for (const auto& chi : table) s += chi.at_class(a) * std::conj(chi.at_class(b));
        s *= static_cast<double>(g.classes()[a].members.size()) / order;
        col = std::max(col, std::abs(s - Complex(a == b ? 1.0 : 0.0)));
      }
    }
  }
  return {row, col};
}

CharacterTable character_table(const GroupPtr& group, std::uint64_t seed) {
  const auto& g = *group;
  if (g.order() > kMaxGroupOrder) throw Error(ErrorCode::GroupTooLarge, "character tables need |G| <= 40320");
  const std::size_t r = g.classes().size();
  if (r > 64) throw Error(ErrorCode::GroupTooLarge, "character tables need at most 64 classes");
  const double order = static_cast<double>(g.order());

  std::vector<double> class_size(r);
  for (std::size_t k = 0; k < r; ++k) class_size[k] = static_cast<double>(g.classes()[k].members.size());

  if (r == 1) {
    CharacterTable t;
    t.group = group;
    t.irreducibles.push_back(principal_character(group));
    t.raw_values.push_back({Complex(1.0)});
    t.attempts = 1;
    return t;
  }

  const auto sc = structure_constants(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::string last_failure;

  constexpr int kMaxAttempts = 12;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    // Random combination of class matrices (M_i)_{jk} = c_ijk, each scaled by
    // 1/|C_i| so the eigenvalues sum_i w_i chi(g_i)/chi(e) stay O(1).
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    for (std::size_t i = 1; i < r; ++i) {
      const double w = coeff(rng) / class_size[i];
      for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t k = 0; k < r; ++k) {
          m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += w * sc.at(i, j, k);
        }
      }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
      last_failure = "eigen solver did not converge";
      continue;
    }
    const auto eigenvalues = solver.eigenvalues();
    double min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index a = 0; a < eigenvalues.size(); ++a) {
      for (Eigen::Index b = 0; b < a; ++b) min_gap = std::min(min_gap, std::abs(eigenvalues[a] - eigenvalues[b]));
    }
    if (min_gap < 1e-5) {
      last_failure = "eigenvalues not separated";
      continue;
    }

    const auto vectors = solver.eigenvectors();
    std::vector<std::vector<Complex>> raw;
    std::vector<std::vector<Complex>> snapped;
    bool ok = true;
    for (Eigen::Index col = 0; col < vectors.cols() && ok; ++col) {
      const Complex lead = vectors(0, col);
      if (std::abs(lead) < 1e-12) {
        ok = false;
        break;
      }
      std::vector<Complex> w(r);
      double norm = 0.0;
      for (std::size_t k = 0; k < r; ++k) {
        w[k] = vectors(static_cast<Eigen::Index>(k), col) / lead;
        norm += std::norm(w[k]) / class_size[k];
      }
      const double degree_raw = std::sqrt(order / norm);
      const double degree = std::round(degree_raw);
      if (std::abs(degree - degree_raw) > 1e-6 || degree < 1.0) {
        ok = false;
        break;
      }
      std::vector<Complex> raw_values(r);
      std::vector<Complex> values(r);
      for (std::size_t k = 0; k < r; ++k) {
        raw_values[k] = degree_raw * w[k] / class_size[k];
        values[k] = snap_to_gaussian_integer(degree * w[k] / class_size[k], 1e-6);
      }
      values[0] = degree;
      raw.push_back(std::move(raw_values));
      snapped.push_back(std::move(values));
    }
    if (!ok) {
      last_failure = "eigenvector normalization failed";
      continue;
    }

    std::vector<std::size_t> order_idx(r);
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
      const bool pa = is_all_ones(snapped[a]);
      const bool pb = is_all_ones(snapped[b]);
      if (pa != pb) return pa;
      if (snapped[a][0].real() != snapped[b][0].real()) return snapped[a][0].real() < snapped[b][0].real();
      for (std::size_t k = 0; k < r; ++k) {
        const Complex x = snapped[a][k];
        const Complex y = snapped[b][k];
        if (std::abs(x.real() - y.real()) > 1e-9) return x.real() > y.real();
        if (std::abs(x.imag() - y.imag()) > 1e-9) return x.imag() > y.imag();
      }
      return a < b;
    });

    CharacterTable t;
    t.group = group;
    t.attempts = attempt;
    double degree_squares = 0.0;
    for (std::size_t pos = 0; pos < r; ++pos) {
      const auto idx = order_idx[pos];
      degree_squares += snapped[idx][0].real() * snapped[idx][0].real();
      t.irreducibles.emplace_back(group, snapped[idx], "irr" + std::to_string(pos));
      t.raw_values.push_back(raw[idx]);
    }
    const auto [row, col] = orthogonality_residuals(t.irreducibles);
    t.row_orthogonality_residual = row;
    t.column_orthogonality_residual = col;
    if (row > 1e-8 || col > 1e-8 || std::abs(degree_squares - order) > 0.5) {
      last_failure = "orthogonality residual " + std::to_string(std::max(row, col));
      continue;
    }
    return t;
  }
  throw Error(ErrorCode::ValidationFailed, "character table of " + g.name() + ": " + last_failure);
}

CharacterDecomposition decompose_character(const CharacterFn& lambda, const std::vector<CharacterFn>& table) {
  CharacterDecomposition out;
  out.is_character = true;
  for (const auto& chi : table) {
    const Complex m = inner_product(chi, lambda);
    out.multiplicities.push_back(m);
    const double rounded = std::round(m.real());
    if (std::abs(m - Complex(rounded)) > 1e-8 || rounded < 0.0) out.is_character = false;
  }
  return out;
}

bool is_linear(const CharacterFn& chi) {
  if (std::abs(chi.degree() - Complex(1.0)) > 1e-9) return false;
  const auto& g = chi.group();
  const std::size_t order = g.order();
  for (std::size_t t = 0; t < std::min<std::size_t>(10, order * order); ++t) {
    const std::size_t a = (t * 7919 + 3) % order;
    const std::size_t b = (t * 104729 + 11) % order;
    const auto ab = *g.index_of(g.element(a) * g.element(b));
    if (std::abs(chi.at_element(ab) - chi.at_element(a) * chi.at_element(b)) > 1e-8) return false;
  }
  return true;
}

bool is_irreducible(const CharacterFn& chi, double tol) {
  return std::abs(inner_product(chi, chi) - Complex(1.0)) <= tol;
}

}  // namespace gmf
