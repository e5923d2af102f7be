#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmf/permgroup.hpp"

namespace gmf {

using Complex = std::complex<double>;

/// A class function on a PermGroup, stored per conjugacy class in the order
/// of group().classes().
class CharacterFn {
 public:
  CharacterFn() = default;
  CharacterFn(GroupPtr group, std::vector<Complex> class_values, std::string label = {});

  const PermGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  std::span<const Complex> values() const noexcept { return values_; }
  const std::string& label() const noexcept { return label_; }

  /// Value at the identity.
  Complex degree() const { return values_.front(); }
  Complex at_class(std::size_t c) const { return values_[c]; }
  Complex at_element(std::size_t element_index) const { return values_[group_->class_of(element_index)]; }
  Complex operator()(const Permutation& g) const;

  /// Value of chi at every element, in element order.
  std::vector<Complex> element_values() const;

  bool is_principal(double tol = 1e-9) const;

 private:
  GroupPtr group_;
  std::vector<Complex> values_;
  std::string label_;
};

/// Weakly decreasing positive parts.
class Partition {
 public:
  explicit Partition(std::vector<int> parts);
  static Partition parse(std::string_view text);

  std::span<const int> parts() const noexcept { return parts_; }
  int size() const noexcept { return total_; }
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// All partitions of n in reverse lexicographic order, (n) first.
std::vector<Partition> partitions_of(int n);

/// (1/|G|) sum_g conj(chi(g)) psi(g).
Complex inner_product(const CharacterFn& chi, const CharacterFn& psi);

/// (chi, 1)_H = (1/|H|) sum_{h in H} chi(h) for a subgroup H given by its elements.
Complex restricted_inner_with_trivial(const CharacterFn& chi, std::span<const Permutation> subgroup_elements);

/// chi_lambda(mu) by border-strip removal; mu is a cycle type.
std::int64_t murnaghan_nakayama(const Partition& lambda, std::span<const int> cycle_type);

/// n! / prod(hook lengths).
std::int64_t hook_length_degree(const Partition& lambda);

/// Irreducible character of S_n labelled by lambda, evaluated on `group`
/// (which must have degree |lambda|). On a proper subgroup this is the
/// restriction, which need not be irreducible.
CharacterFn sn_character(const Partition& lambda, const GroupPtr& group);

/// Irreducible of S_n on a freshly generated S_n.
CharacterFn sn_irreducible(const Partition& lambda);

/// The sign character restricted to `group`.
CharacterFn sign_character(const GroupPtr& group);
CharacterFn principal_character(const GroupPtr& group);

struct CharacterTable {
  GroupPtr group;
  std::vector<CharacterFn> irreducibles;
  /// Values before integer snapping, aligned with irreducibles.
  std::vector<std::vector<Complex>> raw_values;
  double row_orthogonality_residual = 0.0;
  double column_orthogonality_residual = 0.0;
  int attempts = 0;
};

/// Dixon-Burnside: common eigenvectors of the class-multiplication matrices
/// give the central characters, which are rescaled into irreducible
/// characters. Values within 1e-6 of a Gaussian integer are snapped to it and
/// the table is re-validated (orthogonality to 1e-8, sum of squared degrees
/// equal to |G|). Rows are ordered by degree, the principal character first.
CharacterTable character_table(const GroupPtr& group, std::uint64_t seed = 1);

/// Row and column orthogonality residuals of a list of characters on one group.
std::pair<double, double> orthogonality_residuals(const std::vector<CharacterFn>& table);

struct CharacterDecomposition {
  std::vector<Complex> multiplicities;  // (lambda, chi_i) per table row
  bool is_character = false;            // all multiplicities non-negative integers
};

CharacterDecomposition decompose_character(const CharacterFn& lambda, const std::vector<CharacterFn>& table);

/// Degree one. Multiplicativity is then automatic; the implementation spot
/// checks it on a few element pairs.
bool is_linear(const CharacterFn& chi);

/// (chi, chi)_G == 1 within tol.
bool is_irreducible(const CharacterFn& chi, double tol = 1e-8);

}  // namespace gmf
