#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gmf/permutation.hpp"

namespace gmf {

inline constexpr std::size_t kMaxGroupOrder = 40320;
inline constexpr std::uint64_t kDefaultEnumerationCap = 20'000'000;

struct ConjugacyClass {
  std::size_t representative = 0;     // index of the lexicographically smallest member
  std::vector<std::size_t> members;   // element indices, ascending
};

/// A concrete subgroup of S_n with its elements listed in lexicographic order
/// (identity first) and its conjugacy classes ordered by representative.
class PermGroup {
 public:
  /// Breadth-first closure of the generators.
  static PermGroup generate(int n, const std::vector<Permutation>& generators, std::string name = {},
                            std::size_t cap = kMaxGroupOrder);

  int degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
  std::size_t class_of(std::size_t element_index) const { return class_of_[element_index]; }

  std::optional<std::size_t> index_of(const Permutation& g) const;
  bool contains(const Permutation& g) const { return index_of(g).has_value(); }
  std::size_t inverse_index(std::size_t i) const { return inverse_[i]; }

  /// Same degree and same element set.
  bool same_as(const PermGroup& other) const noexcept;

 private:
  int degree_ = 0;
  std::string name_;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> inverse_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

using GroupPtr = std::shared_ptr<const PermGroup>;

PermGroup symmetric_group(int n);
PermGroup alternating_group(int n);
PermGroup cyclic_group(int n);
/// Symmetries of the n-gon acting on its vertices; order 2n for n >= 3.
PermGroup dihedral_group(int n);
/// {e, (1 2)(3 4), (1 3)(2 4), (1 4)(2 3)} in S_4.
PermGroup klein_four_group();
/// S_{p1} x S_{p2} x ... on consecutive blocks of points.
PermGroup young_subgroup(const std::vector<int>& parts);
PermGroup trivial_group(int n);

/// "S_4", "A_5", "C_4", "D_4", "Klein", "Young:[2,2]", "E_3" (trivial group).
PermGroup named_group(std::string_view spec);

/// Every subgroup of S_n, found as joins of cyclic subgroups. n <= 5.
std::vector<PermGroup> all_subgroups(int n);

std::vector<Permutation> stabilizer(const PermGroup& group, const IndexSequence& gamma);

/// One orbit of G on sequences of length deg(G).
///
/// With the action (g . gamma)_i = gamma_{g(i)}, g . rep depends only on the
/// coset (stabilizer * g); coset_reps[k] is the lexicographically smallest g
/// with g . representative == orbit[k]. The orbit is sorted, so its first
/// entry is the representative.
struct OrbitData {
  IndexSequence representative;
  std::vector<IndexSequence> orbit;
  std::vector<Permutation> stabilizer;
  std::vector<Permutation> coset_reps;
};

/// Partition of Gamma_{deg(G), alphabet} into G-orbits, ordered by
/// representative.
std::vector<OrbitData> orbit_decomposition(const PermGroup& group, int alphabet,
                                           std::uint64_t cap = kDefaultEnumerationCap);

/// Streams the lexicographically minimal member of every orbit in ascending
/// order, together with the orbit size. Memory is one bit per sequence.
void for_each_orbit_representative(const PermGroup& group, int alphabet, std::uint64_t cap,
                                   const std::function<void(const IndexSequence&, std::size_t)>& visit);

/// Lexicographically smallest element of each coset sigma * G in S_n. These
/// index the G-orbits of sequences with distinct entries: the orbit of
/// sigma . (1..n) is {sigma * g : g in G} read as image arrays.
std::vector<Permutation> right_coset_reps_in_sn(const PermGroup& group);

std::uint64_t checked_power(int base, int exponent, std::uint64_t cap);

}  // namespace gmf
