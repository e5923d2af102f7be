#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmf {

/// A bijection of {0, ..., n-1}, stored as its image array.
///
/// Composition follows (g * h)(i) = g(h(i)). Ordering is lexicographic on the
/// image arrays, so the identity is the smallest permutation of its degree.
/// Externally (cycle strings, JSON) points are 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Parses "(1 2 3)(4 5)", "()" or "e". Fixed points may be omitted; commas
  /// are accepted as separators inside a cycle.
  static Permutation parse_cycles(std::string_view text, int n);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const noexcept { return images_[static_cast<std::size_t>(i)]; }
  std::span<const int> images() const noexcept { return images_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;
  int sign() const;
  /// Cycle lengths in non-increasing order, fixed points included.
  std::vector<int> cycle_type() const;
  std::string to_cycle_string() const;

  /// Injective key for degree <= 16.
  std::uint64_t code() const noexcept;

  friend Permutation operator*(const Permutation& g, const Permutation& h);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// An element of Gamma_{m,n}: m entries, each in {0, ..., n-1}, repetition
/// allowed. Printed 1-based.
class IndexSequence {
 public:
  IndexSequence() = default;
  explicit IndexSequence(std::vector<int> entries) : entries_(std::move(entries)) {}

  /// The sequence (0, 1, ..., n-1).
  static IndexSequence iota(int n);
  /// Parses a 1-based comma/space separated list such as "1,2,3".
  static IndexSequence parse(std::string_view text, int alphabet);
  /// Inverse of `code`: base-`alphabet` digits, most significant first.
  static IndexSequence decode(std::uint64_t code, int length, int alphabet);

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const noexcept { return entries_[i]; }
  std::span<const int> entries() const noexcept { return entries_; }

  bool bounded_by(int alphabet) const noexcept;
  bool all_distinct() const;
  bool is_constant() const noexcept;
  std::uint64_t code(int alphabet) const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const IndexSequence&, const IndexSequence&) = default;
  friend bool operator==(const IndexSequence&, const IndexSequence&) = default;

 private:
  std::vector<int> entries_;
};

/// (g . gamma)_i = gamma_{g(i)}. This is a right action under the composition
/// convention above: act(g, act(h, gamma)) == act(h * g, gamma).
IndexSequence act(const Permutation& g, const IndexSequence& gamma);

}  // namespace gmf
