#include "gmf/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>

#include "gmf/error.hpp"

namespace gmf {

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc{}) {
      throw Error(ErrorCode::ParseError, "expected integer in '" + std::string(text) + "'");
    }
    out.push_back(value);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  return out;
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::InvalidPermutation, "image array is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::parse_cycles(std::string_view text, int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::string trimmed;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty()) trimmed.push_back(c);
  }
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
  if (trimmed == "e" || trimmed.empty()) return Permutation(std::move(images));

  std::vector<bool> touched(static_cast<std::size_t>(n), false);
  std::size_t pos = 0;
  while (pos < trimmed.size()) {
    if (std::isspace(static_cast<unsigned char>(trimmed[pos]))) {
      ++pos;
      continue;
    }
    if (trimmed[pos] != '(') {
      throw Error(ErrorCode::ParseError, "cycle must start with '(' in '" + std::string(text) + "'");
    }
    const auto close = trimmed.find(')', pos);
    if (close == std::string::npos) {
      throw Error(ErrorCode::ParseError, "unterminated cycle in '" + std::string(text) + "'");
    }
    const auto points = parse_int_list(std::string_view(trimmed).substr(pos + 1, close - pos - 1));
    for (std::size_t k = 0; k < points.size(); ++k) {
      const int from = points[k] - 1;
      const int to = points[(k + 1) % points.size()] - 1;
      if (from < 0 || from >= n || to < 0 || to >= n) {
        throw Error(ErrorCode::ParseError, "point out of range 1.." + std::to_string(n) + " in '" +
                                               std::string(text) + "'");
      }
      if (touched[static_cast<std::size_t>(from)]) {
        throw Error(ErrorCode::ParseError, "point repeated across cycles in '" + std::string(text) + "'");
      }
      touched[static_cast<std::size_t>(from)] = true;
      images[static_cast<std::size_t>(from)] = to;
    }
    pos = close + 1;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  Permutation out;
  out.images_ = std::move(inv);
  return out;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

int Permutation::sign() const {
  const auto type = cycle_type();
  int transpositions = 0;
  for (int len : type) transpositions += len - 1;
  return transpositions % 2 == 0 ? 1 : -1;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == static_cast<int>(i)) continue;
    out += '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::uint64_t Permutation::code() const noexcept {
  std::uint64_t key = 0;
  for (int v : images_) key = (key << 4) | static_cast<std::uint64_t>(v);
  return key;
}

Permutation operator*(const Permutation& g, const Permutation& h) {
  if (g.degree() != h.degree()) {
    throw Error(ErrorCode::DegreeMismatch, "cannot compose permutations of different degree");
  }
  std::vector<int> images(h.images_.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    images[i] = g.images_[static_cast<std::size_t>(h.images_[i])];
  }
  Permutation out;
  out.images_ = std::move(images);
  return out;
}

IndexSequence IndexSequence::iota(int n) {
  std::vector<int> entries(static_cast<std::size_t>(n));
  std::iota(entries.begin(), entries.end(), 0);
  return IndexSequence(std::move(entries));
}

IndexSequence IndexSequence::parse(std::string_view text, int alphabet) {
  auto values = parse_int_list(text);
  for (int& v : values) {
    if (v < 1 || v > alphabet) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "sequence entry " + std::to_string(v) + " outside 1.." + std::to_string(alphabet));
    }
    --v;
  }
  return IndexSequence(std::move(values));
}

IndexSequence IndexSequence::decode(std::uint64_t code, int length, int alphabet) {
  std::vector<int> entries(static_cast<std::size_t>(length));
  const auto base = static_cast<std::uint64_t>(alphabet);
  for (int i = length - 1; i >= 0; --i) {
    entries[static_cast<std::size_t>(i)] = static_cast<int>(code % base);
    code /= base;
  }
  return IndexSequence(std::move(entries));
}

bool IndexSequence::bounded_by(int alphabet) const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [&](int v) { return v >= 0 && v < alphabet; });
}

bool IndexSequence::all_distinct() const {
  auto sorted = entries_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool IndexSequence::is_constant() const noexcept {
  return std::adjacent_find(entries_.begin(), entries_.end(), std::not_equal_to<>()) == entries_.end();
}

std::uint64_t IndexSequence::code(int alphabet) const noexcept {
  std::uint64_t key = 0;
  for (int v : entries_) key = key * static_cast<std::uint64_t>(alphabet) + static_cast<std::uint64_t>(v);
  return key;
}

std::string IndexSequence::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries_[i] + 1);
  }
  return out + ')';
}

IndexSequence act(const Permutation& g, const IndexSequence& gamma) {
  if (static_cast<std::size_t>(g.degree()) != gamma.size()) {
    throw Error(ErrorCode::DegreeMismatch, "permutation degree " + std::to_string(g.degree()) +
                                               " does not match sequence length " +
                                               std::to_string(gamma.size()));
  }
  std::vector<int> out(gamma.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = gamma[static_cast<std::size_t>(g(static_cast<int>(i)))];
  return IndexSequence(std::move(out));
}

}  // namespace gmf
