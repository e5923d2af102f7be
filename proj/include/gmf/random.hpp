#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "gmf/matrix.hpp"

namespace gmf {

/// Philox4x32-10 counter-based generator: the 64-bit seed is the key and the
/// k-th output block is the bijection of counter k, so a stream can be
/// positioned anywhere without stepping through it.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block block(Block counter, Key key) noexcept;

  explicit Philox4x32(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  /// Next 64 bits, two words of the current block at a time.
  std::uint64_t operator()() noexcept;
  /// Jump to block index `counter` (each block yields two outputs).
  void seek(std::uint64_t counter) noexcept {
    counter_ = counter;
    used_ = 2;
  }

 private:
  Key key_;
  std::uint64_t counter_ = 0;
  Block out_{};
  int used_ = 2;
};

/// Seeded generator with distributions written out by hand, so a seed gives
/// the same numbers on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., bound - 1}.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Box-Muller).
  double normal();
  /// Real and imaginary parts independent N(0, 1/2).
  Complex complex_normal();

 private:
  Philox4x32 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class PsdMode { Generic, Rank1, Rank1Diag, NonNeg, ZeroCol };

PsdMode parse_psd_mode(std::string_view text);
std::string_view to_string(PsdMode mode);

/// Random PSD test matrices:
///   Generic   M M^* with complex normal M
///   Rank1     v v^*
///   Rank1Diag v v^* + diag(d), d_i uniform in [0.1, 1]
///   NonNeg    B B^T with B uniform in [0, 1]
///   ZeroCol   generic with row and column k cleared, k drawn from the seed
ComplexMatrix random_psd(int n, Rng& rng, PsdMode mode = PsdMode::Generic);

/// Complex normal entries.
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace gmf
