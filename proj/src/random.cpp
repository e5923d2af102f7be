#include "gmf/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gmf/error.hpp"

namespace gmf {

Philox4x32::Block Philox4x32::block(Block ctr, Key key) noexcept {
  constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
  constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(m0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(m1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += w0;
    key[1] += w1;
  }
  return ctr;
}

std::uint64_t Philox4x32::operator()() noexcept {
  if (used_ == 2) {
    out_ = block({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32), 0, 0}, key_);
    ++counter_;
    used_ = 0;
  }
  const auto hi = static_cast<std::uint64_t>(out_[2 * used_]);
  const auto lo = static_cast<std::uint64_t>(out_[2 * used_ + 1]);
  ++used_;
  return (hi << 32) | lo;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  spare_ = r * std::sin(2.0 * std::numbers::pi * v);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * v);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

PsdMode parse_psd_mode(std::string_view text) {
  if (text == "generic") return PsdMode::Generic;
  if (text == "rank1") return PsdMode::Rank1;
  if (text == "rank1diag") return PsdMode::Rank1Diag;
  if (text == "nonneg") return PsdMode::NonNeg;
  if (text == "zerocol") return PsdMode::ZeroCol;
  throw Error(ErrorCode::ParseError, "unknown mode '" + std::string(text) + "'");
}

std::string_view to_string(PsdMode mode) {
  switch (mode) {
    case PsdMode::Generic: return "generic";
    case PsdMode::Rank1: return "rank1";
    case PsdMode::Rank1Diag: return "rank1diag";
    case PsdMode::NonNeg: return "nonneg";
    case PsdMode::ZeroCol: return "zerocol";
  }
  return "generic";
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

namespace {

ComplexMatrix outer(const std::vector<Complex>& v) {
  const std::size_t n = v.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

}  // namespace

ComplexMatrix random_psd(int n, Rng& rng, PsdMode mode) {
  if (n <= 0) throw Error(ErrorCode::IndexOutOfRange, "n must be positive");
  const auto size = static_cast<std::size_t>(n);
  switch (mode) {
    case PsdMode::Generic: {
      const auto m = random_matrix(size, size, rng);
      return m * m.adjoint();
    }
    case PsdMode::Rank1: {
      std::vector<Complex> v(size);
      for (auto& x : v) x = rng.complex_normal();
      return outer(v);
    }
    case PsdMode::Rank1Diag: {
      std::vector<Complex> v(size);
      for (auto& x : v) x = rng.complex_normal();
      auto m = outer(v);
      for (std::size_t i = 0; i < size; ++i) m(i, i) += rng.uniform(0.1, 1.0);
      return m;
    }
    case PsdMode::NonNeg: {
      ComplexMatrix b(size, size);
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) b(i, j) = rng.uniform();
      }
      return b * b.adjoint();
    }
    case PsdMode::ZeroCol: {
      const auto m = random_matrix(size, size, rng);
      auto a = m * m.adjoint();
      const auto k = static_cast<std::size_t>(rng.below(size));
      for (std::size_t i = 0; i < size; ++i) {
        a(i, k) = 0.0;
        a(k, i) = 0.0;
      }
      return a;
    }
  }
  return {};
}

}  // namespace gmf
