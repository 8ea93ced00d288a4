#pragma once

// Chaotic-iteration post-processing. Cells are 0-based; bit i of a state word
// is cell i. The iteration function of every shipped combinator is the
// vectorial Boolean negation.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ciprng/source.hpp"

namespace ciprng {

/// x in B^N, N <= 32, stored as the low N bits of a word.
class BooleanState {
 public:
  explicit BooleanState(unsigned size, std::uint32_t bits = 0);

  unsigned size() const noexcept { return size_; }
  std::uint32_t bits() const noexcept { return bits_; }

  bool operator[](unsigned cell) const;
  void set(unsigned cell, bool value);
  void flip(unsigned cell);

  friend bool operator==(const BooleanState&, const BooleanState&) = default;

 private:
  unsigned size_;
  std::uint32_t bits_;
};

using IterationFunction = std::function<BooleanState(const BooleanState&)>;

/// Updates only cell `strategy` of x to f(x)[strategy].
BooleanState chaotic_iterate(const IterationFunction& f, const BooleanState& x, unsigned strategy);

BooleanState vectorial_negation(const BooleanState& x);

/// Cumulative binomial thresholds T_k = sum_{i<=k} C(32, i), k = 0..32.
/// T_32 = 2^32 does not fit 32 bits, hence the 64-bit storage.
class DecimationTable {
 public:
  DecimationTable();

  std::uint64_t threshold(unsigned k) const { return thresholds_.at(k); }

  /// g1: the k with T_{k-1} <= y < T_k (T_{-1} = 0).
  unsigned decimate(std::uint32_t y) const noexcept;

 private:
  std::array<std::uint64_t, 33> thresholds_{};
};

const DecimationTable& decimation_table();

inline unsigned g1(std::uint32_t y) noexcept { return decimation_table().decimate(y); }

struct OldCiRound {
  std::uint32_t output;  // the 4-bit state after the round
  unsigned iterations;   // m in {13, 14}
};

/// One round with N = 4: m = (prng1 mod 2) + 13 draws from prng2, each
/// negating cell (b mod 4).
OldCiRound old_ci_round(BooleanState& x, Source& prng1, Source& prng2);

/// y as a 32-bit fraction of the source range: a / 2^bits scaled to 2^32, so
/// the integer thresholds apply to generators narrower (or wider) than 32 bits.
std::uint32_t decimation_input(std::uint64_t a, unsigned bits) noexcept;

struct NewCiRound {
  std::uint32_t output;
  std::uint32_t y;  // decimation_input of the prng1 draw
  unsigned flips;  // m = g1(y), also popcount(before ^ after)
  unsigned draws;  // words consumed from prng2
};

/// One round with N = 32: m = g1(y), y = decimation_input(prng1); prng2 is drawn until m distinct cells
/// (b mod 32) have each been negated once.
NewCiRound new_ci_round(std::uint32_t& x, Source& prng1, Source& prng2);

constexpr std::uint32_t xor_ci_next(std::uint32_t x, std::uint32_t s) noexcept { return x ^ s; }

std::uint32_t mixed_xor_next(std::uint32_t x, Source& prng1, Source& prng2);

/// x xored with every strategy word; the power m is words.size() and must be >= 1.
std::uint32_t multiple_xor_next(std::uint32_t x, std::span<const std::uint32_t> words);

enum class CiKind { Old, New, Xor, MixedXor, MultipleXor };

/// A combinator bound to its input generators, exposed as a Source.
/// Old emits 4-bit words; the others emit 32-bit words.
class CiGenerator final : public Source {
 public:
  /// prng2 is required for Old, New and MixedXor, rejected for Xor, and
  /// optional for MultipleXor (strategy word = prng1 ^ prng2 when present).
  CiGenerator(CiKind kind, std::unique_ptr<Source> prng1, std::unique_ptr<Source> prng2,
              std::uint32_t x0 = 0, unsigned power = 1);

  std::uint64_t next() override;
  unsigned bits() const noexcept override { return kind_ == CiKind::Old ? 4 : 32; }

  CiKind kind() const noexcept { return kind_; }
  std::uint32_t state() const noexcept { return x_; }
  unsigned power() const noexcept { return power_; }

 private:
  std::uint32_t strategy_word();

  CiKind kind_;
  std::unique_ptr<Source> prng1_;
  std::unique_ptr<Source> prng2_;
  std::uint32_t x_;
  unsigned power_;
  std::vector<std::uint32_t> scratch_;
};

}  // namespace ciprng
