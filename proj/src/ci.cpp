#include "ciprng/ci.hpp"

#include <algorithm>
#include <string>

#include "ciprng/error.hpp"
#include "ciprng/kernels.hpp"

namespace ciprng {
namespace {

void check_cell(unsigned cell, unsigned size) {
  if (cell >= size) {
    throw Error(ErrorCode::IndexOutOfRange,
                "cell " + std::to_string(cell) + " outside [0, " + std::to_string(size) + ")");
  }
}

}  // namespace

BooleanState::BooleanState(unsigned size, std::uint32_t bits) : size_(size), bits_(bits) {
  if (size == 0 || size > 32) throw Error(ErrorCode::DomainError, "boolean state size must lie in [1, 32]");
  if (size < 32) bits_ &= (std::uint32_t{1} << size) - 1;
}

bool BooleanState::operator[](unsigned cell) const {
  check_cell(cell, size_);
  return (bits_ >> cell) & 1;
}

void BooleanState::set(unsigned cell, bool value) {
  check_cell(cell, size_);
  const std::uint32_t bit = std::uint32_t{1} << cell;
  bits_ = value ? (bits_ | bit) : (bits_ & ~bit);
}

void BooleanState::flip(unsigned cell) {
  check_cell(cell, size_);
  bits_ ^= std::uint32_t{1} << cell;
}

BooleanState chaotic_iterate(const IterationFunction& f, const BooleanState& x, unsigned strategy) {
  check_cell(strategy, x.size());
  const BooleanState image = f(x);
  if (image.size() != x.size()) throw Error(ErrorCode::DomainError, "iteration function changed the state size");
  BooleanState next = x;
  next.set(strategy, image[strategy]);
  return next;
}

BooleanState vectorial_negation(const BooleanState& x) { return BooleanState(x.size(), ~x.bits()); }

DecimationTable::DecimationTable() {
  std::uint64_t binom = 1;  // C(32, k)
  std::uint64_t cumulative = 0;
  for (unsigned k = 0; k <= 32; ++k) {
    cumulative += binom;
    thresholds_[k] = cumulative;
    binom = binom * (32 - k) / (k + 1);
  }
}

unsigned DecimationTable::decimate(std::uint32_t y) const noexcept {
  // First k with y < T_k.
  const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), std::uint64_t{y});
  return static_cast<unsigned>(it - thresholds_.begin());
}

const DecimationTable& decimation_table() {
  static const DecimationTable table;
  return table;
}

OldCiRound old_ci_round(BooleanState& x, Source& prng1, Source& prng2) {
  if (x.size() != 4) throw Error(ErrorCode::DomainError, "old CI state must have 4 cells");
  const std::uint64_t a = prng1.next();
  const unsigned m = static_cast<unsigned>(a % 2) + 13;
  for (unsigned i = 0; i < m; ++i) {
    const std::uint64_t b = prng2.next();
    x.flip(static_cast<unsigned>(b % 4));
  }
  return {x.bits(), m};
}

std::uint32_t decimation_input(std::uint64_t a, unsigned bits) noexcept {
  if (bits < 32) return static_cast<std::uint32_t>(a << (32 - bits));
  return static_cast<std::uint32_t>(a >> (bits - 32));
}

NewCiRound new_ci_round(std::uint32_t& x, Source& prng1, Source& prng2) {
  const std::uint32_t y = decimation_input(prng1.next(), prng1.bits());
  const unsigned m = g1(y);
  std::uint32_t flipped = 0;  // d-flags
  unsigned flips = 0;
  unsigned draws = 0;
  while (flips < m) {
    const auto cell = static_cast<unsigned>(prng2.next() % 32);
    ++draws;
    const std::uint32_t bit = std::uint32_t{1} << cell;
    if (flipped & bit) continue;
    x ^= bit;
    flipped |= bit;
    ++flips;
  }
  return {x, y, flips, draws};
}

std::uint32_t mixed_xor_next(std::uint32_t x, Source& prng1, Source& prng2) {
  const auto a = static_cast<std::uint32_t>(prng1.next());
  const auto b = static_cast<std::uint32_t>(prng2.next());
  return x ^ a ^ b;
}

std::uint32_t multiple_xor_next(std::uint32_t x, std::span<const std::uint32_t> words) {
  if (words.empty()) throw Error(ErrorCode::DomainError, "functional power must be >= 1");
  return x ^ kernels::active().xor_fold(words.data(), words.size());
}

CiGenerator::CiGenerator(CiKind kind, std::unique_ptr<Source> prng1, std::unique_ptr<Source> prng2,
                         std::uint32_t x0, unsigned power)
    : kind_(kind), prng1_(std::move(prng1)), prng2_(std::move(prng2)), x_(x0), power_(power) {
  if (!prng1_) throw Error(ErrorCode::InvalidSpec, "combinator needs prng1");
  switch (kind_) {
    case CiKind::Old:
    case CiKind::New:
    case CiKind::MixedXor:
      if (!prng2_) throw Error(ErrorCode::InvalidSpec, "combinator needs prng2");
      break;
    case CiKind::Xor:
      if (prng2_) throw Error(ErrorCode::InvalidSpec, "xor CI takes a single input generator");
      break;
    case CiKind::MultipleXor:
      break;
  }
  if (kind_ == CiKind::MultipleXor) {
    if (power_ == 0) throw Error(ErrorCode::DomainError, "functional power must be >= 1");
    scratch_.resize(power_);
  } else if (power_ != 1) {
    throw Error(ErrorCode::InvalidSpec, "functional power applies to multiple_xor only");
  }
  if (kind_ == CiKind::Old) x_ &= 0xF;
}

std::uint32_t CiGenerator::strategy_word() {
  auto s = static_cast<std::uint32_t>(prng1_->next());
  if (prng2_) s ^= static_cast<std::uint32_t>(prng2_->next());
  return s;
}

std::uint64_t CiGenerator::next() {
  switch (kind_) {
    case CiKind::Old: {
      BooleanState state(4, x_);
      x_ = old_ci_round(state, *prng1_, *prng2_).output;
      return x_;
    }
    case CiKind::New:
      return new_ci_round(x_, *prng1_, *prng2_).output;
    case CiKind::Xor:
      x_ = xor_ci_next(x_, static_cast<std::uint32_t>(prng1_->next()));
      return x_;
    case CiKind::MixedXor:
      x_ = mixed_xor_next(x_, *prng1_, *prng2_);
      return x_;
    case CiKind::MultipleXor:
      std::generate(scratch_.begin(), scratch_.end(), [this] { return strategy_word(); });
      x_ = multiple_xor_next(x_, scratch_);
      return x_;
  }
  return x_;
}

}  // namespace ciprng
