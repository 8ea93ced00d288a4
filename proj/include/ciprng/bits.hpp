#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ciprng {

enum class BitOrder { MsbFirst, LsbFirst };

std::string_view to_string(BitOrder order) noexcept;

/// How source outputs become bits. Each output contributes its low `width`
/// bits to one continuous stream, in `order`. A width above the source's
/// natural width zero-extends (the default 32 keeps the stuck top bit of a
/// 31-bit generator); zero_extend = false clamps width to the natural width,
/// i.e. dense packing.
struct PackingSpec {
  unsigned width = 32;
  BitOrder order = BitOrder::MsbFirst;
  bool zero_extend = true;

  unsigned effective_width(unsigned source_bits) const noexcept;

  static PackingSpec zero_extended32() { return {32, BitOrder::MsbFirst, true}; }
  static PackingSpec truncate31() { return {31, BitOrder::MsbFirst, true}; }
  /// Four-bit CI words packed low nibble first.
  static PackingSpec nibbles() { return {4, BitOrder::LsbFirst, true}; }

  friend bool operator==(const PackingSpec&, const PackingSpec&) = default;
};

/// Default packing for a source of the given natural width: nibble packing for
/// 4-bit sources, 32-bit zero-extended words otherwise.
PackingSpec default_packing(unsigned source_bits);

/// The low `width` bits of value, rearranged so that bit 0 is the first bit
/// emitted in `order`.
std::uint64_t to_stream_order(std::uint64_t value, unsigned width, BitOrder order) noexcept;

/// A packed bit vector; bit i is stored in words()[i / 64] at position i % 64.
/// Bits past size() in the last word are always zero.
class BitSequence {
 public:
  BitSequence() = default;
  explicit BitSequence(std::size_t nbits);

  static BitSequence from_string(std::string_view bits);  // '0' / '1' characters

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i, bool value) noexcept;
  void push_back(bool value);

  /// Appends the low `width` bits of value (width <= 64) in the given order.
  void append(std::uint64_t value, unsigned width, BitOrder order);

  void reserve(std::size_t nbits) { words_.reserve((nbits + 63) / 64); }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  std::string to_string() const;

  friend bool operator==(const BitSequence&, const BitSequence&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Groups consecutive bits into 32-bit words (the first bit becomes the MSB for
/// MsbFirst, the LSB for LsbFirst). Trailing bits that do not fill a word are dropped.
std::vector<std::uint32_t> pack_words(const BitSequence& bits, BitOrder order);

BitSequence unpack_words(std::span<const std::uint32_t> words, BitOrder order);

/// s sequences of n bits each plus the packing they were produced with.
struct BitCorpus {
  std::vector<BitSequence> sequences;
  PackingSpec packing;

  std::size_t sequence_count() const noexcept { return sequences.size(); }
  std::size_t sequence_length() const noexcept { return sequences.empty() ? 0 : sequences.front().size(); }

  /// Throws InsufficientData when empty, InvalidSpec when lengths differ.
  void validate() const;

  /// All sequences concatenated and regrouped into 32-bit words.
  std::vector<std::uint32_t> pooled_words() const;

  friend bool operator==(const BitCorpus&, const BitCorpus&) = default;
};

}  // namespace ciprng
