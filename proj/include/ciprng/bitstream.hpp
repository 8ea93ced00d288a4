#pragma once

// Turning generator output into bit corpora and word streams, and the two
// interchange formats:
//   ASCII  - one '0' / '1' byte per bit, no separators or trailing newline
//            (the NIST STS ASCII input convention);
//   binary - consecutive 32-bit words, little-endian (dieharder raw input).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ciprng/bits.hpp"
#include "ciprng/source.hpp"

namespace ciprng {

/// Continuous bit stream over a source. Bits of a source value that do not
/// fit the current request are kept for the next one, so consecutive take()
/// calls partition the stream without dropping bits.
class BitStream {
 public:
  BitStream(Source& source, PackingSpec packing);

  BitSequence take(std::size_t nbits);

  /// Next `count` 32-bit words regrouped from the stream in packing order.
  std::vector<std::uint32_t> take_words(std::size_t count);

  unsigned width() const noexcept { return width_; }

 private:
  Source& source_;
  PackingSpec packing_;
  unsigned width_;
  std::uint64_t pending_ = 0;  // stream-order leftover bits
  unsigned pending_bits_ = 0;
};

/// s sequences of n bits drawn from consecutive source outputs (no reseeding).
BitCorpus generate_corpus(Source& source, std::size_t sequences, std::size_t bits_per_sequence,
                          const PackingSpec& packing);

std::vector<std::uint32_t> generate_words(Source& source, std::size_t count, const PackingSpec& packing);

void write_ascii_bits(const BitSequence& bits, const std::filesystem::path& path);

/// Writes dir/seq_000.txt, dir/seq_001.txt, ... and returns the paths in order.
std::vector<std::filesystem::path> write_ascii_corpus(const BitCorpus& corpus, const std::filesystem::path& dir);

void write_binary_words(std::span<const std::uint32_t> words, const std::filesystem::path& path);

/// Throws IoError when unreadable, MalformedFile with the offset of the first
/// byte that is not '0' or '1' (a single trailing newline is accepted).
BitSequence read_ascii_bits(const std::filesystem::path& path);

/// Throws MalformedFile when the size is not a multiple of 4.
std::vector<std::uint32_t> read_binary_words(const std::filesystem::path& path);

/// A directory of seq_*.txt files, a single .txt file, or a .bin word file
/// (one sequence, words unpacked in packing.order).
BitCorpus read_corpus(const std::filesystem::path& path, const PackingSpec& packing = {});

}  // namespace ciprng
