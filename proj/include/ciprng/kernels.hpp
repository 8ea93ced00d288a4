#pragma once

// Data-parallel inner loops of the statistical tests. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant selected at runtime.
// Both variants must return identical results for identical input.
//
// Bit layout shared by every kernel: bit i of a packed sequence lives in
// words[i / 64] at position i % 64.

#include <cstddef>
#include <cstdint>

namespace ciprng::kernels {

struct KernelTable {
  const char* name;

  /// Number of set bits in words[0, count).
  std::uint64_t (*popcount)(const std::uint64_t* words, std::size_t count);

  /// Number of i in [0, nbits - 1) with bit i != bit i + 1. Bits at or beyond
  /// nbits are ignored.
  std::uint64_t (*transitions)(const std::uint64_t* words, std::size_t nbits);

  /// out[b] = ones in bits [b * block, (b + 1) * block) for b < nbits / block.
  void (*block_popcounts)(const std::uint64_t* words, std::size_t nbits, std::size_t block,
                          std::uint32_t* out);

  std::uint32_t (*xor_fold)(const std::uint32_t* words, std::size_t count);

  /// letters[i] = class of popcount(bytes[i]): 0-2 -> 0, 3 -> 1, 4 -> 2, 5 -> 3, 6-8 -> 4.
  void (*byte_letters)(const std::uint8_t* bytes, std::size_t count, std::uint8_t* letters);

  /// Rank over GF(2) of the 32x32 matrix whose rows are rows[0..31].
  unsigned (*gf2_rank32)(const std::uint32_t* rows);
};

const KernelTable& scalar();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2();

/// Best available table. Setting CIPRNG_KERNELS=scalar forces the reference path.
const KernelTable& active();

}  // namespace ciprng::kernels
