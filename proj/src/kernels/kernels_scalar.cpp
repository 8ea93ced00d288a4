#include <algorithm>
#include <array>
#include <bit>
#include <utility>

#include "ciprng/kernels.hpp"

namespace ciprng::kernels {
namespace {

std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t count) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
  return total;
}

bool bit_at(const std::uint64_t* words, std::size_t i) { return (words[i / 64] >> (i % 64)) & 1; }

std::uint64_t transitions_scalar(const std::uint64_t* words, std::size_t nbits) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i + 1 < nbits; ++i) count += bit_at(words, i) != bit_at(words, i + 1);
  return count;
}

// Ones in bits [begin, end).
std::uint32_t range_popcount(const std::uint64_t* words, std::size_t begin, std::size_t end) {
  std::uint32_t ones = 0;
  while (begin < end) {
    const std::size_t word = begin / 64;
    const unsigned offset = begin % 64;
    const std::size_t take = std::min<std::size_t>(64 - offset, end - begin);
    std::uint64_t chunk = words[word] >> offset;
    if (take < 64) chunk &= (std::uint64_t{1} << take) - 1;
    ones += static_cast<std::uint32_t>(std::popcount(chunk));
    begin += take;
  }
  return ones;
}

void block_popcounts_scalar(const std::uint64_t* words, std::size_t nbits, std::size_t block,
                            std::uint32_t* out) {
  const std::size_t blocks = nbits / block;
  for (std::size_t b = 0; b < blocks; ++b) out[b] = range_popcount(words, b * block, (b + 1) * block);
}

std::uint32_t xor_fold_scalar(const std::uint32_t* words, std::size_t count) {
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < count; ++i) acc ^= words[i];
  return acc;
}

constexpr std::array<std::uint8_t, 9> kLetterOfPopcount = {0, 0, 0, 1, 2, 3, 4, 4, 4};

void byte_letters_scalar(const std::uint8_t* bytes, std::size_t count, std::uint8_t* letters) {
  for (std::size_t i = 0; i < count; ++i) letters[i] = kLetterOfPopcount[std::popcount(bytes[i])];
}

// Textbook elimination with row swaps.
unsigned gf2_rank32_scalar(const std::uint32_t* rows) {
  std::array<std::uint32_t, 32> m{};
  std::copy(rows, rows + 32, m.begin());
  unsigned rank = 0;
  for (int col = 31; col >= 0 && rank < 32; --col) {
    const std::uint32_t bit = std::uint32_t{1} << col;
    unsigned pivot = rank;
    while (pivot < 32 && !(m[pivot] & bit)) ++pivot;
    if (pivot == 32) continue;
    std::swap(m[rank], m[pivot]);
    for (unsigned r = rank + 1; r < 32; ++r) {
      if (m[r] & bit) m[r] ^= m[rank];
    }
    ++rank;
  }
  return rank;
}

constexpr KernelTable kScalar{
    "scalar",         popcount_scalar,     transitions_scalar, block_popcounts_scalar,
    xor_fold_scalar,  byte_letters_scalar, gf2_rank32_scalar,
};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace ciprng::kernels
