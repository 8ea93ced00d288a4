// Compiled with -mavx2 -mpopcnt. Only reached through kernels::avx2(), which
// checks the CPU first.

#include <immintrin.h>

#include <algorithm>
#include <cstring>

#include "ciprng/kernels.hpp"

namespace ciprng::kernels {
namespace {

inline __m256i nibble_popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::uint64_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

std::uint64_t popcount_avx2(const std::uint64_t* words, std::size_t count) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(nibble_popcount_bytes(v), _mm256_setzero_si256()));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < count; ++i) total += static_cast<std::uint64_t>(_mm_popcnt_u64(words[i]));
  return total;
}

std::uint64_t transitions_avx2(const std::uint64_t* words, std::size_t nbits) {
  if (nbits < 2) return 0;
  // Word j is "full" when all 64 comparisons starting in it are in range,
  // which also guarantees that word j + 1 exists.
  const std::size_t full = (nbits - 1) / 64;
  __m256i acc = _mm256_setzero_si256();
  std::size_t j = 0;
  for (; j + 4 <= full; j += 4) {
    const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + j));
    const __m256i nxt = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + j + 1));
    const __m256i shifted = _mm256_or_si256(_mm256_srli_epi64(cur, 1), _mm256_slli_epi64(nxt, 63));
    const __m256i diff = _mm256_xor_si256(cur, shifted);
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(nibble_popcount_bytes(diff), _mm256_setzero_si256()));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; j < full; ++j) {
    const std::uint64_t shifted = (words[j] >> 1) | (words[j + 1] << 63);
    total += static_cast<std::uint64_t>(_mm_popcnt_u64(words[j] ^ shifted));
  }
  // Remaining comparisons i in [64 * full, nbits - 1) all start in word `full`.
  const std::size_t remaining = nbits - 1 - 64 * full;
  if (remaining > 0) {
    const std::uint64_t cur = words[full];
    std::uint64_t shifted = cur >> 1;
    // Comparison 63 of this word needs the next word, which exists only when
    // nbits reaches past it; remaining <= 63 keeps us inside the word.
    const std::uint64_t diff = (cur ^ shifted) & ((std::uint64_t{1} << remaining) - 1);
    total += static_cast<std::uint64_t>(_mm_popcnt_u64(diff));
  }
  return total;
}

std::uint32_t range_popcount(const std::uint64_t* words, std::size_t begin, std::size_t end) {
  std::uint32_t ones = 0;
  while (begin < end) {
    const std::size_t word = begin / 64;
    const unsigned offset = begin % 64;
    const std::size_t take = std::min<std::size_t>(64 - offset, end - begin);
    std::uint64_t chunk = words[word] >> offset;
    if (take < 64) chunk &= (std::uint64_t{1} << take) - 1;
    ones += static_cast<std::uint32_t>(_mm_popcnt_u64(chunk));
    begin += take;
  }
  return ones;
}

void block_popcounts_avx2(const std::uint64_t* words, std::size_t nbits, std::size_t block,
                          std::uint32_t* out) {
  const std::size_t blocks = nbits / block;
  if (block % 64 != 0) {
    for (std::size_t b = 0; b < blocks; ++b) out[b] = range_popcount(words, b * block, (b + 1) * block);
    return;
  }
  const std::size_t per = block / 64;
  if (per >= 8) {
    for (std::size_t b = 0; b < blocks; ++b) out[b] = static_cast<std::uint32_t>(popcount_avx2(words + b * per, per));
    return;
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint32_t ones = 0;
    for (std::size_t k = 0; k < per; ++k) ones += static_cast<std::uint32_t>(_mm_popcnt_u64(words[b * per + k]));
    out[b] = ones;
  }
}

std::uint32_t xor_fold_avx2(const std::uint32_t* words, std::size_t count) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    acc = _mm256_xor_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i)));
  }
  __m128i x = _mm_xor_si128(_mm256_castsi256_si128(acc), _mm256_extracti128_si256(acc, 1));
  x = _mm_xor_si128(x, _mm_shuffle_epi32(x, _MM_SHUFFLE(1, 0, 3, 2)));
  x = _mm_xor_si128(x, _mm_shuffle_epi32(x, _MM_SHUFFLE(2, 3, 0, 1)));
  auto folded = static_cast<std::uint32_t>(_mm_cvtsi128_si32(x));
  for (; i < count; ++i) folded ^= words[i];
  return folded;
}

void byte_letters_avx2(const std::uint8_t* bytes, std::size_t count, std::uint8_t* letters) {
  const __m256i two = _mm256_set1_epi8(2);
  const __m256i six = _mm256_set1_epi8(6);
  std::size_t i = 0;
  for (; i + 32 <= count; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bytes + i));
    __m256i pc = nibble_popcount_bytes(v);
    pc = _mm256_min_epu8(_mm256_max_epu8(pc, two), six);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(letters + i), _mm256_sub_epi8(pc, two));
  }
  for (; i < count; ++i) {
    const int pc = _mm_popcnt_u32(bytes[i]);
    letters[i] = static_cast<std::uint8_t>(std::clamp(pc, 2, 6) - 2);
  }
}

// Column sweep over all 32 rows at once. Rows holding the current column bit
// are xored with the pivot row; the pivot itself cancels to zero and drops out.
unsigned gf2_rank32_avx2(const std::uint32_t* rows) {
  alignas(32) std::uint32_t m[32];
  std::memcpy(m, rows, sizeof(m));
  unsigned rank = 0;
  for (int col = 31; col >= 0; --col) {
    __m256i r[4];
    std::uint32_t has_bit = 0;
    for (int q = 0; q < 4; ++q) {
      r[q] = _mm256_load_si256(reinterpret_cast<const __m256i*>(m + 8 * q));
      const __m256i at_sign = _mm256_slli_epi32(r[q], 31 - col);
      has_bit |= static_cast<std::uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(at_sign))) << (8 * q);
    }
    if (has_bit == 0) continue;
    const __m256i pivot = _mm256_set1_epi32(static_cast<int>(m[__builtin_ctz(has_bit)]));
    for (int q = 0; q < 4; ++q) {
      const __m256i select = _mm256_srai_epi32(_mm256_slli_epi32(r[q], 31 - col), 31);
      r[q] = _mm256_xor_si256(r[q], _mm256_and_si256(select, pivot));
      _mm256_store_si256(reinterpret_cast<__m256i*>(m + 8 * q), r[q]);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{
    "avx2",        popcount_avx2,     transitions_avx2, block_popcounts_avx2,
    xor_fold_avx2, byte_letters_avx2, gf2_rank32_avx2,
};

}  // namespace ciprng::kernels
