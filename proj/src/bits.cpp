#include "ciprng/bits.hpp"

#include <algorithm>

#include "ciprng/error.hpp"

namespace ciprng {
namespace {

std::uint64_t reverse_bits64(std::uint64_t v) {
  v = ((v >> 1) & 0x5555555555555555ULL) | ((v & 0x5555555555555555ULL) << 1);
  v = ((v >> 2) & 0x3333333333333333ULL) | ((v & 0x3333333333333333ULL) << 2);
  v = ((v >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((v & 0x0F0F0F0F0F0F0F0FULL) << 4);
  return __builtin_bswap64(v);
}

}  // namespace

std::uint64_t to_stream_order(std::uint64_t value, unsigned width, BitOrder order) noexcept {
  if (width == 0) return 0;
  if (width < 64) value &= (std::uint64_t{1} << width) - 1;
  if (order == BitOrder::MsbFirst) value = reverse_bits64(value) >> (64 - width);
  return value;
}

std::string_view to_string(BitOrder order) noexcept {
  return order == BitOrder::MsbFirst ? "msb" : "lsb";
}

unsigned PackingSpec::effective_width(unsigned source_bits) const noexcept {
  return zero_extend ? width : std::min(width, source_bits);
}

PackingSpec default_packing(unsigned source_bits) {
  return source_bits == 4 ? PackingSpec::nibbles() : PackingSpec::zero_extended32();
}

BitSequence::BitSequence(std::size_t nbits) : words_((nbits + 63) / 64, 0), size_(nbits) {}

BitSequence BitSequence::from_string(std::string_view bits) {
  BitSequence seq;
  seq.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const char c = bits[i];
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::MalformedFile, "bad bit character at offset " + std::to_string(i));
    }
    seq.push_back(c == '1');
  }
  return seq;
}

void BitSequence::set(std::size_t i, bool value) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  words_[i / 64] = value ? (words_[i / 64] | bit) : (words_[i / 64] & ~bit);
}

void BitSequence::push_back(bool value) {
  if (size_ % 64 == 0) words_.push_back(0);
  if (value) words_.back() |= std::uint64_t{1} << (size_ % 64);
  ++size_;
}

void BitSequence::append(std::uint64_t value, unsigned width, BitOrder order) {
  if (width == 0) return;
  value = to_stream_order(value, width, order);
  const unsigned offset = size_ % 64;
  if (offset == 0) {
    words_.push_back(value);
  } else {
    words_.back() |= value << offset;
    if (offset + width > 64) words_.push_back(value >> (64 - offset));
  }
  size_ += width;
}

std::string BitSequence::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::vector<std::uint32_t> pack_words(const BitSequence& bits, BitOrder order) {
  const std::size_t count = bits.size() / 32;
  std::vector<std::uint32_t> out(count);
  const auto words = bits.words();
  for (std::size_t i = 0; i < count; ++i) {
    auto w = static_cast<std::uint32_t>(words[i / 2] >> (32 * (i % 2)));
    if (order == BitOrder::MsbFirst) w = static_cast<std::uint32_t>(reverse_bits64(w) >> 32);
    out[i] = w;
  }
  return out;
}

BitSequence unpack_words(std::span<const std::uint32_t> words, BitOrder order) {
  BitSequence bits;
  bits.reserve(words.size() * 32);
  for (std::uint32_t w : words) bits.append(w, 32, order);
  return bits;
}

void BitCorpus::validate() const {
  if (sequences.empty() || sequences.front().empty()) {
    throw Error(ErrorCode::InsufficientData, "corpus is empty");
  }
  const std::size_t n = sequences.front().size();
  for (const auto& seq : sequences) {
    if (seq.size() != n) throw Error(ErrorCode::InvalidSpec, "corpus sequences differ in length");
  }
}

std::vector<std::uint32_t> BitCorpus::pooled_words() const {
  BitSequence all;
  std::size_t total = 0;
  for (const auto& seq : sequences) total += seq.size();
  all.reserve(total);
  for (const auto& seq : sequences) {
    const auto words = seq.words();
    for (std::size_t i = 0; i < seq.size(); i += 64) {
      const unsigned take = static_cast<unsigned>(std::min<std::size_t>(64, seq.size() - i));
      all.append(words[i / 64], take, BitOrder::LsbFirst);
    }
  }
  return pack_words(all, packing.order);
}

}  // namespace ciprng
