#include "ciprng/bitstream.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

#include "ciprng/error.hpp"

namespace ciprng {
namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_error(const fs::path& path, const std::string& what) {
  throw Error(ErrorCode::IoError, path.string() + ": " + what);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, "cannot open for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream open_for_writing(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_error(path, "cannot open for writing");
  return out;
}

}  // namespace

BitStream::BitStream(Source& source, PackingSpec packing)
    : source_(source), packing_(packing), width_(packing.effective_width(source.bits())) {
  if (width_ < 1 || width_ > 64) throw Error(ErrorCode::InvalidSpec, "packing width must lie in [1, 64]");
}

BitSequence BitStream::take(std::size_t nbits) {
  BitSequence out;
  out.reserve(nbits);
  if (pending_bits_ > 0) {
    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(pending_bits_, nbits));
    out.append(pending_, used, BitOrder::LsbFirst);
    pending_ = used < 64 ? pending_ >> used : 0;
    pending_bits_ -= used;
  }
  while (out.size() + width_ <= nbits) out.append(source_.next(), width_, packing_.order);
  const std::size_t rest = nbits - out.size();
  if (rest > 0) {
    const std::uint64_t value = to_stream_order(source_.next(), width_, packing_.order);
    out.append(value, static_cast<unsigned>(rest), BitOrder::LsbFirst);
    pending_ = value >> rest;
    pending_bits_ = width_ - static_cast<unsigned>(rest);
  }
  return out;
}

std::vector<std::uint32_t> BitStream::take_words(std::size_t count) {
  if (width_ == 32) {
    std::vector<std::uint32_t> words(count);
    if (pending_bits_ == 0) {
      // Fast path: one source value per word.
      for (auto& w : words) w = static_cast<std::uint32_t>(source_.next());
      return words;
    }
  }
  return pack_words(take(count * 32), packing_.order);
}

BitCorpus generate_corpus(Source& source, std::size_t sequences, std::size_t bits_per_sequence,
                          const PackingSpec& packing) {
  if (sequences == 0 || bits_per_sequence == 0) {
    throw Error(ErrorCode::InsufficientData, "corpus needs s >= 1 and n >= 1");
  }
  BitStream stream(source, packing);
  BitCorpus corpus;
  corpus.packing = packing;
  corpus.sequences.reserve(sequences);
  for (std::size_t i = 0; i < sequences; ++i) corpus.sequences.push_back(stream.take(bits_per_sequence));
  return corpus;
}

std::vector<std::uint32_t> generate_words(Source& source, std::size_t count, const PackingSpec& packing) {
  BitStream stream(source, packing);
  return stream.take_words(count);
}

void write_ascii_bits(const BitSequence& bits, const fs::path& path) {
  auto out = open_for_writing(path);
  const std::string text = bits.to_string();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) io_error(path, "write failed");
}

std::vector<fs::path> write_ascii_corpus(const BitCorpus& corpus, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) io_error(dir, ec.message());
  std::vector<fs::path> paths;
  for (std::size_t i = 0; i < corpus.sequences.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "seq_%03zu.txt", i);
    paths.push_back(dir / name);
    write_ascii_bits(corpus.sequences[i], paths.back());
  }
  return paths;
}

void write_binary_words(std::span<const std::uint32_t> words, const fs::path& path) {
  auto out = open_for_writing(path);
  std::vector<char> bytes(words.size() * 4);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (int b = 0; b < 4; ++b) bytes[4 * i + b] = static_cast<char>(words[i] >> (8 * b));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) io_error(path, "write failed");
}

BitSequence read_ascii_bits(const fs::path& path) {
  std::string text = slurp(path);
  if (!text.empty() && text.back() == '\n') text.pop_back();
  if (!text.empty() && text.back() == '\r') text.pop_back();
  BitSequence bits;
  bits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '0' && c != '1') {
      char hex[8];
      std::snprintf(hex, sizeof(hex), "0x%02x", static_cast<unsigned char>(c));
      throw Error(ErrorCode::MalformedFile,
                  path.string() + ": byte " + hex + " at offset " + std::to_string(i) + " is not '0' or '1'");
    }
    bits.push_back(c == '1');
  }
  return bits;
}

std::vector<std::uint32_t> read_binary_words(const fs::path& path) {
  const std::string bytes = slurp(path);
  if (bytes.size() % 4 != 0) {
    throw Error(ErrorCode::MalformedFile, path.string() + ": truncated word at offset " +
                                              std::to_string(bytes.size() - bytes.size() % 4));
  }
  std::vector<std::uint32_t> words(bytes.size() / 4);
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::uint32_t w = 0;
    for (int b = 0; b < 4; ++b) w |= std::uint32_t{static_cast<unsigned char>(bytes[4 * i + b])} << (8 * b);
    words[i] = w;
  }
  return words;
}

BitCorpus read_corpus(const fs::path& path, const PackingSpec& packing) {
  BitCorpus corpus;
  corpus.packing = packing;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      const auto name = entry.path().filename().string();
      if (entry.is_regular_file() && name.starts_with("seq_") && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) corpus.sequences.push_back(read_ascii_bits(f));
  } else if (path.extension() == ".bin") {
    corpus.sequences.push_back(unpack_words(read_binary_words(path), packing.order));
  } else {
    corpus.sequences.push_back(read_ascii_bits(path));
  }
  corpus.validate();
  return corpus;
}

}  // namespace ciprng
