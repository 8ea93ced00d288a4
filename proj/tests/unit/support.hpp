#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ciprng/source.hpp"

namespace ciprng::testing {

// Replays a fixed list of values, then fails loudly.
class ReplaySource final : public Source {
 public:
  ReplaySource(std::vector<std::uint64_t> values, unsigned bits = 32) : values_(std::move(values)), bits_(bits) {}

  std::uint64_t next() override {
    if (pos_ >= values_.size()) throw std::out_of_range("ReplaySource exhausted");
    return values_[pos_++];
  }
  unsigned bits() const noexcept override { return bits_; }
  std::size_t consumed() const noexcept { return pos_; }

 private:
  std::vector<std::uint64_t> values_;
  unsigned bits_;
  std::size_t pos_ = 0;
};

class ConstantSource final : public Source {
 public:
  explicit ConstantSource(std::uint64_t value, unsigned bits = 32) : value_(value), bits_(bits) {}
  std::uint64_t next() override { return value_; }
  unsigned bits() const noexcept override { return bits_; }

 private:
  std::uint64_t value_;
  unsigned bits_;
};

// 1, 2, 3, ...
class CounterSource final : public Source {
 public:
  explicit CounterSource(unsigned bits = 32) : bits_(bits) {}
  std::uint64_t next() override { return ++n_; }
  unsigned bits() const noexcept override { return bits_; }

 private:
  std::uint64_t n_ = 0;
  unsigned bits_;
};

// mt19937 words; the library never uses it, so it is an independent stream.
class MtSource final : public Source {
 public:
  explicit MtSource(std::uint32_t seed) : rng_(seed) {}
  std::uint64_t next() override { return rng_(); }
  unsigned bits() const noexcept override { return 32; }

 private:
  std::mt19937 rng_;
};

}  // namespace ciprng::testing
