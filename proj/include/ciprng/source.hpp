#pragma once

#include <cstdint>

namespace ciprng {

/// A stateful stream of unsigned integers, each carrying bits() significant
/// low-order bits. Generators and CI combinators both expose this surface.
class Source {
 public:
  virtual ~Source() = default;

  virtual std::uint64_t next() = 0;

  /// Natural output width in bits; every value returned by next() is < 2^bits().
  virtual unsigned bits() const noexcept = 0;
};

}  // namespace ciprng
