#pragma once

// Classical PRNG recurrences: LCG, MRG, AWC, SWB, SWC, GFSR, INV and xor
// combinations of them. Every generator is a pure step function over an
// explicit GeneratorState; Generator wraps the pair as a Source.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ciprng/source.hpp"

namespace ciprng {

enum class Family { Lcg, Mrg, Awc, Swb, Swc, Gfsr, Inv, Combined };

std::string_view to_string(Family family) noexcept;

struct GeneratorSpec {
  Family family = Family::Lcg;

  // LCG, MRG, AWC, SWB, INV. AWC/SWB accept moduli up to 2^62.
  std::uint64_t modulus = 0;

  // LCG {a}; MRG {a1..ak} (signed, |ai| < m); SWC {a1..ar}; INV {a1, a2}.
  std::vector<std::int64_t> multipliers;

  std::uint64_t increment = 0;  // LCG only

  // AWC/SWB use r > s >= 1; GFSR uses r > k >= 1.
  unsigned lag_r = 0;
  unsigned lag_s = 0;
  unsigned lag_k = 0;

  unsigned word_width = 0;  // SWC, GFSR

  std::vector<GeneratorSpec> components;  // COMBINED: 2 or 3 entries

  // Optional seed carried by a COMBINED component; empty means "derive".
  std::vector<std::uint64_t> seed;
};

struct GeneratorState {
  // Ring of previous values. lag(i) == x^{n-i} for i in [1, lags.size()].
  // INV keeps z^{n-1} as lag(1).
  std::vector<std::uint64_t> lags;
  std::size_t head = 0;
  std::uint64_t carry = 0;
  std::vector<GeneratorState> components;

  std::uint64_t lag(std::size_t i) const noexcept {
    return lags[(head + i - 1) % lags.size()];
  }

  // Pushes x^n, dropping the oldest entry.
  void push(std::uint64_t value) noexcept {
    head = (head == 0 ? lags.size() : head) - 1;
    lags[head] = value;
  }

  /// Logical equality: compares lag windows, not ring positions.
  friend bool operator==(const GeneratorState& lhs, const GeneratorState& rhs);
};

/// Throws Error(InvalidSpec) when the parameters break the family's invariants.
void validate(const GeneratorSpec& spec);

/// Width of the output range: values lie in [0, 2^output_bits).
unsigned output_bits(const GeneratorSpec& spec);

/// Exclusive upper bound of step() outputs (m, or 2^w for SWC/GFSR).
/// For COMBINED this is 2^output_bits.
std::uint64_t output_bound(const GeneratorSpec& spec);

/// Number of lag-buffer entries seeded for a non-combined family.
std::size_t state_length(const GeneratorSpec& spec);

/// Builds a state from seed material. Values are reduced mod m element-wise;
/// if the material is shorter than the buffer the tail is expanded with
/// std::seed_seq. Throws AllZeroSeed when the result is an absorbing zero state.
GeneratorState seed(const GeneratorSpec& spec, std::span<const std::uint64_t> seed_material);

/// Seed material used for COMBINED component `index` when it carries none.
std::vector<std::uint64_t> component_seed(std::span<const std::uint64_t> seed_material,
                                          std::size_t index);

/// Advances the state by one application of the recurrence and returns x^n.
std::uint64_t step(const GeneratorSpec& spec, GeneratorState& state);

/// Modular inverse for prime m, computed as z^(m-2) mod m.
std::uint64_t inverse_mod_prime(std::uint64_t z, std::uint64_t m);

bool is_prime(std::uint64_t n);

namespace presets {

GeneratorSpec minstd();  // a=16807, c=0, m=2^31-1
GeneratorSpec mrg5();    // order 5, m=2^31-1, a = {107374182, 0, 0, 0, 104480}
GeneratorSpec awc();     // m=2^32, (r, s) = (24, 10)
GeneratorSpec swb();     // m=2^32, (r, s) = (24, 10)
GeneratorSpec swc();     // w=32, r=2, a = {1812433253, 1566083941}
GeneratorSpec r250();    // GFSR (r, k) = (250, 103), w=32
GeneratorSpec inv();     // m=2^31-1, a1 = a2 = 1
GeneratorSpec lcg2();    // (40014, 2147483563) xor (40692, 2147483399)
GeneratorSpec lcg3();    // lcg2 xor (48271, 2^31-1)
GeneratorSpec mrg2();    // the two MRG31k3p components, xored

GeneratorSpec for_family(Family family);

}  // namespace presets

class Generator final : public Source {
 public:
  Generator(GeneratorSpec spec, std::span<const std::uint64_t> seed_material);

  std::uint64_t next() override { return step(spec_, state_); }
  unsigned bits() const noexcept override { return bits_; }

  const GeneratorSpec& spec() const noexcept { return spec_; }
  const GeneratorState& state() const noexcept { return state_; }

 private:
  GeneratorSpec spec_;
  GeneratorState state_;
  unsigned bits_;
};

}  // namespace ciprng
