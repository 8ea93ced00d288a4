#include "ciprng/generators.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>
#include <utility>

#include "ciprng/error.hpp"

namespace ciprng {
namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::uint64_t kMersenne31 = (std::uint64_t{1} << 31) - 1;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); }

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m <= (std::uint64_t{1} << 32)) return (a * b) % m;  // a, b < m, product fits
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t width_mask(unsigned w) { return w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1; }

// Reduction applied to seed material before it enters the lag buffer.
std::uint64_t reduce(const GeneratorSpec& spec, std::uint64_t v) {
  switch (spec.family) {
    case Family::Swc:
    case Family::Gfsr: return v & width_mask(spec.word_width);
    default: return v % spec.modulus;
  }
}

// Families for which the all-zero state maps to itself.
bool zero_is_absorbing(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Lcg: return spec.increment == 0;
    case Family::Mrg:
    case Family::Awc:
    case Family::Swb:
    case Family::Swc:
    case Family::Gfsr: return true;
    default: return false;
  }
}

std::uint64_t step_lcg(const GeneratorSpec& spec, GeneratorState& s) {
  const std::uint64_t m = spec.modulus;
  const auto a = static_cast<std::uint64_t>(spec.multipliers[0]);
  std::uint64_t x;
  if (m <= (std::uint64_t{1} << 32)) {
    x = (a * s.lags[0] + spec.increment) % m;
  } else {
    x = static_cast<std::uint64_t>((static_cast<u128>(a) * s.lags[0] + spec.increment) % m);
  }
  s.lags[0] = x;
  return x;
}

std::uint64_t step_mrg(const GeneratorSpec& spec, GeneratorState& s) {
  const auto m = static_cast<i128>(spec.modulus);
  i128 acc = 0;
  for (std::size_t i = 0; i < spec.multipliers.size(); ++i) {
    const std::int64_t a = spec.multipliers[i];
    if (a == 0) continue;
    acc += static_cast<i128>(a) * static_cast<i128>(s.lag(i + 1));
    acc %= m;
  }
  if (acc < 0) acc += m;
  const auto x = static_cast<std::uint64_t>(acc);
  s.push(x);
  return x;
}

std::uint64_t step_awc(const GeneratorSpec& spec, GeneratorState& s) {
  const std::uint64_t t = s.lag(spec.lag_r) + s.lag(spec.lag_s) + s.carry;
  const std::uint64_t x = t % spec.modulus;
  s.carry = t / spec.modulus;
  s.push(x);
  return x;
}

std::uint64_t step_swb(const GeneratorSpec& spec, GeneratorState& s) {
  const std::int64_t t = static_cast<std::int64_t>(s.lag(spec.lag_r)) -
                         static_cast<std::int64_t>(s.lag(spec.lag_s)) -
                         static_cast<std::int64_t>(s.carry);
  std::uint64_t x;
  if (t < 0) {
    x = static_cast<std::uint64_t>(t + static_cast<std::int64_t>(spec.modulus));
    s.carry = 1;
  } else {
    x = static_cast<std::uint64_t>(t);
    s.carry = 0;
  }
  s.push(x);
  return x;
}

// Products are taken at full width and combined with xor; the low w bits are
// the output and the bits above w become the next carry.
std::uint64_t step_swc(const GeneratorSpec& spec, GeneratorState& s) {
  std::uint64_t v = s.carry;
  for (std::size_t i = 0; i < spec.multipliers.size(); ++i) {
    v ^= static_cast<std::uint64_t>(spec.multipliers[i]) * s.lag(i + 1);
  }
  const std::uint64_t x = v & width_mask(spec.word_width);
  s.carry = v >> spec.word_width;
  s.push(x);
  return x;
}

std::uint64_t step_gfsr(const GeneratorSpec& spec, GeneratorState& s) {
  const std::uint64_t x = s.lag(spec.lag_r) ^ s.lag(spec.lag_k);
  s.push(x);
  return x;
}

std::uint64_t step_inv(const GeneratorSpec& spec, GeneratorState& s) {
  const std::uint64_t m = spec.modulus;
  const auto a1 = static_cast<std::uint64_t>(spec.multipliers[0]);
  const auto a2 = static_cast<std::uint64_t>(spec.multipliers[1]);
  const std::uint64_t z = s.lags[0];
  std::uint64_t x = a1;
  if (z != 0) {
    x = (a1 + mul_mod(a2, inverse_mod_prime(z, m), m)) % m;
  }
  s.lags[0] = x;
  return x;
}

GeneratorSpec lcg(std::int64_t a, std::uint64_t m) {
  GeneratorSpec spec;
  spec.family = Family::Lcg;
  spec.multipliers = {a};
  spec.modulus = m;
  return spec;
}

GeneratorSpec mrg(std::vector<std::int64_t> a, std::uint64_t m) {
  GeneratorSpec spec;
  spec.family = Family::Mrg;
  spec.multipliers = std::move(a);
  spec.modulus = m;
  return spec;
}

GeneratorSpec combined(std::vector<GeneratorSpec> parts) {
  GeneratorSpec spec;
  spec.family = Family::Combined;
  spec.components = std::move(parts);
  return spec;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Lcg: return "lcg";
    case Family::Mrg: return "mrg";
    case Family::Awc: return "awc";
    case Family::Swb: return "swb";
    case Family::Swc: return "swc";
    case Family::Gfsr: return "gfsr";
    case Family::Inv: return "inv";
    case Family::Combined: return "combined";
  }
  return "unknown";
}

bool operator==(const GeneratorState& lhs, const GeneratorState& rhs) {
  if (lhs.lags.size() != rhs.lags.size() || lhs.carry != rhs.carry ||
      lhs.components != rhs.components) {
    return false;
  }
  for (std::size_t i = 1; i <= lhs.lags.size(); ++i) {
    if (lhs.lag(i) != rhs.lag(i)) return false;
  }
  return true;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic for all 64-bit n with these bases.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t inverse_mod_prime(std::uint64_t z, std::uint64_t m) {
  if (z % m == 0) throw Error(ErrorCode::DomainError, "zero has no inverse");
  return pow_mod(z, m - 2, m);
}

void validate(const GeneratorSpec& spec) {
  const auto& a = spec.multipliers;
  switch (spec.family) {
    case Family::Lcg:
      if (spec.modulus < 2) invalid("lcg: modulus must be >= 2");
      if (a.size() != 1) invalid("lcg: exactly one multiplier required");
      if (a[0] <= 0 || static_cast<std::uint64_t>(a[0]) >= spec.modulus) invalid("lcg: need 0 < a < m");
      if (spec.increment >= spec.modulus) invalid("lcg: need c < m");
      break;
    case Family::Mrg:
      if (spec.modulus < 2) invalid("mrg: modulus must be >= 2");
      if (spec.modulus > (std::uint64_t{1} << 63)) invalid("mrg: modulus above 2^63");
      if (a.empty()) invalid("mrg: order k must be >= 1");
      if (std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; })) {
        invalid("mrg: all multipliers are zero");
      }
      for (std::int64_t v : a) {
        const std::uint64_t mag = v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
        if (mag >= spec.modulus) invalid("mrg: need |a_i| < m");
      }
      break;
    case Family::Awc:
    case Family::Swb:
      if (spec.modulus < 2 || spec.modulus > (std::uint64_t{1} << 62)) invalid("awc/swb: modulus must lie in [2, 2^62]");
      if (!(spec.lag_r > spec.lag_s && spec.lag_s >= 1)) invalid("awc/swb: lags must satisfy r > s >= 1");
      break;
    case Family::Swc:
      if (spec.word_width < 1 || spec.word_width > 32) invalid("swc: word width must lie in [1, 32]");
      if (a.empty()) invalid("swc: at least one multiplier required");
      for (std::int64_t v : a) {
        if (v <= 0 || static_cast<std::uint64_t>(v) > width_mask(spec.word_width)) invalid("swc: need 0 < a_i < 2^w");
      }
      break;
    case Family::Gfsr:
      if (spec.word_width < 1 || spec.word_width > 64) invalid("gfsr: word width must lie in [1, 64]");
      if (!(spec.lag_r > spec.lag_k && spec.lag_k >= 1)) invalid("gfsr: lags must satisfy r > k >= 1");
      break;
    case Family::Inv:
      if (!is_prime(spec.modulus)) invalid("inv: modulus must be prime");
      if (a.size() != 2) invalid("inv: exactly two multipliers (a1, a2) required");
      for (std::int64_t v : a) {
        if (v < 0 || static_cast<std::uint64_t>(v) >= spec.modulus) invalid("inv: need 0 <= a_i < m");
      }
      break;
    case Family::Combined:
      if (spec.components.size() < 2 || spec.components.size() > 3) invalid("combined: needs 2 or 3 components");
      for (const auto& c : spec.components) {
        if (c.family == Family::Combined) invalid("combined: components cannot be combined themselves");
        validate(c);
      }
      break;
  }
}

unsigned output_bits(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Swc:
    case Family::Gfsr: return spec.word_width;
    case Family::Combined: {
      unsigned bits = 0;
      for (const auto& c : spec.components) bits = std::max(bits, output_bits(c));
      return bits;
    }
    default: return static_cast<unsigned>(std::bit_width(spec.modulus - 1));
  }
}

std::uint64_t output_bound(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Swc:
    case Family::Gfsr:
    case Family::Combined: {
      const unsigned w = output_bits(spec);
      return w >= 64 ? ~std::uint64_t{0} : std::uint64_t{1} << w;
    }
    default: return spec.modulus;
  }
}

std::size_t state_length(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Lcg:
    case Family::Inv: return 1;
    case Family::Mrg:
    case Family::Swc: return spec.multipliers.size();
    case Family::Awc:
    case Family::Swb:
    case Family::Gfsr: return spec.lag_r;
    case Family::Combined: return 0;
  }
  return 0;
}

std::vector<std::uint64_t> component_seed(std::span<const std::uint64_t> seed_material,
                                          std::size_t index) {
  std::vector<std::uint32_t> words;
  for (std::uint64_t v : seed_material) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  }
  words.push_back(static_cast<std::uint32_t>(index));
  std::seed_seq seq(words.begin(), words.end());
  std::vector<std::uint32_t> out(4);
  seq.generate(out.begin(), out.end());
  return {(std::uint64_t{out[0]} << 32) | out[1], (std::uint64_t{out[2]} << 32) | out[3]};
}

GeneratorState seed(const GeneratorSpec& spec, std::span<const std::uint64_t> seed_material) {
  validate(spec);
  if (seed_material.empty()) throw Error(ErrorCode::InvalidSpec, "seed material is empty");

  GeneratorState state;
  if (spec.family == Family::Combined) {
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
      const auto& c = spec.components[i];
      if (!c.seed.empty()) {
        state.components.push_back(seed(c, c.seed));
      } else {
        state.components.push_back(seed(c, component_seed(seed_material, i)));
      }
    }
    return state;
  }

  const std::size_t len = state_length(spec);
  state.lags.resize(len);
  const std::size_t direct = std::min(len, seed_material.size());
  for (std::size_t i = 0; i < direct; ++i) state.lags[i] = reduce(spec, seed_material[i]);
  if (direct < len) {
    std::vector<std::uint32_t> words;
    for (std::uint64_t v : seed_material) {
      words.push_back(static_cast<std::uint32_t>(v));
      words.push_back(static_cast<std::uint32_t>(v >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    std::vector<std::uint32_t> expanded(2 * (len - direct));
    seq.generate(expanded.begin(), expanded.end());
    for (std::size_t i = direct; i < len; ++i) {
      const std::size_t j = 2 * (i - direct);
      state.lags[i] = reduce(spec, (std::uint64_t{expanded[j]} << 32) | expanded[j + 1]);
    }
  }

  if (zero_is_absorbing(spec) &&
      std::all_of(state.lags.begin(), state.lags.end(), [](std::uint64_t v) { return v == 0; })) {
    throw Error(ErrorCode::AllZeroSeed, std::string(to_string(spec.family)) + ": all-zero state is a fixed point");
  }
  return state;
}

std::uint64_t step(const GeneratorSpec& spec, GeneratorState& state) {
  switch (spec.family) {
    case Family::Lcg: return step_lcg(spec, state);
    case Family::Mrg: return step_mrg(spec, state);
    case Family::Awc: return step_awc(spec, state);
    case Family::Swb: return step_swb(spec, state);
    case Family::Swc: return step_swc(spec, state);
    case Family::Gfsr: return step_gfsr(spec, state);
    case Family::Inv: return step_inv(spec, state);
    case Family::Combined: {
      std::uint64_t out = 0;
      for (std::size_t i = 0; i < spec.components.size(); ++i) {
        out ^= step(spec.components[i], state.components[i]);
      }
      return out;
    }
  }
  return 0;
}

namespace presets {

GeneratorSpec minstd() { return lcg(16807, kMersenne31); }

GeneratorSpec mrg5() { return mrg({107374182, 0, 0, 0, 104480}, kMersenne31); }

GeneratorSpec awc() {
  GeneratorSpec spec;
  spec.family = Family::Awc;
  spec.modulus = std::uint64_t{1} << 32;
  spec.lag_r = 24;
  spec.lag_s = 10;
  return spec;
}

GeneratorSpec swb() {
  GeneratorSpec spec = awc();
  spec.family = Family::Swb;
  return spec;
}

GeneratorSpec swc() {
  GeneratorSpec spec;
  spec.family = Family::Swc;
  spec.word_width = 32;
  spec.multipliers = {1812433253, 1566083941};
  return spec;
}

GeneratorSpec r250() {
  GeneratorSpec spec;
  spec.family = Family::Gfsr;
  spec.word_width = 32;
  spec.lag_r = 250;
  spec.lag_k = 103;
  return spec;
}

GeneratorSpec inv() {
  GeneratorSpec spec;
  spec.family = Family::Inv;
  spec.modulus = kMersenne31;
  spec.multipliers = {1, 1};
  return spec;
}

GeneratorSpec lcg2() { return combined({lcg(40014, 2147483563), lcg(40692, 2147483399)}); }

GeneratorSpec lcg3() {
  return combined({lcg(40014, 2147483563), lcg(40692, 2147483399), lcg(48271, kMersenne31)});
}

GeneratorSpec mrg2() {
  return combined({mrg({0, 4194304, 129}, kMersenne31), mrg({32768, 0, 32769}, 2147462579)});
}

GeneratorSpec for_family(Family family) {
  switch (family) {
    case Family::Lcg: return minstd();
    case Family::Mrg: return mrg5();
    case Family::Awc: return awc();
    case Family::Swb: return swb();
    case Family::Swc: return swc();
    case Family::Gfsr: return r250();
    case Family::Inv: return inv();
    case Family::Combined: return lcg2();
  }
  return minstd();
}

}  // namespace presets

Generator::Generator(GeneratorSpec spec, std::span<const std::uint64_t> seed_material)
    : spec_(std::move(spec)), state_(seed(spec_, seed_material)), bits_(output_bits(spec_)) {}

}  // namespace ciprng
