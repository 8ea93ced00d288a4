#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ciprng/error.hpp"
#include "ciprng/generators.hpp"
#include "ciprng/period.hpp"

namespace ciprng {
namespace {

GeneratorSpec make_lcg(std::int64_t a, std::uint64_t c, std::uint64_t m) {
  GeneratorSpec spec;
  spec.family = Family::Lcg;
  spec.multipliers = {a};
  spec.increment = c;
  spec.modulus = m;
  return spec;
}

GeneratorSpec make_lagged(Family family, std::uint64_t m, unsigned r, unsigned s) {
  GeneratorSpec spec;
  spec.family = family;
  spec.modulus = m;
  spec.lag_r = r;
  spec.lag_s = s;
  return spec;
}

std::vector<GeneratorSpec> all_presets() {
  return {presets::minstd(), presets::mrg5(), presets::awc(),  presets::swb(),  presets::swc(),
          presets::r250(),   presets::inv(),  presets::lcg2(), presets::lcg3(), presets::mrg2()};
}

void expect_error(ErrorCode code, const auto& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Seed, MinstdSeedOneIsIdentity) {
  const auto state = seed(presets::minstd(), std::vector<std::uint64_t>{1});
  ASSERT_EQ(state.lags.size(), 1u);
  EXPECT_EQ(state.lags[0], 1u);
}

TEST(Seed, MrgReducesElementwise) {
  GeneratorSpec spec;
  spec.family = Family::Mrg;
  spec.multipliers = {1, 1};
  spec.modulus = 7;
  const auto state = seed(spec, std::vector<std::uint64_t>{9, 3});
  EXPECT_EQ(state.lag(1), 2u);
  EXPECT_EQ(state.lag(2), 3u);
}

TEST(Seed, GfsrAllZeroIsRejected) {
  const std::vector<std::uint64_t> zeros(250, 0);
  expect_error(ErrorCode::AllZeroSeed, [&] { seed(presets::r250(), zeros); });
}

TEST(Seed, AbsorbingZeroStatesAreRejected) {
  const std::vector<std::uint64_t> zero{0};
  expect_error(ErrorCode::AllZeroSeed, [&] { seed(presets::minstd(), zero); });
  // m divides the seed: reduces to zero.
  expect_error(ErrorCode::AllZeroSeed, [&] { seed(presets::minstd(), std::vector<std::uint64_t>{2147483647}); });
  expect_error(ErrorCode::AllZeroSeed, [&] { seed(presets::mrg5(), std::vector<std::uint64_t>(5, 0)); });
}

TEST(Seed, ZeroSeedIsFineWhenNotAbsorbing) {
  EXPECT_NO_THROW(seed(make_lcg(5, 1, 16), std::vector<std::uint64_t>{0}));
  EXPECT_NO_THROW(seed(presets::inv(), std::vector<std::uint64_t>{0}));
}

TEST(Seed, EmptyMaterialIsRejected) {
  expect_error(ErrorCode::InvalidSpec, [] { seed(presets::minstd(), std::vector<std::uint64_t>{}); });
}

TEST(Seed, ShortMaterialFillsWholeBuffer) {
  const auto state = seed(presets::r250(), std::vector<std::uint64_t>{42});
  ASSERT_EQ(state.lags.size(), 250u);
  EXPECT_EQ(state.lags[0], 42u);
  const auto distinct = std::count_if(state.lags.begin(), state.lags.end(), [](std::uint64_t v) { return v != 0; });
  EXPECT_GT(distinct, 240);
}

TEST(Seed, SameMaterialSameState) {
  for (const auto& spec : all_presets()) {
    const std::vector<std::uint64_t> material{7, 11, 13};
    EXPECT_EQ(seed(spec, material), seed(spec, material)) << to_string(spec.family);
  }
}

TEST(Step, MinstdFromOne) {
  auto spec = presets::minstd();
  auto state = seed(spec, std::vector<std::uint64_t>{1});
  EXPECT_EQ(step(spec, state), 16807u);
  EXPECT_EQ(step(spec, state), 282475249u);
}

TEST(Step, MinstdTenThousandth) {
  // x_10000 from x_0 = 1 is the classic 1043618065 check value.
  Generator g(presets::minstd(), std::vector<std::uint64_t>{1});
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = g.next();
  EXPECT_EQ(x, 1043618065u);
}

TEST(Step, AwcAddsWithCarry) {
  const auto spec = make_lagged(Family::Awc, 10, 2, 1);
  GeneratorState state;
  state.lags = {6, 7};  // lag(1) = x^{n-s} = 6, lag(2) = x^{n-r} = 7
  EXPECT_EQ(step(spec, state), 3u);
  EXPECT_EQ(state.carry, 1u);
  EXPECT_EQ(state.lag(1), 3u);
  EXPECT_EQ(state.lag(2), 6u);
}

TEST(Step, SwbSubtractsWithBorrow) {
  const auto spec = make_lagged(Family::Swb, 10, 2, 1);
  GeneratorState state;
  state.lags = {6, 3};  // x^{n-s} = 6, x^{n-r} = 3
  EXPECT_EQ(step(spec, state), 7u);
  EXPECT_EQ(state.carry, 1u);
}

TEST(Step, SwcXorsProductsAndCarries) {
  GeneratorSpec spec;
  spec.family = Family::Swc;
  spec.word_width = 8;
  spec.multipliers = {3, 5};
  GeneratorState state;
  state.lags = {200, 100};
  state.carry = 1;
  // v = 1 ^ 600 ^ 500 = 941: output 941 mod 256 = 173, carry 941 >> 8 = 3.
  EXPECT_EQ(step(spec, state), (1u ^ 600u ^ 500u) & 0xFFu);
  EXPECT_EQ(state.carry, (1u ^ 600u ^ 500u) >> 8);
}

TEST(Step, GfsrXorsLags) {
  GeneratorSpec spec;
  spec.family = Family::Gfsr;
  spec.lag_r = 3;
  spec.lag_k = 1;
  spec.word_width = 8;
  GeneratorState state;
  state.lags = {0x0F, 0x33, 0xF0};
  EXPECT_EQ(step(spec, state), 0x0Fu ^ 0xF0u);
}

TEST(Step, GfsrZeroBufferStaysZero) {
  auto spec = presets::r250();
  GeneratorState state;
  state.lags.assign(250, 0);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(step(spec, state), 0u);
}

TEST(Step, InvFromZeroEmitsA1) {
  GeneratorSpec spec = presets::inv();
  spec.multipliers = {12345, 678};
  GeneratorState state;
  state.lags = {0};
  EXPECT_EQ(step(spec, state), 12345u);
}

TEST(Step, InvMatchesDefinition) {
  GeneratorSpec spec;
  spec.family = Family::Inv;
  spec.modulus = 13;
  spec.multipliers = {2, 3};
  GeneratorState state;
  state.lags = {5};
  // 5^-1 mod 13 = 8; 2 + 3*8 = 26 = 0 mod 13.
  EXPECT_EQ(step(spec, state), 0u);
  EXPECT_EQ(step(spec, state), 2u);  // z = 0 -> a1
}

TEST(Step, InverseModPrime) {
  for (std::uint64_t z = 1; z < 101; ++z) EXPECT_EQ(inverse_mod_prime(z, 101) * z % 101, 1u);
  const std::uint64_t m = 2147483647;
  EXPECT_EQ(static_cast<unsigned __int128>(inverse_mod_prime(16807, m)) * 16807 % m, 1u);
}

TEST(Step, MrgSignedCoefficients) {
  GeneratorSpec spec;
  spec.family = Family::Mrg;
  spec.modulus = 11;
  spec.multipliers = {-1, 2};
  GeneratorState state = seed(spec, std::vector<std::uint64_t>{4, 9});
  // -1*4 + 2*9 = 14 = 3 mod 11
  EXPECT_EQ(step(spec, state), 3u);
}

TEST(Validate, RejectsBrokenInvariants) {
  expect_error(ErrorCode::InvalidSpec, [] { validate(make_lcg(0, 0, 7)); });
  expect_error(ErrorCode::InvalidSpec, [] { validate(make_lcg(7, 0, 7)); });
  expect_error(ErrorCode::InvalidSpec, [] { validate(make_lagged(Family::Awc, 10, 3, 3)); });
  expect_error(ErrorCode::InvalidSpec, [] { validate(make_lagged(Family::Swb, 10, 3, 0)); });
  GeneratorSpec inv = presets::inv();
  inv.modulus = 15;
  expect_error(ErrorCode::InvalidSpec, [&] { validate(inv); });
  GeneratorSpec one;
  one.family = Family::Combined;
  one.components = {presets::minstd()};
  expect_error(ErrorCode::InvalidSpec, [&] { validate(one); });
}

TEST(Validate, PresetsAreValid) {
  for (const auto& spec : all_presets()) EXPECT_NO_THROW(validate(spec)) << to_string(spec.family);
}

TEST(IsPrime, SmallAndLarge) {
  const std::vector<std::uint64_t> primes{2, 3, 5, 7, 13, 2147483647, 2147483563, 2147483399, 2147462579};
  for (auto p : primes) EXPECT_TRUE(is_prime(p)) << p;
  for (std::uint64_t c : {0ull, 1ull, 4ull, 15ull, 561ull, 2147483649ull, 4294967297ull}) EXPECT_FALSE(is_prime(c)) << c;
}

TEST(Properties, DeterministicAcrossRuns) {
  for (const auto& spec : all_presets()) {
    Generator a(spec, std::vector<std::uint64_t>{2024, 7});
    Generator b(spec, std::vector<std::uint64_t>{2024, 7});
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.next(), b.next()) << to_string(spec.family) << " step " << i;
  }
}

TEST(Properties, OutputsStayInRange) {
  for (const auto& spec : all_presets()) {
    Generator g(spec, std::vector<std::uint64_t>{99});
    const std::uint64_t bound = output_bound(spec);
    for (int i = 0; i < 100000; ++i) ASSERT_LT(g.next(), bound) << to_string(spec.family);
  }
}

TEST(Properties, CarryBounds) {
  for (auto spec : {presets::awc(), presets::swb()}) {
    auto state = seed(spec, std::vector<std::uint64_t>{5});
    for (int i = 0; i < 100000; ++i) {
      step(spec, state);
      ASSERT_LE(state.carry, 1u);
    }
  }
  const auto swc = presets::swc();
  auto state = seed(swc, std::vector<std::uint64_t>{5});
  std::uint64_t sum = 0;
  for (auto a : swc.multipliers) sum += static_cast<std::uint64_t>(a);
  for (int i = 0; i < 100000; ++i) {
    step(swc, state);
    ASSERT_LE(state.carry, sum);
  }
}

TEST(Properties, CombinedIsXorOfComponents) {
  for (const auto& spec : {presets::lcg2(), presets::lcg3(), presets::mrg2()}) {
    const std::vector<std::uint64_t> material{31337};
    Generator combined(spec, material);
    std::vector<Generator> parts;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
      parts.emplace_back(spec.components[i], component_seed(material, i));
    }
    for (int n = 0; n < 10000; ++n) {
      std::uint64_t expected = 0;
      for (auto& p : parts) expected ^= p.next();
      ASSERT_EQ(combined.next(), expected);
    }
  }
}

TEST(Properties, ComponentSeedOverridesDerivedSeed) {
  auto spec = presets::lcg2();
  spec.components[0].seed = {5};
  spec.components[1].seed = {6};
  Generator combined(spec, std::vector<std::uint64_t>{1});
  Generator a(spec.components[0], std::vector<std::uint64_t>{5});
  Generator b(spec.components[1], std::vector<std::uint64_t>{6});
  for (int n = 0; n < 1000; ++n) ASSERT_EQ(combined.next(), a.next() ^ b.next());
}

TEST(Properties, MrgOrderOneIsLcg) {
  GeneratorSpec mrg;
  mrg.family = Family::Mrg;
  mrg.multipliers = {48271};
  mrg.modulus = 2147483647;
  Generator a(mrg, std::vector<std::uint64_t>{12345});
  Generator b(make_lcg(48271, 0, 2147483647), std::vector<std::uint64_t>{12345});
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(Properties, ToyLcgPeriod) {
  const auto spec = make_lcg(3, 0, 7);
  auto stepper = [&](const GeneratorState& s) {
    GeneratorState t = s;
    step(spec, t);
    return t;
  };
  const auto info = find_period(stepper, seed(spec, std::vector<std::uint64_t>{1}), 100);
  ASSERT_TRUE(info);
  EXPECT_EQ(info->period, 6u);
  EXPECT_EQ(info->preperiod, 0u);
}

TEST(Properties, OutputBits) {
  EXPECT_EQ(output_bits(presets::minstd()), 31u);
  EXPECT_EQ(output_bits(presets::awc()), 32u);
  EXPECT_EQ(output_bits(presets::r250()), 32u);
  EXPECT_EQ(output_bits(presets::lcg2()), 31u);
}

}  // namespace
}  // namespace ciprng
