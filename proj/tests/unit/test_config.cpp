#include <gtest/gtest.h>

#include <json.hpp>

#include "ciprng/config.hpp"
#include "ciprng/error.hpp"
#include "ciprng/generators.hpp"
#include "ciprng/run.hpp"

namespace ciprng {
namespace {

using nlohmann::json;

std::string config_error_of(const json& j) {
  try {
    parse_run_config(j);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << j.dump();
  return {};
}

TEST(Config, BareGenerator) {
  const auto rc = parse_run_config(json::parse(R"({"family": "lcg", "seed": [7]})"));
  const auto& g = std::get<GeneratorConfig>(rc.source);
  EXPECT_EQ(g.spec.modulus, 2147483647u);
  EXPECT_EQ(g.spec.multipliers, std::vector<std::int64_t>{16807});
  EXPECT_EQ(g.seed, std::vector<std::uint64_t>{7});
  EXPECT_EQ(effective_packing(rc), PackingSpec::zero_extended32());
}

TEST(Config, FieldsOverridePreset) {
  const auto g = parse_generator(json::parse(R"({"family": "lcg", "a": 48271, "c": 0, "m": 2147483647, "seed": 1})"));
  EXPECT_EQ(g.spec.multipliers[0], 48271);
  const auto r = parse_generator(json::parse(R"({"family": "gfsr", "r": 521, "k": 32, "w": 32, "seed": [1]})"));
  EXPECT_EQ(r.spec.lag_r, 521u);
  EXPECT_EQ(r.spec.lag_k, 32u);
}

TEST(Config, CombinedAndPresets) {
  const auto c = parse_generator(json::parse(R"({
    "family": "combined", "seed": [3],
    "components": [{"family": "lcg", "a": 40014, "m": 2147483563},
                   {"family": "lcg", "a": 40692, "m": 2147483399, "seed": [9]}]})"));
  ASSERT_EQ(c.spec.components.size(), 2u);
  EXPECT_TRUE(c.spec.components[0].seed.empty());
  EXPECT_EQ(c.spec.components[1].seed, std::vector<std::uint64_t>{9});
  const auto p = parse_generator(json::parse(R"({"family": "lcg3", "seed": [3]})"));
  EXPECT_EQ(p.spec.components.size(), 3u);
}

TEST(Config, Combinator) {
  const auto rc = parse_run_config(json::parse(R"({
    "source": {"ci": "multiple_xor", "power": 5, "prng1": {"family": "gfsr", "seed": [1]}},
    "packing": {"width": 31, "order": "msb"},
    "battery": {"sequences": 10, "bits": 2000, "tests": ["monobit", "runs"], "threads": 2},
    "scan": {"lo": 1, "hi": 19}})"));
  const auto& c = std::get<CombinatorConfig>(rc.source);
  EXPECT_EQ(c.kind, CiKind::MultipleXor);
  EXPECT_EQ(c.power, 5u);
  EXPECT_FALSE(c.prng2);
  EXPECT_EQ(rc.packing->width, 31u);
  EXPECT_EQ(rc.settings.sequences, 10u);
  EXPECT_EQ(rc.settings.battery.tests, (std::vector<TestId>{TestId::Monobit, TestId::Runs}));
  EXPECT_EQ(rc.settings.battery.threads, 2u);
  EXPECT_EQ(rc.scan->hi, 19u);
  EXPECT_EQ(source_bits(rc.source), 32u);
}

TEST(Config, OldCiDefaultsToNibbles) {
  const auto rc = parse_run_config(json::parse(R"({"ci": "old",
    "prng1": {"family": "lcg", "seed": [1]}, "prng2": {"family": "lcg", "seed": [2]}})"));
  EXPECT_EQ(effective_packing(rc), PackingSpec::nibbles());
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_NE(config_error_of(json::parse(R"({"family": "lgc", "seed": [1]})")).find("family"), std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"family": "lcg", "seed": [1], "b": 3})")).find("b"), std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"source": {"family": "lcg", "seed": [1]}, "bogus": 1})")).find("bogus"),
            std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"source": {"ci": "new", "prng1": {"family": "lcg", "seed": [1]}}})"))
                .find("source.prng2"),
            std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"ci": "xor", "prng1": {"family": "lcg", "seed": [1]},
                                            "prng2": {"family": "lcg", "seed": [1]}})"))
                .find("prng2"),
            std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"family": "lcg"})")).find("seed"), std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"family": "lcg", "a": 0, "seed": [1]})")).find("lcg"), std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"source": {"family": "lcg", "seed": [1]}, "packing": {"order": "mid"}})"))
                .find("packing.order"),
            std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"source": {"family": "lcg", "seed": [1]}, "battery": {"tests": ["dft"]}})"))
                .find("battery.tests[0]"),
            std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"source": {"family": "lcg", "seed": [1]}, "scan": {"lo": 5, "hi": 2}})"))
                .find("scan"),
            std::string::npos);
  EXPECT_NE(config_error_of(json::parse(R"({"family": "lcg", "seed": [-1]})")).find("seed[0]"), std::string::npos);
}

TEST(Config, ScanRange) {
  const auto r = parse_scan_range("1..19");
  EXPECT_EQ(r.lo, 1u);
  EXPECT_EQ(r.hi, 19u);
  EXPECT_THROW(parse_scan_range("5..2"), Error);
  EXPECT_THROW(parse_scan_range("0..3"), Error);
  EXPECT_THROW(parse_scan_range("1-3"), Error);
  EXPECT_THROW(parse_scan_range("a..b"), Error);
}

TEST(Config, SeedOverrideDepthFirst) {
  SourceConfig src = parse_source(json::parse(R"({"ci": "mixed_xor",
    "prng1": {"family": "lcg2", "seed": [1]}, "prng2": {"family": "lcg", "seed": [2]}})"));
  apply_seed_override(src, 100);
  const auto& c = std::get<CombinatorConfig>(src);
  EXPECT_EQ(c.prng1.seed, std::vector<std::uint64_t>{100});
  EXPECT_EQ(c.prng1.spec.components[0].seed, std::vector<std::uint64_t>{101});
  EXPECT_EQ(c.prng1.spec.components[1].seed, std::vector<std::uint64_t>{102});
  EXPECT_EQ(c.prng2->seed, std::vector<std::uint64_t>{103});
}

TEST(Config, JsonRoundTrip) {
  for (const char* text : {R"({"family": "swc", "seed": [4]})", R"({"family": "mrg2", "seed": [4]})",
                           R"({"ci": "new", "prng1": {"family": "inv", "seed": [1]}, "prng2": {"family": "awc", "seed": [2]}})"}) {
    const auto src = parse_source(json::parse(text));
    const auto again = parse_source(to_json(src));
    EXPECT_EQ(to_json(src), to_json(again)) << text;
  }
}

TEST(Config, MakeSourceMatchesGenerator) {
  const auto src = parse_source(json::parse(R"({"family": "mrg", "seed": [5]})"));
  auto s = make_source(src);
  Generator g(presets::mrg5(), std::vector<std::uint64_t>{5});
  for (int i = 0; i < 100; ++i) ASSERT_EQ(s->next(), g.next());
}

// Pooled words are the first s*n/32 stream words when n is a multiple of 32.
TEST(Run, ZeroWordsPoolsTheCorpus) {
  auto rc = parse_run_config(json::parse(R"({
    "source": {"ci": "multiple_xor", "prng1": {"family": "gfsr", "seed": [7]}},
    "battery": {"sequences": 10, "bits": 224000, "words": 0, "tests": ["count_the_ones"]}})"));
  const auto pooled = run_config(rc);
  rc.settings.words = 10 * 224000 / 32;
  const auto explicit_words = run_config(rc);
  ASSERT_EQ(pooled.outcomes.size(), 1u);
  EXPECT_EQ(to_json(pooled), to_json(explicit_words));
}

}  // namespace
}  // namespace ciprng
