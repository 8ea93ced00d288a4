#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ciprng/bits.hpp"
#include "ciprng/stats.hpp"

namespace ciprng {

enum class TestId { Monobit, BlockFrequency, Runs, MatrixRank, CountTheOnes };

std::string_view to_string(TestId id) noexcept;
TestId parse_test_id(std::string_view name);  // throws ConfigError

std::vector<TestId> all_tests();

inline bool is_stream_test(TestId id) noexcept { return id == TestId::MatrixRank || id == TestId::CountTheOnes; }

struct BatteryConfig {
  std::vector<TestId> tests = all_tests();
  std::size_t block_length = 128;
  unsigned threads = 0;  // 0: decided by worker_threads()
};

struct BatteryReport {
  std::vector<TestOutcome> outcomes;  // in BatteryConfig::tests order

  std::size_t passed() const;
  std::size_t total() const { return outcomes.size(); }
  bool all_passed() const { return passed() == total(); }

  /// "k/n": tests passed out of tests run.
  std::string score() const;
};

/// Worker count: `requested` if non-zero, else hardware concurrency, capped by
/// the CIPRNG_THREADS environment variable when it is set.
unsigned worker_threads(unsigned requested = 0);

/// Checks corpus and stream dimensions against the enabled tests before any
/// generation: s >= 10, n >= 100 and 20 <= M <= n for the per-sequence tests,
/// enough words for the stream tests. `words` == 0 means the pooled corpus is
/// used. Throws InsufficientData, TooFewSequences or BadBlockLength.
void check_dimensions(const BatteryConfig& config, std::size_t sequences, std::size_t bits, std::size_t words);

/// Applies every enabled test. NIST-style tests run per corpus sequence and are
/// decided by P-value_T; DieHARD-style tests run on `words`, or on the pooled
/// corpus when `words` is empty. Errors inside a single test become a failing
/// outcome with a reason; an empty corpus throws InsufficientData.
BatteryReport run_battery(const BitCorpus& corpus, std::span<const std::uint32_t> words,
                          const BatteryConfig& config = {});

nlohmann::json to_json(const TestOutcome& outcome);
nlohmann::json to_json(const BatteryReport& report);

}  // namespace ciprng
