#include "ciprng/run.hpp"

#include <algorithm>

#include "ciprng/bitstream.hpp"
#include "ciprng/error.hpp"

namespace ciprng {

BatteryReport run_source(const SourceConfig& source, const PackingSpec& packing, const BatterySettings& settings) {
  const auto& tests = settings.battery.tests;
  const bool per_sequence = std::any_of(tests.begin(), tests.end(), [](TestId id) { return !is_stream_test(id); });
  const bool stream = std::any_of(tests.begin(), tests.end(), [](TestId id) { return is_stream_test(id); });
  check_dimensions(settings.battery, settings.sequences, settings.bits, stream ? settings.words : 0);

  BitCorpus corpus;
  corpus.packing = packing;
  // words == 0: the stream tests pool the corpus bits instead.
  if (per_sequence || (stream && settings.words == 0)) {
    auto src = make_source(source);
    corpus = generate_corpus(*src, settings.sequences, settings.bits, packing);
  }
  std::vector<std::uint32_t> words;
  if (stream && settings.words > 0) {
    auto src = make_source(source);
    words = generate_words(*src, settings.words, packing);
  }
  return run_battery(corpus, words, settings.battery);
}

BatteryReport run_config(const RunConfig& config) {
  return run_source(config.source, effective_packing(config), config.settings);
}

ScanResult scan_power(const RunConfig& config, ScanRange range) {
  const auto* combinator = std::get_if<CombinatorConfig>(&config.source);
  if (combinator == nullptr || combinator->kind != CiKind::MultipleXor) {
    throw Error(ErrorCode::ConfigError, "source: scan needs a multiple_xor combinator");
  }
  if (range.lo < 1 || range.hi < range.lo) throw Error(ErrorCode::ConfigError, "scan: empty range");
  const PackingSpec packing = effective_packing(config);
  ScanResult result;
  for (unsigned m = range.lo; m <= range.hi; ++m) {
    CombinatorConfig c = *combinator;
    c.power = m;
    ScanRow row{m, run_source(c, packing, config.settings)};
    if (!result.smallest_passing && row.report.all_passed()) result.smallest_passing = m;
    result.rows.push_back(std::move(row));
  }
  return result;
}

nlohmann::json to_json(const ScanResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"m", row.power}, {"score", row.report.score()}, {"report", to_json(row.report)}});
  }
  return {{"scan", rows},
          {"smallest_passing_m", result.smallest_passing ? nlohmann::json(*result.smallest_passing) : nullptr}};
}

}  // namespace ciprng
