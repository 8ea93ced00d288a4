#pragma once

// End-to-end runs: build the configured source, draw the corpus and the word
// stream, apply the battery. Used by the CLI and the acceptance suite.

#include <optional>
#include <vector>

#include <json.hpp>

#include "ciprng/battery.hpp"
#include "ciprng/config.hpp"

namespace ciprng {

/// The corpus (s sequences of n bits) and the word stream are drawn from two
/// independent instances of the source, each starting from its seed, so every
/// test sees the generator from its first output. Dimensions are checked
/// before anything is generated.
BatteryReport run_source(const SourceConfig& source, const PackingSpec& packing, const BatterySettings& settings);

BatteryReport run_config(const RunConfig& config);

struct ScanRow {
  unsigned power = 0;
  BatteryReport report;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::optional<unsigned> smallest_passing;  // first m whose report passes every test
};

/// Runs the battery for every functional power in range. The source must be a
/// multiple_xor combinator (ConfigError otherwise).
ScanResult scan_power(const RunConfig& config, ScanRange range);

nlohmann::json to_json(const ScanResult& result);

}  // namespace ciprng
