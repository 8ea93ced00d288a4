#pragma once

// JSON run configuration. A config is either a bare source (generator or
// combinator object) or a full run object:
//
//   {"source": {...}, "packing": {...}, "battery": {...}, "output": "dir",
//    "scan": {"lo": 1, "hi": 19}}
//
// Generators: {"family": "lcg", "a": 16807, "c": 0, "m": 2147483647, "seed": [1]}
// Combined:   {"family": "combined", "components": [{...}, {...}], "seed": [..]}
// Combinators: {"ci": "old"|"new"|"xor"|"mixed_xor"|"multiple_xor",
//               "power": m, "x0": 0, "prng1": {...}, "prng2": {...}}
//
// Unknown fields are rejected. The schema is shipped in schemas/config.schema.json.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ciprng/battery.hpp"
#include "ciprng/bits.hpp"
#include "ciprng/ci.hpp"
#include "ciprng/generators.hpp"
#include "ciprng/source.hpp"

namespace ciprng {

struct GeneratorConfig {
  GeneratorSpec spec;
  std::vector<std::uint64_t> seed;
};

struct CombinatorConfig {
  CiKind kind = CiKind::Xor;
  unsigned power = 1;
  std::uint32_t x0 = 0;
  GeneratorConfig prng1;
  std::optional<GeneratorConfig> prng2;
};

using SourceConfig = std::variant<GeneratorConfig, CombinatorConfig>;

struct BatterySettings {
  std::size_t sequences = 100;
  std::size_t bits = 1'000'000;
  std::size_t words = std::size_t{1} << 23;
  BatteryConfig battery;
};

struct ScanRange {
  unsigned lo = 1;
  unsigned hi = 1;
};

struct RunConfig {
  SourceConfig source;
  std::optional<PackingSpec> packing;  // unset: default_packing(source bits)
  BatterySettings settings;
  std::filesystem::path output;
  std::optional<ScanRange> scan;
};

GeneratorConfig parse_generator(const nlohmann::json& j, bool require_seed = true);
CombinatorConfig parse_combinator(const nlohmann::json& j);
SourceConfig parse_source(const nlohmann::json& j);
PackingSpec parse_packing(const nlohmann::json& j);
ScanRange parse_scan_range(std::string_view text);  // "LO..HI"

/// Throws Error(ConfigError) naming the offending field.
RunConfig parse_run_config(const nlohmann::json& j);

/// Throws IoError when unreadable and ConfigError on bad JSON or schema.
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json to_json(const GeneratorSpec& spec);
nlohmann::json to_json(const GeneratorConfig& config);
nlohmann::json to_json(const CombinatorConfig& config);
nlohmann::json to_json(const SourceConfig& config);
nlohmann::json to_json(const PackingSpec& packing);

std::string_view to_string(CiKind kind) noexcept;

/// Replaces every generator seed in the tree with {base + i}, i being the
/// generator's depth-first index (components included).
void apply_seed_override(SourceConfig& source, std::uint64_t base);

std::unique_ptr<Source> make_source(const GeneratorConfig& config);
std::unique_ptr<Source> make_source(const SourceConfig& config);

/// Natural width of the configured source, without building it.
unsigned source_bits(const SourceConfig& config);

PackingSpec effective_packing(const RunConfig& config);

}  // namespace ciprng
