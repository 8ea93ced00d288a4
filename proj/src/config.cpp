#include "ciprng/config.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

#include "ciprng/error.hpp"

namespace ciprng {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ConfigError, field + ": " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) config_error(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) config_error(join(path, item.key()), "unknown field");
  }
}

std::uint64_t get_uint(const json& j, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    config_error(field, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::int64_t get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) config_error(field, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    config_error(field, "integer out of range");
  }
  return j.get<std::int64_t>();
}

unsigned get_small(const json& j, const std::string& field) {
  const std::uint64_t v = get_uint(j, field);
  if (v > 1'000'000'000ULL) config_error(field, "value out of range");
  return static_cast<unsigned>(v);
}

std::vector<std::uint64_t> get_seed(const json& j, const std::string& field) {
  std::vector<std::uint64_t> seed;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) seed.push_back(get_uint(j[i], field + "[" + std::to_string(i) + "]"));
  } else {
    seed.push_back(get_uint(j, field));
  }
  if (seed.empty()) config_error(field, "seed must not be empty");
  return seed;
}

std::vector<std::int64_t> get_multipliers(const json& j, const std::string& field) {
  std::vector<std::int64_t> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], field + "[" + std::to_string(i) + "]"));
  } else {
    out.push_back(get_int(j, field));
  }
  return out;
}

struct FamilyName {
  const char* name;
  GeneratorSpec (*preset)();
};

constexpr FamilyName kFamilies[] = {
    {"lcg", presets::minstd}, {"mrg", presets::mrg5}, {"awc", presets::awc},   {"swb", presets::swb},
    {"swc", presets::swc},    {"gfsr", presets::r250}, {"inv", presets::inv},  {"lcg2", presets::lcg2},
    {"lcg3", presets::lcg3},  {"mrg2", presets::mrg2}, {"combined", nullptr},
};

void apply_seed_override_impl(GeneratorConfig& g, std::uint64_t base, std::uint64_t& index) {
  g.seed = {base + index++};
  for (auto& c : g.spec.components) c.seed = {base + index++};
}

void check_scan(const ScanRange& range) {
  if (range.lo < 1 || range.hi < range.lo) {
    config_error("scan", "empty range " + std::to_string(range.lo) + ".." + std::to_string(range.hi));
  }
}

Family family_of(const std::string& name, GeneratorSpec& spec, const std::string& field) {
  for (const auto& f : kFamilies) {
    if (name == f.name) {
      if (f.preset != nullptr) {
        spec = f.preset();
      } else {
        spec = GeneratorSpec{};
        spec.family = Family::Combined;
      }
      return spec.family;
    }
  }
  config_error(field, "unknown family '" + name + "'");
}

GeneratorConfig parse_generator_at(const json& j, const std::string& path, bool require_seed) {
  require_object(j, path);
  const std::string family_field = join(path, "family");
  if (!j.contains("family") || !j.at("family").is_string()) config_error(family_field, "missing or not a string");
  GeneratorConfig config;
  GeneratorSpec& spec = config.spec;
  const std::string name = j.at("family").get<std::string>();
  const bool preset_combination = name == "lcg2" || name == "lcg3" || name == "mrg2";
  switch (family_of(name, spec, family_field)) {
    case Family::Lcg:
      reject_unknown(j, path, {"family", "seed", "a", "c", "m"});
      if (j.contains("a")) spec.multipliers = {get_int(j.at("a"), join(path, "a"))};
      if (j.contains("c")) spec.increment = get_uint(j.at("c"), join(path, "c"));
      if (j.contains("m")) spec.modulus = get_uint(j.at("m"), join(path, "m"));
      break;
    case Family::Mrg:
    case Family::Inv:
      reject_unknown(j, path, {"family", "seed", "a", "m"});
      if (j.contains("a")) spec.multipliers = get_multipliers(j.at("a"), join(path, "a"));
      if (j.contains("m")) spec.modulus = get_uint(j.at("m"), join(path, "m"));
      break;
    case Family::Awc:
    case Family::Swb:
      reject_unknown(j, path, {"family", "seed", "m", "r", "s"});
      if (j.contains("m")) spec.modulus = get_uint(j.at("m"), join(path, "m"));
      if (j.contains("r")) spec.lag_r = get_small(j.at("r"), join(path, "r"));
      if (j.contains("s")) spec.lag_s = get_small(j.at("s"), join(path, "s"));
      break;
    case Family::Swc:
      reject_unknown(j, path, {"family", "seed", "a", "w"});
      if (j.contains("a")) spec.multipliers = get_multipliers(j.at("a"), join(path, "a"));
      if (j.contains("w")) spec.word_width = get_small(j.at("w"), join(path, "w"));
      break;
    case Family::Gfsr:
      reject_unknown(j, path, {"family", "seed", "r", "k", "w"});
      if (j.contains("r")) spec.lag_r = get_small(j.at("r"), join(path, "r"));
      if (j.contains("k")) spec.lag_k = get_small(j.at("k"), join(path, "k"));
      if (j.contains("w")) spec.word_width = get_small(j.at("w"), join(path, "w"));
      break;
    case Family::Combined:
      if (preset_combination) {
        reject_unknown(j, path, {"family", "seed"});
        break;
      }
      reject_unknown(j, path, {"family", "seed", "components"});
      {
        const std::string field = join(path, "components");
        if (!j.contains("components") || !j.at("components").is_array()) config_error(field, "expected an array");
        const json& parts = j.at("components");
        for (std::size_t i = 0; i < parts.size(); ++i) {
          auto part = parse_generator_at(parts[i], field + "[" + std::to_string(i) + "]", false);
          part.spec.seed = part.seed;
          spec.components.push_back(std::move(part.spec));
        }
      }
      break;
  }
  if (j.contains("seed")) {
    config.seed = get_seed(j.at("seed"), join(path, "seed"));
  } else if (require_seed) {
    config_error(join(path, "seed"), "missing");
  }
  try {
    validate(spec);
  } catch (const Error& e) {
    config_error(path.empty() ? "<root>" : path, e.what());
  }
  return config;
}

CiKind parse_kind(const json& j, const std::string& field) {
  if (!j.is_string()) config_error(field, "expected a combinator name");
  const std::string name = j.get<std::string>();
  for (CiKind k : {CiKind::Old, CiKind::New, CiKind::Xor, CiKind::MixedXor, CiKind::MultipleXor}) {
    if (name == to_string(k)) return k;
  }
  config_error(field, "unknown combinator '" + name + "'");
}

CombinatorConfig parse_combinator_at(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"ci", "power", "x0", "prng1", "prng2"});
  if (!j.contains("ci")) config_error(join(path, "ci"), "missing");
  CombinatorConfig config;
  config.kind = parse_kind(j.at("ci"), join(path, "ci"));
  if (j.contains("power")) {
    config.power = get_small(j.at("power"), join(path, "power"));
    if (config.power < 1) config_error(join(path, "power"), "must be >= 1");
    if (config.power != 1 && config.kind != CiKind::MultipleXor) {
      config_error(join(path, "power"), "only multiple_xor takes a functional power");
    }
  }
  if (j.contains("x0")) {
    const std::uint64_t x0 = get_uint(j.at("x0"), join(path, "x0"));
    const std::uint64_t limit = config.kind == CiKind::Old ? 16 : (std::uint64_t{1} << 32);
    if (x0 >= limit) config_error(join(path, "x0"), "out of range");
    config.x0 = static_cast<std::uint32_t>(x0);
  }
  if (!j.contains("prng1")) config_error(join(path, "prng1"), "missing");
  config.prng1 = parse_generator_at(j.at("prng1"), join(path, "prng1"), true);
  if (j.contains("prng2")) {
    if (config.kind == CiKind::Xor) config_error(join(path, "prng2"), "xor takes a single generator");
    config.prng2 = parse_generator_at(j.at("prng2"), join(path, "prng2"), true);
  } else if (config.kind == CiKind::Old || config.kind == CiKind::New || config.kind == CiKind::MixedXor) {
    config_error(join(path, "prng2"), "missing");
  }
  return config;
}

SourceConfig parse_source_at(const json& j, const std::string& path) {
  require_object(j, path);
  if (j.contains("ci")) return parse_combinator_at(j, path);
  if (j.contains("family")) return parse_generator_at(j, path, true);
  config_error(path.empty() ? "<root>" : path, "needs either 'family' or 'ci'");
}

PackingSpec parse_packing_at(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"width", "order", "zero_extend"});
  PackingSpec packing;
  if (j.contains("width")) {
    packing.width = get_small(j.at("width"), join(path, "width"));
    if (packing.width < 1 || packing.width > 64) config_error(join(path, "width"), "must lie in [1, 64]");
  }
  if (j.contains("order")) {
    const json& o = j.at("order");
    if (o == "msb") {
      packing.order = BitOrder::MsbFirst;
    } else if (o == "lsb") {
      packing.order = BitOrder::LsbFirst;
    } else {
      config_error(join(path, "order"), "expected \"msb\" or \"lsb\"");
    }
  }
  if (j.contains("zero_extend")) {
    if (!j.at("zero_extend").is_boolean()) config_error(join(path, "zero_extend"), "expected a boolean");
    packing.zero_extend = j.at("zero_extend").get<bool>();
  }
  return packing;
}

}  // namespace

std::string_view to_string(CiKind kind) noexcept {
  switch (kind) {
    case CiKind::Old: return "old";
    case CiKind::New: return "new";
    case CiKind::Xor: return "xor";
    case CiKind::MixedXor: return "mixed_xor";
    case CiKind::MultipleXor: return "multiple_xor";
  }
  return "unknown";
}

GeneratorConfig parse_generator(const json& j, bool require_seed) {
  return parse_generator_at(j, "", require_seed);
}

CombinatorConfig parse_combinator(const json& j) { return parse_combinator_at(j, ""); }

SourceConfig parse_source(const json& j) { return parse_source_at(j, ""); }

PackingSpec parse_packing(const json& j) { return parse_packing_at(j, "packing"); }

ScanRange parse_scan_range(std::string_view text) {
  const auto sep = text.find("..");
  if (sep == std::string_view::npos) config_error("scan", "expected LO..HI");
  auto number = [&](std::string_view part) {
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      config_error("scan", "bad bound '" + std::string(part) + "'");
    }
    return v;
  };
  ScanRange range{number(text.substr(0, sep)), number(text.substr(sep + 2))};
  check_scan(range);
  return range;
}

RunConfig parse_run_config(const json& j) {
  require_object(j, "");
  if (j.contains("family") || j.contains("ci")) return RunConfig{parse_source_at(j, ""), {}, {}, {}, {}};
  reject_unknown(j, "", {"source", "packing", "battery", "output", "scan"});
  if (!j.contains("source")) config_error("source", "missing");
  RunConfig config{parse_source_at(j.at("source"), "source"), {}, {}, {}, {}};
  if (j.contains("packing")) config.packing = parse_packing_at(j.at("packing"), "packing");
  if (j.contains("battery")) {
    const json& b = j.at("battery");
    require_object(b, "battery");
    reject_unknown(b, "battery", {"sequences", "bits", "words", "tests", "block_length", "threads"});
    auto& s = config.settings;
    if (b.contains("sequences")) s.sequences = get_uint(b.at("sequences"), "battery.sequences");
    if (b.contains("bits")) s.bits = get_uint(b.at("bits"), "battery.bits");
    if (b.contains("words")) s.words = get_uint(b.at("words"), "battery.words");
    if (b.contains("block_length")) s.battery.block_length = get_uint(b.at("block_length"), "battery.block_length");
    if (b.contains("threads")) s.battery.threads = get_small(b.at("threads"), "battery.threads");
    if (b.contains("tests")) {
      const json& t = b.at("tests");
      if (!t.is_array() || t.empty()) config_error("battery.tests", "expected a non-empty array of test names");
      s.battery.tests.clear();
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string field = "battery.tests[" + std::to_string(i) + "]";
        if (!t[i].is_string()) config_error(field, "expected a test name");
        try {
          s.battery.tests.push_back(parse_test_id(t[i].get<std::string>()));
        } catch (const Error& e) {
          config_error(field, "unknown test '" + t[i].get<std::string>() + "'");
        }
      }
    }
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) config_error("output", "expected a path string");
    config.output = j.at("output").get<std::string>();
  }
  if (j.contains("scan")) {
    const json& sc = j.at("scan");
    require_object(sc, "scan");
    reject_unknown(sc, "scan", {"lo", "hi"});
    if (!sc.contains("lo") || !sc.contains("hi")) config_error("scan", "needs lo and hi");
    ScanRange range{get_small(sc.at("lo"), "scan.lo"), get_small(sc.at("hi"), "scan.hi")};
    check_scan(range);
    config.scan = range;
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, path.string() + ": cannot open for reading");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
  return parse_run_config(j);
}

json to_json(const GeneratorSpec& spec) {
  json j;
  j["family"] = std::string(to_string(spec.family));
  switch (spec.family) {
    case Family::Lcg:
      j["a"] = spec.multipliers.at(0);
      j["c"] = spec.increment;
      j["m"] = spec.modulus;
      break;
    case Family::Mrg:
    case Family::Inv:
      j["a"] = spec.multipliers;
      j["m"] = spec.modulus;
      break;
    case Family::Awc:
    case Family::Swb:
      j["m"] = spec.modulus;
      j["r"] = spec.lag_r;
      j["s"] = spec.lag_s;
      break;
    case Family::Swc:
      j["a"] = spec.multipliers;
      j["w"] = spec.word_width;
      break;
    case Family::Gfsr:
      j["r"] = spec.lag_r;
      j["k"] = spec.lag_k;
      j["w"] = spec.word_width;
      break;
    case Family::Combined: {
      json parts = json::array();
      for (const auto& c : spec.components) parts.push_back(to_json(c));
      j["components"] = parts;
      break;
    }
  }
  if (!spec.seed.empty()) j["seed"] = spec.seed;
  return j;
}

json to_json(const GeneratorConfig& config) {
  json j = to_json(config.spec);
  j["seed"] = config.seed;
  return j;
}

json to_json(const CombinatorConfig& config) {
  json j;
  j["ci"] = std::string(to_string(config.kind));
  j["power"] = config.power;
  j["x0"] = config.x0;
  j["prng1"] = to_json(config.prng1);
  if (config.prng2) j["prng2"] = to_json(*config.prng2);
  return j;
}

json to_json(const SourceConfig& config) {
  return std::visit([](const auto& c) { return to_json(c); }, config);
}

json to_json(const PackingSpec& packing) {
  return {{"width", packing.width}, {"order", std::string(to_string(packing.order))}, {"zero_extend", packing.zero_extend}};
}

void apply_seed_override(SourceConfig& source, std::uint64_t base) {
  std::uint64_t index = 0;
  if (auto* g = std::get_if<GeneratorConfig>(&source)) {
    apply_seed_override_impl(*g, base, index);
  } else {
    auto& c = std::get<CombinatorConfig>(source);
    apply_seed_override_impl(c.prng1, base, index);
    if (c.prng2) apply_seed_override_impl(*c.prng2, base, index);
  }
}

std::unique_ptr<Source> make_source(const GeneratorConfig& config) {
  return std::make_unique<Generator>(config.spec, config.seed);
}

std::unique_ptr<Source> make_source(const SourceConfig& config) {
  if (const auto* g = std::get_if<GeneratorConfig>(&config)) return make_source(*g);
  const auto& c = std::get<CombinatorConfig>(config);
  return std::make_unique<CiGenerator>(c.kind, make_source(c.prng1), c.prng2 ? make_source(*c.prng2) : nullptr,
                                       c.x0, c.power);
}

unsigned source_bits(const SourceConfig& config) {
  if (const auto* g = std::get_if<GeneratorConfig>(&config)) return output_bits(g->spec);
  return std::get<CombinatorConfig>(config).kind == CiKind::Old ? 4 : 32;
}

PackingSpec effective_packing(const RunConfig& config) {
  return config.packing ? *config.packing : default_packing(source_bits(config.source));
}

}  // namespace ciprng
