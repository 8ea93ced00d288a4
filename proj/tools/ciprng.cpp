// ciprng: generate corpora, run the battery, scan the functional power.
//
// Exit codes: 0 pass, 2 config error, 3 I/O error, 4 statistical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ciprng/bitstream.hpp"
#include "ciprng/config.hpp"
#include "ciprng/error.hpp"
#include "ciprng/run.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitStatistical = 4;

struct Options {
  std::string config;
  std::string format = "ascii";
  std::string out;
  std::string tests;
  std::string scan;
  std::string input;
  std::optional<std::uint64_t> seed_override;
};

int exit_code_for(ciprng::ErrorCode code) {
  switch (code) {
    case ciprng::ErrorCode::IoError:
    case ciprng::ErrorCode::MalformedFile:
      return kExitIo;
    default:
      return kExitConfig;
  }
}

std::vector<ciprng::TestId> parse_test_list(const std::string& list) {
  std::vector<ciprng::TestId> tests;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (!name.empty()) tests.push_back(ciprng::parse_test_id(name));
  }
  if (tests.empty()) throw ciprng::Error(ciprng::ErrorCode::ConfigError, "--tests: empty list");
  return tests;
}

ciprng::RunConfig load(const Options& opt) {
  auto config = ciprng::load_run_config(opt.config);
  if (opt.seed_override) ciprng::apply_seed_override(config.source, *opt.seed_override);
  if (!opt.tests.empty()) config.settings.battery.tests = parse_test_list(opt.tests);
  return config;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_generate(const Options& opt) {
  const auto config = load(opt);
  const fs::path out = opt.out.empty() ? config.output : fs::path(opt.out);
  if (out.empty()) throw ciprng::Error(ciprng::ErrorCode::ConfigError, "output: no --out and no \"output\" in config");
  const auto packing = ciprng::effective_packing(config);
  const auto& s = config.settings;

  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ciprng::Error(ciprng::ErrorCode::IoError, out.string() + ": " + ec.message());

  json manifest;
  manifest["source"] = ciprng::to_json(config.source);
  manifest["packing"] = ciprng::to_json(packing);
  manifest["format"] = opt.format;
  json files = json::array();
  auto source = ciprng::make_source(config.source);
  if (opt.format == "ascii") {
    if (s.sequences == 0 || s.bits == 0) {
      throw ciprng::Error(ciprng::ErrorCode::InsufficientData, "battery: sequences and bits must be >= 1");
    }
    manifest["sequences"] = s.sequences;
    manifest["bits"] = s.bits;
    const auto corpus = ciprng::generate_corpus(*source, s.sequences, s.bits, packing);
    for (const auto& p : ciprng::write_ascii_corpus(corpus, out)) files.push_back(p.filename().string());
  } else {
    if (s.words == 0) throw ciprng::Error(ciprng::ErrorCode::InsufficientData, "battery.words must be >= 1");
    manifest["words"] = s.words;
    const auto words = ciprng::generate_words(*source, s.words, packing);
    ciprng::write_binary_words(words, out / "words.bin");
    files.push_back("words.bin");
  }
  manifest["files"] = files;

  std::ofstream mf(out / "manifest.json");
  if (!mf) throw ciprng::Error(ciprng::ErrorCode::IoError, (out / "manifest.json").string() + ": cannot open");
  mf << manifest.dump(2) << '\n';
  if (!mf) throw ciprng::Error(ciprng::ErrorCode::IoError, (out / "manifest.json").string() + ": write failed");
  return kExitPass;
}

// Battery over files produced elsewhere. A .bin word file is split into
// sequences of `bits` bits for the per-sequence tests and used whole as the
// word stream.
ciprng::BatteryReport test_input(const Options& opt) {
  ciprng::BatterySettings settings;
  std::optional<ciprng::PackingSpec> packing;
  if (!opt.config.empty()) {
    const auto config = load(opt);
    settings = config.settings;
    packing = config.packing;
  } else if (!opt.tests.empty()) {
    settings.battery.tests = parse_test_list(opt.tests);
  }
  const ciprng::PackingSpec pk = packing.value_or(ciprng::PackingSpec::zero_extended32());
  const fs::path input(opt.input);
  if (input.extension() == ".bin") {
    const auto words = ciprng::read_binary_words(input);
    const auto all = ciprng::unpack_words(words, pk.order);
    const std::size_t n = settings.bits;
    const std::size_t s = n == 0 ? 0 : all.size() / n;
    ciprng::BitCorpus corpus;
    corpus.packing = pk;
    for (std::size_t i = 0; i < s; ++i) {
      ciprng::BitSequence seq;
      seq.reserve(n);
      for (std::size_t b = 0; b < n; ++b) seq.push_back(all[i * n + b]);
      corpus.sequences.push_back(std::move(seq));
    }
    ciprng::check_dimensions(settings.battery, s, n, words.size());
    return ciprng::run_battery(corpus, words, settings.battery);
  }
  const auto corpus = ciprng::read_corpus(input, pk);
  ciprng::check_dimensions(settings.battery, corpus.sequence_count(), corpus.sequences.front().size(), 0);
  return ciprng::run_battery(corpus, {}, settings.battery);
}

int cmd_test(const Options& opt) {
  const auto report = opt.input.empty() ? ciprng::run_config(load(opt)) : test_input(opt);
  print_json(ciprng::to_json(report));
  return report.all_passed() ? kExitPass : kExitStatistical;
}

int cmd_scan(const Options& opt) {
  const auto config = load(opt);
  std::optional<ciprng::ScanRange> range = config.scan;
  if (!opt.scan.empty()) range = ciprng::parse_scan_range(opt.scan);
  if (!range) throw ciprng::Error(ciprng::ErrorCode::ConfigError, "scan: no --scan and no \"scan\" in config");
  const auto result = ciprng::scan_power(config, *range);
  for (const auto& row : result.rows) std::fprintf(stderr, "m=%-3u %s\n", row.power, row.report.score().c_str());
  if (result.smallest_passing) {
    std::fprintf(stderr, "smallest passing m: %u\n", *result.smallest_passing);
  } else {
    std::fprintf(stderr, "no m in range passes\n");
  }
  print_json(ciprng::to_json(result));
  return result.smallest_passing ? kExitPass : kExitStatistical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaotic-iteration PRNG toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config, "Run configuration (JSON)");
    cmd->add_option("--tests", opt.tests, "Comma-separated test subset");
    cmd->add_option("--seed-override", opt.seed_override, "Replace every seed with N + generator index");
  };

  auto* generate = app.add_subcommand("generate", "Write a corpus and its manifest");
  add_common(generate);
  generate->get_option("--config")->required();
  generate->add_option("--format", opt.format, "ascii or binary")->check(CLI::IsMember({"ascii", "binary"}));
  generate->add_option("--out", opt.out, "Output directory");

  auto* test = app.add_subcommand("test", "Run the battery and print a JSON report");
  add_common(test);
  test->add_option("--input", opt.input, "Test a corpus directory, .txt file or .bin word file instead");

  auto* scan = app.add_subcommand("scan", "Run the battery for each functional power m");
  add_common(scan);
  scan->get_option("--config")->required();
  scan->add_option("--scan", opt.scan, "Range M_LO..M_HI");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (test->parsed() && opt.config.empty() && opt.input.empty()) {
      throw ciprng::Error(ciprng::ErrorCode::ConfigError, "test: needs --config or --input");
    }
    if (generate->parsed()) return cmd_generate(opt);
    if (test->parsed()) return cmd_test(opt);
    return cmd_scan(opt);
  } catch (const ciprng::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    print_json({{"error", {{"code", std::string(ciprng::to_string(e.code()))}, {"message", e.what()}}}});
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    print_json({{"error", {{"code", "IoError"}, {"message", e.what()}}}});
    return kExitIo;
  }
}
