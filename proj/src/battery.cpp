#include "ciprng/battery.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>

#include "ciprng/error.hpp"

namespace ciprng {
namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// handled by exactly one worker, so writes to per-index slots need no locking.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  workers.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

TestOutcome failed_outcome(TestId id, const std::exception& e) {
  TestOutcome out;
  out.name = std::string(to_string(id));
  out.verdict = Verdict::Fail;
  out.reason = e.what();
  return out;
}

double sequence_p_value(TestId id, const BitSequence& seq, std::size_t block_length) {
  switch (id) {
    case TestId::Monobit: return monobit_test(seq);
    case TestId::BlockFrequency: return block_frequency_test(seq, block_length);
    case TestId::Runs: return runs_test(seq);
    default: throw Error(ErrorCode::InvalidSpec, "not a per-sequence test");
  }
}

}  // namespace

std::string_view to_string(TestId id) noexcept {
  switch (id) {
    case TestId::Monobit: return "monobit";
    case TestId::BlockFrequency: return "block_frequency";
    case TestId::Runs: return "runs";
    case TestId::MatrixRank: return "matrix_rank";
    case TestId::CountTheOnes: return "count_the_ones";
  }
  return "unknown";
}

TestId parse_test_id(std::string_view name) {
  for (TestId id : all_tests()) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorCode::ConfigError, "unknown test '" + std::string(name) + "'");
}

std::vector<TestId> all_tests() {
  return {TestId::Monobit, TestId::BlockFrequency, TestId::Runs, TestId::MatrixRank, TestId::CountTheOnes};
}

std::size_t BatteryReport::passed() const {
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                                [](const TestOutcome& o) { return o.verdict == Verdict::Pass; }));
}

std::string BatteryReport::score() const { return std::to_string(passed()) + "/" + std::to_string(total()); }

unsigned worker_threads(unsigned requested) {
  unsigned threads = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("CIPRNG_THREADS"); cap != nullptr) {
    const long value = std::strtol(cap, nullptr, 10);
    if (value >= 1) threads = std::min(threads, static_cast<unsigned>(value));
  }
  return threads;
}

void check_dimensions(const BatteryConfig& config, std::size_t sequences, std::size_t bits, std::size_t words) {
  bool per_sequence = false;
  std::size_t stream_words = 0;
  for (TestId id : config.tests) {
    if (id == TestId::MatrixRank) stream_words = std::max(stream_words, kRankMatrices * 32);
    else if (id == TestId::CountTheOnes) stream_words = std::max(stream_words, (kCountOnesWords + 4 + 3) / 4);
    else per_sequence = true;
  }
  if (per_sequence) {
    if (sequences < 10) {
      throw Error(ErrorCode::TooFewSequences, "need at least 10 sequences, got " + std::to_string(sequences));
    }
    if (bits < 100) throw Error(ErrorCode::InsufficientData, "need n >= 100 bits, got " + std::to_string(bits));
    const bool block = std::find(config.tests.begin(), config.tests.end(), TestId::BlockFrequency) != config.tests.end();
    if (block && (config.block_length < 20 || config.block_length > bits)) {
      throw Error(ErrorCode::BadBlockLength, "block length " + std::to_string(config.block_length) +
                                                 " must satisfy 20 <= M <= n = " + std::to_string(bits));
    }
  }
  const std::size_t available = words > 0 ? words : sequences * bits / 32;
  if (available < stream_words) {
    throw Error(ErrorCode::InsufficientData, "stream tests need " + std::to_string(stream_words) + " words, got " +
                                                 std::to_string(available));
  }
}

BatteryReport run_battery(const BitCorpus& corpus, std::span<const std::uint32_t> words,
                          const BatteryConfig& config) {
  const bool needs_corpus =
      std::any_of(config.tests.begin(), config.tests.end(), [](TestId id) { return !is_stream_test(id); });
  if (needs_corpus || words.empty()) corpus.validate();

  const std::size_t s = corpus.sequence_count();
  const unsigned threads = worker_threads(config.threads);

  std::vector<TestId> per_sequence;
  for (TestId id : config.tests) {
    if (!is_stream_test(id)) per_sequence.push_back(id);
  }

  // p[t][i]: p-value of per-sequence test t on sequence i. A thrown error is
  // kept per test so one bad test does not sink the others.
  std::vector<std::vector<double>> p(per_sequence.size(), std::vector<double>(s, 0.0));
  std::vector<std::vector<std::string>> errors(per_sequence.size(), std::vector<std::string>(s));
  if (!per_sequence.empty()) {
    parallel_for(s, threads, [&](std::size_t i) {
      for (std::size_t t = 0; t < per_sequence.size(); ++t) {
        try {
          p[t][i] = sequence_p_value(per_sequence[t], corpus.sequences[i], config.block_length);
        } catch (const std::exception& e) {
          errors[t][i] = e.what();
        }
      }
    });
  }

  std::vector<std::uint32_t> pooled;
  if (words.empty() &&
      std::any_of(config.tests.begin(), config.tests.end(), [](TestId id) { return is_stream_test(id); })) {
    pooled = corpus.pooled_words();
    words = pooled;
  }

  BatteryReport report;
  std::size_t seq_index = 0;
  for (TestId id : config.tests) {
    try {
      if (id == TestId::MatrixRank) {
        report.outcomes.push_back(matrix_rank_test(words));
        continue;
      }
      if (id == TestId::CountTheOnes) {
        report.outcomes.push_back(count_the_ones_test(words));
        continue;
      }
      const std::size_t t = seq_index++;
      const auto bad = std::find_if(errors[t].begin(), errors[t].end(), [](const std::string& e) { return !e.empty(); });
      if (bad != errors[t].end()) throw Error(ErrorCode::InsufficientData, *bad);

      TestOutcome out;
      out.name = std::string(to_string(id));
      out.p_values = p[t];
      out.p_value_T = pvalue_uniformity(out.p_values);
      out.statistic = *out.p_value_T;
      out.proportion_passed = static_cast<std::size_t>(
          std::count_if(out.p_values.begin(), out.p_values.end(), [](double v) { return v >= kSequenceAlpha; }));
      out.proportion_threshold = proportion_threshold(s);
      out.verdict = *out.p_value_T >= kUniformityThreshold ? Verdict::Pass : Verdict::Fail;
      report.outcomes.push_back(std::move(out));
    } catch (const std::exception& e) {
      report.outcomes.push_back(failed_outcome(id, e));
    }
  }
  return report;
}

nlohmann::json to_json(const TestOutcome& outcome) {
  nlohmann::json j;
  j["statistic"] = outcome.statistic;
  j["p_values"] = outcome.p_values;
  j["p_value_T"] = outcome.p_value_T ? nlohmann::json(*outcome.p_value_T) : nlohmann::json(nullptr);
  j["verdict"] = outcome.verdict == Verdict::Pass ? "pass" : "fail";
  if (!outcome.reason.empty()) j["reason"] = outcome.reason;
  if (outcome.proportion_passed && outcome.proportion_threshold && !outcome.p_values.empty()) {
    const double fraction =
        static_cast<double>(*outcome.proportion_passed) / static_cast<double>(outcome.p_values.size());
    j["extra"] = {
        {"proportion_passed", *outcome.proportion_passed},
        {"proportion_threshold", *outcome.proportion_threshold},
        {"proportion_ok", fraction >= *outcome.proportion_threshold},
    };
  }
  return j;
}

nlohmann::json to_json(const BatteryReport& report) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& outcome : report.outcomes) j[outcome.name] = to_json(outcome);
  j["score"] = report.score();
  return j;
}

}  // namespace ciprng
