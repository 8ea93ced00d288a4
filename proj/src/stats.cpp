#include "ciprng/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "ciprng/error.hpp"
#include "ciprng/kernels.hpp"
#include "ciprng/special.hpp"

namespace ciprng {
namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double monobit_p_value(std::uint64_t ones, std::size_t n) {
  const double s = 2.0 * static_cast<double>(ones) - static_cast<double>(n);
  return clamp01(erfc(std::fabs(s) / std::sqrt(2.0 * static_cast<double>(n))));
}

double monobit_test(const BitSequence& seq) {
  if (seq.size() < 100) {
    throw Error(ErrorCode::SequenceTooShort, "frequency test needs n >= 100, got " + std::to_string(seq.size()));
  }
  const auto words = seq.words();
  return monobit_p_value(kernels::active().popcount(words.data(), words.size()), seq.size());
}

double block_frequency_test(const BitSequence& seq, std::size_t block_length) {
  if (block_length < 20 || block_length > seq.size()) {
    throw Error(ErrorCode::BadBlockLength, "block length " + std::to_string(block_length) +
                                               " must satisfy 20 <= M <= n = " + std::to_string(seq.size()));
  }
  const std::size_t blocks = seq.size() / block_length;
  std::vector<std::uint32_t> ones(blocks);
  kernels::active().block_popcounts(seq.words().data(), seq.size(), block_length, ones.data());
  double sum = 0.0;
  for (std::uint32_t c : ones) {
    const double dev = static_cast<double>(c) / static_cast<double>(block_length) - 0.5;
    sum += dev * dev;
  }
  const double chi2 = 4.0 * static_cast<double>(block_length) * sum;
  return igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0);
}

double runs_test(const BitSequence& seq) {
  const std::size_t n = seq.size();
  if (n < 2) return 0.0;
  const auto& k = kernels::active();
  const auto words = seq.words();
  const double nd = static_cast<double>(n);
  const double pi = static_cast<double>(k.popcount(words.data(), words.size())) / nd;
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(nd)) return 0.0;
  const double runs = 1.0 + static_cast<double>(k.transitions(words.data(), n));
  const double spread = pi * (1.0 - pi);
  return clamp01(erfc(std::fabs(runs - 2.0 * nd * spread) / (2.0 * kSqrt2 * std::sqrt(nd) * spread)));
}

double pvalue_uniformity(std::span<const double> p_values) {
  if (p_values.size() < 10) {
    throw Error(ErrorCode::TooFewSequences, "uniformity check needs >= 10 p-values, got " +
                                                std::to_string(p_values.size()));
  }
  std::array<std::size_t, 10> bins{};
  for (double p : p_values) {
    const auto bin = static_cast<std::size_t>(std::clamp(p, 0.0, 1.0) * 10.0);
    ++bins[std::min<std::size_t>(bin, 9)];
  }
  const double expected = static_cast<double>(p_values.size()) / 10.0;
  double chi2 = 0.0;
  for (std::size_t count : bins) {
    const double d = static_cast<double>(count) - expected;
    chi2 += d * d / expected;
  }
  return igamc(9.0 / 2.0, chi2 / 2.0);
}

double proportion_threshold(std::size_t sequences) {
  const double p = 1.0 - kSequenceAlpha;
  return p - 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(sequences));
}

unsigned gf2_rank(std::span<const std::uint32_t, 32> rows) { return kernels::active().gf2_rank32(rows.data()); }

double rank_probability(unsigned n, unsigned r) {
  if (r > n) return 0.0;
  long double product = 1.0L;
  for (unsigned i = 0; i < r; ++i) {
    const long double num = 1.0L - std::ldexp(1.0L, static_cast<int>(i) - static_cast<int>(n));
    const long double den = 1.0L - std::ldexp(1.0L, static_cast<int>(i) - static_cast<int>(r));
    product *= num * num / den;
  }
  const int exponent = static_cast<int>(r * (2 * n - r)) - static_cast<int>(n * n);
  return static_cast<double>(std::ldexp(product, exponent));
}

std::array<double, 4> rank_probabilities() {
  double low = 0.0;
  for (unsigned r = 0; r <= 29; ++r) low += rank_probability(32, r);
  return {rank_probability(32, 32), rank_probability(32, 31), rank_probability(32, 30), low};
}

TestOutcome matrix_rank_test(std::span<const std::uint32_t> words) {
  const std::size_t needed = kRankMatrices * 32;
  if (words.size() < needed) {
    throw Error(ErrorCode::InsufficientData, "matrix rank test needs " + std::to_string(needed) +
                                                 " words, got " + std::to_string(words.size()));
  }
  const auto& k = kernels::active();
  std::array<std::size_t, 4> counts{};
  for (std::size_t m = 0; m < kRankMatrices; ++m) {
    const unsigned rank = k.gf2_rank32(words.data() + 32 * m);
    ++counts[rank >= 30 ? 32 - rank : 3];
  }
  const auto probs = rank_probabilities();
  double chi2 = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    const double expected = probs[c] * static_cast<double>(kRankMatrices);
    const double d = static_cast<double>(counts[c]) - expected;
    chi2 += d * d / expected;
  }
  TestOutcome out;
  out.name = "matrix_rank";
  out.statistic = chi2;
  const double p = chi_square_cdf(chi2, 3.0);
  out.p_values = {p};
  out.verdict = diehard_verdict(p);
  return out;
}

unsigned count_ones_letter(std::uint8_t byte) noexcept {
  static constexpr std::array<unsigned, 9> kLetter = {0, 0, 0, 1, 2, 3, 4, 4, 4};
  return kLetter[static_cast<unsigned>(std::popcount(byte))];
}

std::array<double, 5> count_ones_letter_probabilities() {
  return {37.0 / 256.0, 56.0 / 256.0, 70.0 / 256.0, 56.0 / 256.0, 37.0 / 256.0};
}

TestOutcome count_the_ones_test(std::span<const std::uint8_t> bytes) {
  const std::size_t needed = kCountOnesWords + 4;
  if (bytes.size() < needed) {
    throw Error(ErrorCode::InsufficientData, "count-the-1's needs " + std::to_string(needed) +
                                                 " bytes, got " + std::to_string(bytes.size()));
  }
  std::vector<std::uint8_t> letters(needed);
  kernels::active().byte_letters(bytes.data(), needed, letters.data());

  std::vector<std::uint32_t> words5(3125, 0);
  std::vector<std::uint32_t> words4(625, 0);
  unsigned word = 0;
  for (std::size_t i = 0; i < 4; ++i) word = word * 5 + letters[i];
  for (std::size_t i = 4; i < needed; ++i) {
    word = (word * 5 + letters[i]) % 3125;
    ++words5[word];
    ++words4[word % 625];
  }

  const auto p = count_ones_letter_probabilities();
  const double n = static_cast<double>(kCountOnesWords);
  auto pearson = [&](const std::vector<std::uint32_t>& counts, unsigned letters_per_word) {
    double q = 0.0;
    for (unsigned idx = 0; idx < counts.size(); ++idx) {
      double expected = n;
      unsigned rest = idx;
      for (unsigned l = 0; l < letters_per_word; ++l) {
        expected *= p[rest % 5];
        rest /= 5;
      }
      const double d = static_cast<double>(counts[idx]) - expected;
      q += d * d / expected;
    }
    return q;
  };
  const double q5 = pearson(words5, 5);
  const double q4 = pearson(words4, 4);
  const double z = (q5 - q4 - 2500.0) / std::sqrt(5000.0);

  TestOutcome out;
  out.name = "count_the_ones";
  out.statistic = z;
  const double pv = normal_cdf(z);
  out.p_values = {pv};
  out.verdict = diehard_verdict(pv);
  return out;
}

TestOutcome count_the_ones_test(std::span<const std::uint32_t> words) {
  const std::size_t used = std::min(words.size(), (kCountOnesWords + 4 + 3) / 4);
  std::vector<std::uint8_t> bytes;
  bytes.reserve(used * 4);
  for (std::uint32_t w : words.first(used)) {
    for (int b = 0; b < 4; ++b) bytes.push_back(static_cast<std::uint8_t>(w >> (8 * b)));
  }
  return count_the_ones_test(std::span<const std::uint8_t>(bytes));
}

Verdict diehard_verdict(double p) noexcept {
  return (p > kDiehardHigh || p < kDiehardLow) ? Verdict::Fail : Verdict::Pass;
}

}  // namespace ciprng
