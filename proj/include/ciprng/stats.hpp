#pragma once

// NIST-style frequency, block-frequency and runs tests, the P-value_T
// uniformity rule, and the DieHARD 32x32 binary rank and COUNT-THE-1's
// (stream) tests.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ciprng/bits.hpp"

namespace ciprng {

enum class Verdict { Pass, Fail };

/// Outcome of one test over a set of sequences (NIST style) or one stream
/// (DieHARD style). For DieHARD tests p_value_T is empty and p_values holds
/// the single P = F(X) value.
struct TestOutcome {
  std::string name;
  double statistic = 0.0;
  std::vector<double> p_values;
  std::optional<double> p_value_T;
  Verdict verdict = Verdict::Fail;
  std::string reason;  // set when the test could not run or failed a precondition

  // NIST proportion-of-passing-sequences check; reported, not part of the verdict.
  std::optional<std::size_t> proportion_passed;
  std::optional<double> proportion_threshold;
};

inline constexpr double kUniformityThreshold = 0.0001;   // P-value_T >= this passes
inline constexpr double kSequenceAlpha = 0.01;           // per-sequence significance
inline constexpr double kDiehardLow = 0.0001;            // P < this fails
inline constexpr double kDiehardHigh = 0.9999;           // P > this fails

// ---- single-sequence NIST-style statistics --------------------------------

/// erfc(|S_n| / sqrt(2n)), S_n = ones - zeros. No length precondition.
double monobit_p_value(std::uint64_t ones, std::size_t n);

/// Frequency test; requires n >= 100 (SequenceTooShort).
double monobit_test(const BitSequence& seq);

/// Block frequency test with block length M; requires n >= M >= 20 (BadBlockLength).
double block_frequency_test(const BitSequence& seq, std::size_t block_length);

/// Runs test. Returns 0 when the frequency prerequisite |pi - 1/2| < 2/sqrt(n) fails.
double runs_test(const BitSequence& seq);

// ---- aggregation -----------------------------------------------------------

/// Chi-square over 10 equal bins of [0, 1]; returns igamc(9/2, chi2/2).
/// Requires at least 10 p-values (TooFewSequences).
double pvalue_uniformity(std::span<const double> p_values);

/// Minimum passing proportion: 1 - a - 3 sqrt(a (1 - a) / s) with a = kSequenceAlpha.
double proportion_threshold(std::size_t sequences);

// ---- DieHARD-style ---------------------------------------------------------

/// Rank over GF(2) of a 32x32 matrix given as 32 row words.
unsigned gf2_rank(std::span<const std::uint32_t, 32> rows);

/// Probabilities of rank 32, 31, 30 and <= 29 for a uniform random 32x32 matrix.
std::array<double, 4> rank_probabilities();

/// Probability that a uniform random n x n matrix over GF(2) has rank r.
double rank_probability(unsigned n, unsigned r);

inline constexpr std::size_t kRankMatrices = 40'000;

/// 40,000 matrices from consecutive groups of 32 words; chi-square with 3 dof
/// on rank classes {32, 31, 30, <=29}. Throws InsufficientData.
TestOutcome matrix_rank_test(std::span<const std::uint32_t> words);

inline constexpr std::size_t kCountOnesWords = 256'000;

/// Letter class of a byte: popcount 0-2 -> 0 (A), 3 -> 1, 4 -> 2, 5 -> 3, 6-8 -> 4 (E).
unsigned count_ones_letter(std::uint8_t byte) noexcept;

/// Letter probabilities (37, 56, 70, 56, 37) / 256.
std::array<double, 5> count_ones_letter_probabilities();

/// COUNT-THE-1's on a byte stream: 256,000 overlapping 5-letter words,
/// z = (Q5 - Q4 - 2500) / sqrt(5000), P = Phi(z). Needs 256,004 bytes.
TestOutcome count_the_ones_test(std::span<const std::uint8_t> bytes);

/// Same test over words, each contributing its 4 bytes low byte first.
TestOutcome count_the_ones_test(std::span<const std::uint32_t> words);

/// DieHARD decision rule: fail when P > 0.9999 or P < 0.0001.
Verdict diehard_verdict(double p) noexcept;

}  // namespace ciprng
