#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ans/automatic.hpp"
#include "ans/morphism.hpp"
#include "ans/stream.hpp"

namespace ans {

/// Distinct-factor counts p(1..n_max) of a finite prefix. Every value is a
/// lower bound of the complexity of the infinite word; nothing here claims
/// exactness for the infinite word.
struct ComplexityProfile {
  std::size_t prefix_length = 0;
  /// values[n] = number of distinct length-n factors; values[0] = 1.
  std::vector<std::uint64_t> values;
  /// Largest n such that p(1..n) already agrees on the first half of the
  /// prefix (saturation evidence; not a proof of exactness).
  std::size_t exactness_horizon = 0;

  std::size_t n_max() const { return values.empty() ? 0 : values.size() - 1; }
  std::uint64_t p(std::size_t n) const { return values.at(n); }
};

/// Counts distinct factors of every length ≤ n_max with a suffix automaton.
std::vector<std::uint64_t> distinct_factor_counts(std::span<const Symbol> word, std::size_t n_max);

/// Profile of the first `prefix_length` items of the stream. Throws
/// InvalidArgument if n_max > prefix_length.
ComplexityProfile factor_count(SymbolStream& stream, std::size_t prefix_length, std::size_t n_max);
ComplexityProfile factor_count(std::span<const Symbol> prefix, std::size_t n_max);

/// Least-squares slope of log p(n) against log n over [lo, hi].
double growth_exponent(const ComplexityProfile& profile, std::size_t lo, std::size_t hi);

/// Pansiot's growth classes of purely morphic words, shown in reports.
const std::vector<std::string>& pansiot_classes();

/// 0 ↦ 01, 1 ↦ 12, 2 ↦ 2 over {0, 1, 2}.
Morphism quadratic_witness_morphism();

struct WitnessOptions {
  std::size_t prefix_length = 100000;
  /// Embedding p_v(n) ≥ p_w(n) is checked for n ≤ embed_n_max.
  std::size_t embed_n_max = 30;
  std::size_t fit_lo = 8;
  std::size_t fit_hi = 30;
  double exponent_threshold = 1.7;
};

struct WitnessReport {
  std::size_t prefix_length = 0;
  ComplexityProfile fixed_point;  // w = φ^ω(seed)
  ComplexityProfile automatic;    // v built by system_from_morphism
  bool embedding_ok = false;
  /// Longest run of the run letter in the prefix of w, and the target
  /// floor(log2(prefix_length)).
  std::size_t longest_run = 0;
  std::size_t run_target = 0;
  bool runs_ok = false;
  double exponent = 0.0;
  double exponent_threshold = 0.0;
  bool exponent_ok = false;

  bool passed() const { return embedding_ok && runs_ok && exponent_ok; }
};

/// Compares the fixed point w of φ with the automatic sequence v of
/// system_from_morphism(φ, seed): embedding p_v ≥ p_w, runs of `run_letter`
/// in w, and the fitted growth exponent of p_w.
WitnessReport quadratic_witness_check(const Morphism& phi, Symbol seed, Symbol run_letter,
                                      const WitnessOptions& options = {});
/// The same check for the quadratic witness 0 ↦ 01, 1 ↦ 12, 2 ↦ 2.
WitnessReport quadratic_witness_check(std::size_t prefix_length);

struct UpperBoundReport {
  ComplexityProfile profile;
  /// max over n ∈ [2, n_max] of p(n) / n².
  double constant = 0.0;
  /// Values of n with p(2n) > 4 p(n) (faster than quadratic over a doubling).
  std::vector<std::size_t> doubling_violations;

  bool passed() const { return doubling_violations.empty(); }
};

UpperBoundReport upper_bound_check(const AutomaticSequence& u, std::size_t n_max, std::size_t prefix_length = 100000);
UpperBoundReport upper_bound_check(SymbolStream& stream, std::size_t n_max, std::size_t prefix_length);

/// Prefix of w = w_0 w_1 w_2 …, where w_{n−3} concatenates the length-n
/// binary words with exactly three 1s in lexicographic order.
struct BinomialWordPrefix {
  std::vector<Symbol> bits;
  /// Elements of W (positions of the 1s, 0-based) below bits.size().
  std::vector<std::size_t> ones;
};

BinomialWordPrefix binomial_word(std::size_t n_terms);
SymbolStream binomial_word_stream();

struct RatioReport {
  std::size_t n_terms = 0;
  ComplexityProfile profile;
  std::vector<std::size_t> grid;
  /// p(n) / n² on the grid.
  std::vector<double> ratios;
  /// ratios.back() / ratios.front().
  double growth = 0.0;
  double threshold = 2.0;
  bool conclusive = false;

  bool passed() const { return conclusive && growth >= threshold; }
};

/// p(n)/n² over the geometric grid n = 2, 4, 8, … ≤ sqrt(n_terms)/4 of a
/// prefix of the stream. Fewer than 1000 terms is inconclusive.
RatioReport quadratic_ratio_check(SymbolStream& stream, std::size_t n_terms);
/// quadratic_ratio_check on the binomial word.
RatioReport super_quadratic_check(std::size_t n_terms);

}  // namespace ans
