#include "ans/complexity.hpp"

#include <algorithm>
#include <cmath>

#include "ans/error.hpp"
#include "ans/substitutions.hpp"

namespace ans {

namespace {

/// Suffix automaton with per-state sorted transition lists; the alphabets
/// seen here are small.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(std::size_t capacity) {
    states_.reserve(2 * capacity + 1);
    states_.push_back({0, -1, {}});
  }

  void extend(Symbol c) {
    const int cur = static_cast<int>(states_.size());
    states_.push_back({states_[last_].len + 1, 0, {}});
    int p = last_;
    while (p != -1 && find(p, c) < 0) {
      set(p, c, cur);
      p = states_[p].link;
    }
    if (p != -1) {
      const int q = find(p, c);
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        const int clone = static_cast<int>(states_.size());
        State copy = states_[q];
        copy.len = states_[p].len + 1;
        states_.push_back(std::move(copy));
        while (p != -1 && find(p, c) == q) {
          set(p, c, clone);
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    last_ = cur;
  }

  /// counts[n] = number of distinct factors of length n, n ≤ n_max.
  std::vector<std::uint64_t> length_counts(std::size_t n_max) const {
    std::vector<std::int64_t> diff(n_max + 2, 0);
    for (std::size_t v = 1; v < states_.size(); ++v) {
      const auto lo = static_cast<std::size_t>(states_[states_[v].link].len) + 1;
      const auto hi = std::min(static_cast<std::size_t>(states_[v].len), n_max);
      if (lo > hi) continue;
      ++diff[lo];
      --diff[hi + 1];
    }
    std::vector<std::uint64_t> counts(n_max + 1, 0);
    counts[0] = 1;
    std::int64_t run = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      run += diff[n];
      counts[n] = static_cast<std::uint64_t>(run);
    }
    return counts;
  }

 private:
  struct State {
    int len;
    int link;
    std::vector<std::pair<Symbol, int>> next;
  };

  int find(int v, Symbol c) const {
    for (const auto& [s, t] : states_[v].next)
      if (s == c) return t;
    return -1;
  }
  void set(int v, Symbol c, int target) {
    for (auto& [s, t] : states_[v].next)
      if (s == c) {
        t = target;
        return;
      }
    states_[v].next.emplace_back(c, target);
  }

  std::vector<State> states_;
  int last_ = 0;
};

}  // namespace

std::vector<std::uint64_t> distinct_factor_counts(std::span<const Symbol> word, std::size_t n_max) {
  SuffixAutomaton sam(word.size());
  for (Symbol c : word) sam.extend(c);
  return sam.length_counts(n_max);
}

ComplexityProfile factor_count(std::span<const Symbol> prefix, std::size_t n_max) {
  if (n_max > prefix.size()) throw InvalidArgument("factor count: n_max exceeds the prefix length");
  ComplexityProfile profile;
  profile.prefix_length = prefix.size();
  profile.values = distinct_factor_counts(prefix, n_max);
  auto half = distinct_factor_counts(prefix.first(prefix.size() / 2), n_max);
  std::size_t horizon = 0;
  while (horizon < n_max && half[horizon + 1] == profile.values[horizon + 1]) ++horizon;
  profile.exactness_horizon = horizon;
  return profile;
}

ComplexityProfile factor_count(SymbolStream& stream, std::size_t prefix_length, std::size_t n_max) {
  if (n_max > prefix_length) throw InvalidArgument("factor count: n_max exceeds the prefix length");
  auto prefix = stream.take(prefix_length);
  return factor_count(std::span<const Symbol>(prefix), n_max);
}

double growth_exponent(const ComplexityProfile& profile, std::size_t lo, std::size_t hi) {
  if (lo < 1 || hi < lo || hi > profile.n_max()) throw InvalidArgument("growth exponent: bad fitting range");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(hi - lo + 1);
  for (std::size_t n = lo; n <= hi; ++n) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(static_cast<double>(std::max<std::uint64_t>(profile.p(n), 1)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  return denom == 0 ? 0.0 : (m * sxy - sx * sy) / denom;
}

const std::vector<std::string>& pansiot_classes() {
  static const std::vector<std::string> classes{"1", "n", "n log log n", "n log n", "n^2"};
  return classes;
}

Morphism quadratic_witness_morphism() {
  OrderedAlphabet a{"0", "1", "2"};
  return Morphism(a, a, {{0, 1}, {1, 2}, {2}});
}

WitnessReport quadratic_witness_check(const Morphism& phi, Symbol seed, Symbol run_letter,
                                      const WitnessOptions& options) {
  WitnessReport r;
  r.prefix_length = options.prefix_length;
  const std::size_t n_max = std::max(options.embed_n_max, options.fit_hi);

  auto w_stream = fixed_point(phi, seed);
  auto w = w_stream.take(options.prefix_length);
  r.fixed_point = factor_count(std::span<const Symbol>(w), n_max);

  auto sys = system_from_morphism(phi, seed);
  auto v_stream = sequence(sys.system, sys.machine);
  r.automatic = factor_count(v_stream, options.prefix_length, n_max);

  r.embedding_ok = true;
  for (std::size_t n = 1; n <= options.embed_n_max; ++n)
    if (r.automatic.p(n) < r.fixed_point.p(n)) r.embedding_ok = false;

  std::size_t run = 0;
  for (Symbol s : w) {
    run = s == run_letter ? run + 1 : 0;
    r.longest_run = std::max(r.longest_run, run);
  }
  r.run_target = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(options.prefix_length))));
  r.runs_ok = r.longest_run >= r.run_target;

  r.exponent = growth_exponent(r.fixed_point, options.fit_lo, options.fit_hi);
  r.exponent_threshold = options.exponent_threshold;
  r.exponent_ok = r.exponent >= options.exponent_threshold;
  return r;
}

WitnessReport quadratic_witness_check(std::size_t prefix_length) {
  WitnessOptions options;
  options.prefix_length = prefix_length;
  return quadratic_witness_check(quadratic_witness_morphism(), 0, 2, options);
}

UpperBoundReport upper_bound_check(SymbolStream& stream, std::size_t n_max, std::size_t prefix_length) {
  UpperBoundReport r;
  r.profile = factor_count(stream, prefix_length, n_max);
  for (std::size_t n = 2; n <= n_max; ++n)
    r.constant = std::max(r.constant, static_cast<double>(r.profile.p(n)) / static_cast<double>(n * n));
  for (std::size_t n = 2; 2 * n <= n_max; ++n)
    if (r.profile.p(2 * n) > 4 * r.profile.p(n)) r.doubling_violations.push_back(n);
  return r;
}

UpperBoundReport upper_bound_check(const AutomaticSequence& u, std::size_t n_max, std::size_t prefix_length) {
  auto stream = u.terms();
  return upper_bound_check(stream, n_max, prefix_length);
}

SymbolStream binomial_word_stream() {
  return SymbolStream([block = std::string{}, pos = std::size_t{0}, n = std::size_t{2},
                       word = std::string{}]() mutable -> std::optional<Symbol> {
    while (pos >= block.size()) {
      ++n;
      block.clear();
      pos = 0;
      word = std::string(n - 3, '0') + "111";
      do block += word;
      while (std::next_permutation(word.begin(), word.end()));
    }
    return static_cast<Symbol>(block[pos++] - '0');
  });
}

BinomialWordPrefix binomial_word(std::size_t n_terms) {
  BinomialWordPrefix out;
  auto stream = binomial_word_stream();
  out.bits = stream.take(n_terms);
  for (std::size_t i = 0; i < out.bits.size(); ++i)
    if (out.bits[i] == 1) out.ones.push_back(i);
  return out;
}

RatioReport quadratic_ratio_check(SymbolStream& stream, std::size_t n_terms) {
  RatioReport r;
  r.n_terms = n_terms;
  r.conclusive = n_terms >= 1000;
  const auto cap = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_terms)) / 4);
  for (std::size_t n = 2; n <= cap; n *= 2) r.grid.push_back(n);
  if (r.grid.size() < 2) r.conclusive = false;
  const std::size_t n_max = r.grid.empty() ? std::min<std::size_t>(1, n_terms) : r.grid.back();
  r.profile = factor_count(stream, n_terms, n_max);
  for (std::size_t n : r.grid) r.ratios.push_back(static_cast<double>(r.profile.p(n)) / static_cast<double>(n * n));
  if (r.ratios.size() >= 2) r.growth = r.ratios.back() / r.ratios.front();
  return r;
}

RatioReport super_quadratic_check(std::size_t n_terms) {
  auto stream = binomial_word_stream();
  return quadratic_ratio_check(stream, n_terms);
}

}  // namespace ans
