#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <vector>

#include <gmpxx.h>

#include "ans/automaton.hpp"
#include "ans/stream.hpp"

namespace ans {

/// Arbitrary-precision natural number used for ranks and word counts.
using Natural = mpz_class;
/// Position of a word of L in shortlex order (val_S); 0 is the first word.
using Rank = mpz_class;

/// rep() refuses ranks whose representation would be longer than this
/// (a*b* reaches it near rank 5·10⁹; the count table would not fit).
inline constexpr std::size_t kMaxRepLength = 100000;

/// Lazily grown table count(q, m) = number of words of length m accepted
/// from state q of a trimmed DFA. Rows are filled on demand under a mutex;
/// filled rows never move, so returned references stay valid.
class CountTable {
 public:
  explicit CountTable(Dfa trimmed);

  const Dfa& automaton() const { return dfa_; }

  /// Row m: counts for every state. Grows the table if needed.
  const std::vector<Natural>& row(std::size_t m) const;
  const Natural& count(State q, std::size_t m) const;
  bool nonempty(State q, std::size_t m) const { return q != kDead && sgn(count(q, m)) > 0; }

  /// True when infinitely many words are accepted from q.
  bool infinite_from(State q) const { return q != kDead && infinite_[q]; }

 private:
  Dfa dfa_;
  std::vector<bool> infinite_;
  mutable std::mutex mu_;
  mutable std::deque<std::vector<Natural>> rows_;
};

/// Abstract numeration system S = (L, Σ, <): the words of an infinite
/// regular language enumerated in shortlex order. rep(n) is the (n+1)-th
/// word of L and val is its inverse.
///
/// Copies share the count table; the shared table is internally
/// synchronized, so a system may be used from several threads.
class NumerationSystem {
 public:
  /// Trims `language`; throws FiniteLanguage if L(language) is finite.
  explicit NumerationSystem(const Dfa& language);

  /// The trimmed automaton of L (partial, dead state implicit).
  const Dfa& language() const { return table_->automaton(); }
  const OrderedAlphabet& alphabet() const { return language().alphabet(); }
  const CountTable& counts() const { return *table_; }

  bool contains(WordView w) const { return language().accepts(w); }

  /// S-representation of n. Throws DomainError past kMaxRepLength.
  Word rep(const Rank& n) const;
  /// Numerical value of w; throws NotInLanguage if w ∉ L.
  Rank val(WordView w) const;

  /// #(L ∩ Σ^length).
  Natural count_words(std::size_t length) const;
  /// Number of words of L shorter than `length`, i.e. val of the first
  /// word of that length when one exists.
  Natural count_shorter(std::size_t length) const;

  /// rep(from), rep(from + 1), ...
  WordStream enumerate(const Rank& from = 0) const;

  /// The words z with δ(q, z) final, in shortlex order (finite streams end).
  /// Used for the continuations {z : wz ∈ L} of a prefix w reaching q.
  WordStream enumerate_residual(State q) const;

 private:
  std::shared_ptr<const CountTable> table_;
};

/// Shortlex successor of `w` among the words accepted from `root` of a
/// counted automaton; `path` holds the states visited along `w`
/// (path.size() == w.size() + 1). Returns false when no successor exists.
bool shortlex_successor(const CountTable& table, State root, Word& w, std::vector<State>& path);

}  // namespace ans
