#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ans/automaton.hpp"

namespace ans {

// Constructions on Dfa / Dfao values. Every function is pure; results use
// BFS numbering from the start state in alphabet order unless noted.

/// Materializes the dead state (named "@dead", non-final / output ⊥).
/// Returns a copy when the automaton is already complete.
Dfa complete(const Dfa& a);
Dfao complete(const Dfao& m);

/// Keeps the states reachable from the start state, renumbered in BFS order.
Dfa accessible(const Dfa& a);
Dfao accessible(const Dfao& m);

/// Accessible and co-accessible part. An empty language yields a single
/// non-final start state without transitions.
Dfa trim(const Dfa& a);

/// Minimal partial DFA (dead state implicit) for the same language. States
/// are renamed q0, q1, ... in BFS order, so equal languages give identical
/// automata.
Dfa minimize(const Dfa& a);

/// Accessible copy in which states p, q with τ(δ(p,w)) = τ(δ(q,w)) for all
/// words w are merged (Moore refinement of the output partition).
Dfao reduce_dfao(const Dfao& m);

/// Greedy state merging that treats ⊥ outputs, and transitions into parts
/// of the machine where every output is ⊥, as unspecified. The result
/// agrees with m on every word for which m has an output; it is small but
/// not guaranteed to be minimum (that problem is NP-hard in general).
Dfao merge_unspecified(const Dfao& m);

bool is_empty(const Dfa& a);
/// True iff the accepted language is infinite.
bool is_infinite(const Dfa& a);

/// Shortlex-least accepted word, if any.
std::optional<Word> shortest_word(const Dfa& a);

Dfa intersect(const Dfa& a, const Dfa& b);
Dfa unite(const Dfa& a, const Dfa& b);
/// L(a) \ L(b).
Dfa difference(const Dfa& a, const Dfa& b);

struct Equivalence {
  bool equivalent = false;
  /// Shortlex-least word accepted by exactly one of the automata.
  std::optional<Word> witness;

  explicit operator bool() const { return equivalent; }
};

/// Language equality. Throws InvalidArgument on alphabet mismatch.
Equivalence equivalent(const Dfa& a, const Dfa& b);

/// Product of a DFA with a DFAO over reachable pairs of the completed
/// automata. The product machine carries the DFAO output of the right
/// component; `left_final` records the finality of the left component.
struct ProductDfao {
  Dfao machine;
  std::vector<bool> left_final;
  /// (left, right) state of each product state; kDead for a dead component.
  std::vector<std::pair<State, State>> components;
};

ProductDfao product(const Dfa& a, const Dfao& b);

/// Shortlex-least word reaching each state; nullopt for unreachable ones.
std::vector<std::optional<Word>> access_words(const Automaton& a);

/// Structure of `m` with finals = τ⁻¹(a).
Dfa preimage(const Dfao& m, Symbol output);

}  // namespace ans
