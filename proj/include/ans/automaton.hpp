#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ans/alphabet.hpp"

namespace ans {

using State = std::uint32_t;

/// The implicit dead state of a partial automaton.
inline constexpr State kDead = std::numeric_limits<State>::max();
/// Output of the dead state and of placeholder ("⊥") states.
inline constexpr Symbol kNoOutput = std::numeric_limits<Symbol>::max();

/// Name given to a dead state when an automaton is completed.
inline constexpr std::string_view kDeadStateName = "@dead";

/// Deterministic, possibly partial, transition structure shared by Dfa and
/// Dfao. A missing transition is stored as kDead.
class Automaton {
 public:
  const OrderedAlphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return names_.size(); }
  State start() const { return start_; }

  State next(State q, Symbol a) const {
    return q == kDead ? kDead : trans_[static_cast<std::size_t>(q) * alphabet_.size() + a];
  }
  State run(WordView w) const { return run(start_, w); }
  State run(State q, WordView w) const {
    for (Symbol a : w) {
      if (q == kDead) break;
      q = next(q, a);
    }
    return q;
  }

  /// True when no transition leads to the implicit dead state.
  bool is_complete() const;

  const std::string& state_name(State q) const;
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<State> find_state(std::string_view name) const;

  /// Row-major (state, symbol) → state table.
  std::span<const State> transitions() const { return trans_; }

 protected:
  Automaton(OrderedAlphabet alphabet, State start, std::vector<State> trans,
            std::vector<std::string> names);

 private:
  OrderedAlphabet alphabet_;
  State start_ = 0;
  std::vector<State> trans_;
  std::vector<std::string> names_;
};

/// Deterministic finite automaton with final states.
class Dfa : public Automaton {
 public:
  /// `trans` has num_states * |alphabet| entries; `names` may be empty, in
  /// which case states are called q0, q1, ...
  Dfa(OrderedAlphabet alphabet, State start, std::vector<State> trans,
      std::vector<bool> finals, std::vector<std::string> names = {});
  /// Reuses the transition structure of another automaton.
  Dfa(const Automaton& structure, std::vector<bool> finals);

  bool is_final(State q) const { return q != kDead && finals_[q]; }
  bool accepts(WordView w) const { return is_final(run(w)); }
  const std::vector<bool>& finals() const { return finals_; }

 private:
  std::vector<bool> finals_;
};

/// Deterministic finite automaton with output. Output kNoOutput marks a
/// placeholder state (serialized as "⊥").
class Dfao : public Automaton {
 public:
  Dfao(OrderedAlphabet alphabet, OrderedAlphabet output_alphabet, State start,
       std::vector<State> trans, std::vector<Symbol> outputs,
       std::vector<std::string> names = {});
  Dfao(const Automaton& structure, OrderedAlphabet output_alphabet,
       std::vector<Symbol> outputs);

  const OrderedAlphabet& output_alphabet() const { return output_alphabet_; }
  Symbol output(State q) const { return q == kDead ? kNoOutput : outputs_[q]; }
  /// τ(δ(s, w)); kNoOutput when the run dies or ends on a placeholder.
  Symbol eval(WordView w) const { return output(run(w)); }
  const std::vector<Symbol>& outputs() const { return outputs_; }

 private:
  OrderedAlphabet output_alphabet_;
  std::vector<Symbol> outputs_;
};

}  // namespace ans
