#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ans/automaton.hpp"
#include "ans/numeration.hpp"
#include "ans/operations.hpp"
#include "ans/stream.hpp"

namespace ans {

/// An S-automatic sequence: u_{n+1} = τ(δ(s, rep_S(n))).
///
/// Ranks are 0-based (term(n) is u_{n+1}); sequence positions reported by
/// gap analyses are 1-based.
class AutomaticSequence {
 public:
  /// Throws InvalidArgument when the machine alphabet differs from Σ.
  AutomaticSequence(NumerationSystem system, Dfao machine);

  const NumerationSystem& system() const { return system_; }
  const Dfao& machine() const { return machine_; }
  const OrderedAlphabet& output_alphabet() const { return machine_.output_alphabet(); }

  /// u_{n+1}. Throws DomainError if the machine has no output for rep(n).
  Symbol term(const Rank& n) const;

  /// u_{from+1}, u_{from+2}, ... computed by streaming the shortlex
  /// enumeration of L through the machine.
  SymbolStream terms(const Rank& from = 0) const;

 private:
  NumerationSystem system_;
  Dfao machine_;
};

/// The sequence generated by feeding the words of L to M.
SymbolStream sequence(const NumerationSystem& system, const Dfao& machine);

/// Minimal DFA of the fiber F_S(u, a) = { rep(n) : u_{n+1} = a }, built as
/// L ∩ (machine with finals τ⁻¹(a)).
Dfa fiber(const AutomaticSequence& u, Symbol a);

/// Builds a DFAO over the product of the fiber automata. States reached by
/// a word of L output the unique a whose fiber contains the word; the other
/// product states output ⊥. Throws FiberPartitionError (with a witness
/// word) when the fibers overlap or do not cover L.
Dfao dfao_from_fibers(const NumerationSystem& system, const std::map<Symbol, Dfa>& fibers,
                      const OrderedAlphabet& output_alphabet);

/// One class of the kernel { n ↦ u_{val(w z_n)} : w ∈ Σ* }.
struct KernelClass {
  std::size_t class_id = 0;
  /// Shortlex-least prefix w in the class.
  Word representative_prefix;
  /// State of w in (minimal automaton of L, reduced machine); kDead marks
  /// the dead component.
  std::pair<State, State> pair_state{kDead, kDead};
  /// True when K_w is empty (no continuation of w lies in L).
  bool empty = false;
};

struct Kernel {
  std::vector<KernelClass> classes;
  /// #K_L and #K' of the completed minimal L-automaton and reduced machine.
  std::size_t language_states = 0;
  std::size_t machine_states = 0;
  /// Reachable pairs before behavioural merging.
  std::size_t reachable_pairs = 0;

  /// Reads a prefix w and outputs the class id of w.
  std::optional<Dfao> classifier;

  /// Finite-index bound #K_L · #K'.
  std::size_t bound() const { return language_states * machine_states; }
  std::size_t class_of(WordView w) const { return classifier->eval(w); }
};

/// Kernel classes from the reachable pair states of the minimal automaton of
/// L and the reduced machine, merged by exact behavioural equivalence
/// (equal outputs on every continuation accepted by L).
Kernel kernel(const AutomaticSequence& u);

/// n ↦ u_{val(w z_n)} over K_w = { wz ∈ L } in shortlex order; empty when
/// K_w = ∅.
SymbolStream subsequence(const AutomaticSequence& u, WordView prefix);
SymbolStream subsequence(const AutomaticSequence& u, const KernelClass& k);

/// Black-box term function: rank n (0-based) ↦ u_{n+1}.
using TermFunction = std::function<Symbol(const Rank&)>;

struct KernelReconstructionOptions {
  /// Subsequences are told apart by their first `bound` terms.
  std::size_t bound = 48;
  /// Exploration stops with BoundExceeded beyond this many states.
  std::size_t max_states = 2048;
  /// The result is checked against the term function on ranks below this.
  std::size_t verify_terms = 2000;
};

/// Rebuilds a DFAO from a term function: states are the distinct
/// subsequences q_w (paired with the residual class of w in L so that
/// δ(q_w, σ) = q_{wσ} is well defined), τ(q_w) = u_{val(w)} for w ∈ L.
/// Throws BoundExceeded when the exploration does not close within
/// `max_states` or the result disagrees with `term` before `verify_terms`.
Dfao dfao_from_kernel(const TermFunction& term, const NumerationSystem& system,
                      const OrderedAlphabet& output_alphabet, const KernelReconstructionOptions& options = {});

struct OccurrenceGaps {
  /// 1-based start positions of the factor in u_1 … u_horizon.
  std::vector<std::size_t> positions;
  /// Successive differences of `positions`.
  std::vector<std::size_t> gaps;

  std::size_t max_gap() const;
};

/// Occurrences of `factor` among the first `horizon` terms of the stream.
OccurrenceGaps occurrence_gaps(SymbolStream& stream, WordView factor, std::size_t horizon);

}  // namespace ans
