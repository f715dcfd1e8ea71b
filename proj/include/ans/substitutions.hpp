#pragma once

#include <vector>

#include "ans/automatic.hpp"
#include "ans/morphism.hpp"

namespace ans {

/// Name of the fresh letter α added by state_morphism().
inline constexpr std::string_view kAlphaName = "@alpha";

/// φ_M over K ∪ {α}: α ↦ α s and k ↦ δ(k,σ_1)…δ(k,σ_n). Its fixed point
/// from α, with the leading α dropped, lists δ(s, w) for the words w of Σ*
/// in shortlex order starting with w = ε.
struct StateMorphism {
  Morphism phi;
  /// Index of α; the states of M keep their indices 0 … #K−1.
  Symbol alpha;
};

/// Throws InvalidArgument if M is not complete.
StateMorphism state_morphism(const Automaton& m);

/// The substitution (φ_M, h, α) of the product of `language` and `machine`
/// with h(α) = ε, h((k,k')) = ε if k is not final and τ(k') otherwise.
/// It generates the sequence of `machine` on the numeration system of
/// `language`. Throws DomainError if the machine has no output on some
/// word of the language.
Substitution substitution_of(const Dfa& language, const Dfao& machine);
Substitution substitution_of(const AutomaticSequence& u);

/// T_(L,<,M): substitution_of(minimal automaton of L, reduced accessible M).
Substitution canonical_substitution(const Dfa& language, const Dfao& machine);

/// Numeration system and machine built from a morphism φ prolongable on a
/// seed: states are the letters, δ(x, σ_i) is the i-th letter of φ(x)
/// (undefined past |φ(x)|), all states final, the seed is the start and
/// τ is the identity. Σ = {a < b < …} has max |φ(x)| letters.
struct MorphicSystem {
  NumerationSystem system;
  Dfao machine;
};

/// Throws InvalidArgument if φ is not prolongable on the seed or some
/// image is empty.
MorphicSystem system_from_morphism(const Morphism& phi, Symbol seed);

/// Letter map m : Σ ∪ Δ → Σ' ∪ Δ', given separately on Σ and on Δ.
struct SubstitutionMap {
  std::vector<Symbol> on_letters;
  std::vector<Symbol> on_outputs;
};

/// True iff m is a morphism of substitutions T → T': surjective with
/// m(Σ) = Σ', m(Δ) = Δ', m(c) = c', m(φ(σ)) = φ'(m(σ)) and
/// m(h(σ)) = h'(m(σ)) for every σ ∈ Σ. Throws InvalidArgument when m is
/// not total.
bool is_substitution_morphism(const SubstitutionMap& m, const Substitution& t, const Substitution& target);

}  // namespace ans
