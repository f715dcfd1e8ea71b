#pragma once

#include "ans/automaton.hpp"
#include "ans/morphism.hpp"

namespace ans::catalog {

// Standard systems and machines used by the tests, the acceptance suite
// and the CLI examples under data/.

/// a*b* over a < b (minimal, 2 states).
Dfa ab_language();
/// {ε} ∪ 1{0,1}* over 0 < 1: binary representations with rep(0) = ε.
Dfa binary_language();
/// {ε} ∪ 1{0,01}* over 0 < 1: Fibonacci (Zeckendorf) representations.
Dfa fibonacci_language();
/// {a,c}*{b,d}{a,b}* ∪ {a,c}* over a < b < c < d.
Dfa acbd_language();
/// a* ∪ a*ba* ∪ a*ba*ba* over a < b.
Dfa three_block_language();
/// a*b* ∪ a*c* over a < b < c; val(a^n) = n².
Dfa squares_language();

/// 12-state machine over {a,b} counting (#a mod 4, #b mod 3), output
/// alphabet {0,1,2,3}: output 0 when #a ≡ 0 (mod 4), otherwise 1, 2 or 3
/// from the residues (i, j) with i = #a mod 4 ∈ {1,2,3}, j = #b mod 3:
/// 1 + ((i − 1 − j) mod 3).
Dfao teaching_dfao();
/// Parity of the number of 1s, over {0,1}.
Dfao thue_morse_dfao();
/// Constant output over the given alphabet with `states` equivalent states.
Dfao constant_dfao(const OrderedAlphabet& alphabet, std::size_t states);

/// 0 ↦ 0101, 1 ↦ 11.
Morphism loglog_morphism();
/// 0 ↦ 01, 1 ↦ 10.
Morphism thue_morse_morphism();

}  // namespace ans::catalog
