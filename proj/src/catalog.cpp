#include "ans/catalog.hpp"

namespace ans::catalog {

namespace {
constexpr State D = kDead;
}

Dfa ab_language() {
  return Dfa({"a", "b"}, 0, {0, 1, D, 1}, {true, true});
}

Dfa binary_language() {
  return Dfa({"0", "1"}, 0, {D, 1, 1, 1}, {true, true});
}

Dfa fibonacci_language() {
  // q1: just read a 1; q2: just read a 0.
  return Dfa({"0", "1"}, 0, {D, 1, 2, D, 2, 1}, {true, true, true});
}

Dfa acbd_language() {
  return Dfa({"a", "b", "c", "d"}, 0, {0, 1, 0, 1, 1, 1, D, D}, {true, true});
}

Dfa three_block_language() {
  return Dfa({"a", "b"}, 0, {0, 1, 1, 2, 2, D}, {true, true, true});
}

Dfa squares_language() {
  return Dfa({"a", "b", "c"}, 0, {0, 1, 2, D, 1, D, D, D, 2}, {true, true, true});
}

Dfao teaching_dfao() {
  std::vector<State> trans;
  std::vector<Symbol> outputs;
  std::vector<std::string> names;
  for (State i = 0; i < 4; ++i) {
    for (State j = 0; j < 3; ++j) {
      trans.push_back(((i + 1) % 4) * 3 + j);
      trans.push_back(i * 3 + (j + 1) % 3);
      outputs.push_back(i == 0 ? 0 : 1 + (i - 1 + 3 - j) % 3);
      names.push_back("s" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  return Dfao({"a", "b"}, {"0", "1", "2", "3"}, 0, std::move(trans), std::move(outputs), std::move(names));
}

Dfao thue_morse_dfao() {
  return Dfao({"0", "1"}, {"0", "1"}, 0, {0, 1, 1, 0}, {0, 1}, {"even", "odd"});
}

Dfao constant_dfao(const OrderedAlphabet& alphabet, std::size_t states) {
  std::vector<State> trans;
  for (std::size_t q = 0; q < states; ++q)
    for (std::size_t s = 0; s < alphabet.size(); ++s) trans.push_back(static_cast<State>((q + s + 1) % states));
  return Dfao(alphabet, {"0"}, 0, std::move(trans), std::vector<Symbol>(states, 0));
}

Morphism loglog_morphism() {
  OrderedAlphabet a{"0", "1"};
  return Morphism(a, a, {{0, 1, 0, 1}, {1, 1}});
}

Morphism thue_morse_morphism() {
  OrderedAlphabet a{"0", "1"};
  return Morphism(a, a, {{0, 1}, {1, 0}});
}

}  // namespace ans::catalog
