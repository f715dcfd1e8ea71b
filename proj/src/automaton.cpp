#include "ans/automaton.hpp"

#include <algorithm>
#include <unordered_set>

#include "ans/error.hpp"

namespace ans {

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  return names;
}

}  // namespace

Automaton::Automaton(OrderedAlphabet alphabet, State start, std::vector<State> trans,
                     std::vector<std::string> names)
    : alphabet_(std::move(alphabet)), start_(start), trans_(std::move(trans)), names_(std::move(names)) {
  const std::size_t k = alphabet_.size();
  if (k == 0) throw InvalidArgument("automaton: empty alphabet");
  if (trans_.size() % k != 0)
    throw InvalidArgument("automaton: transition table size is not a multiple of the alphabet size");
  const std::size_t n = trans_.size() / k;
  if (n == 0) throw InvalidArgument("automaton: no states");
  if (names_.empty()) names_ = default_names(n);
  if (names_.size() != n) throw InvalidArgument("automaton: state name count does not match table");
  if (start_ >= n) throw InvalidArgument("automaton: start state out of range");
  for (State t : trans_)
    if (t != kDead && t >= n) throw InvalidArgument("automaton: transition target out of range");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_)
    if (!seen.insert(name).second) throw InvalidArgument("automaton: duplicate state name '" + name + "'");
}

bool Automaton::is_complete() const {
  return std::find(trans_.begin(), trans_.end(), kDead) == trans_.end();
}

const std::string& Automaton::state_name(State q) const {
  static const std::string dead(kDeadStateName);
  return q == kDead ? dead : names_.at(q);
}

std::optional<State> Automaton::find_state(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<State>(it - names_.begin());
}

Dfa::Dfa(OrderedAlphabet alphabet, State start, std::vector<State> trans, std::vector<bool> finals,
         std::vector<std::string> names)
    : Automaton(std::move(alphabet), start, std::move(trans), std::move(names)), finals_(std::move(finals)) {
  if (finals_.size() != num_states()) throw InvalidArgument("dfa: final flag count does not match state count");
}

Dfa::Dfa(const Automaton& structure, std::vector<bool> finals) : Automaton(structure), finals_(std::move(finals)) {
  if (finals_.size() != num_states()) throw InvalidArgument("dfa: final flag count does not match state count");
}

Dfao::Dfao(OrderedAlphabet alphabet, OrderedAlphabet output_alphabet, State start, std::vector<State> trans,
           std::vector<Symbol> outputs, std::vector<std::string> names)
    : Automaton(std::move(alphabet), start, std::move(trans), std::move(names)),
      output_alphabet_(std::move(output_alphabet)),
      outputs_(std::move(outputs)) {
  if (outputs_.size() != num_states()) throw InvalidArgument("dfao: output count does not match state count");
  for (Symbol o : outputs_)
    if (o != kNoOutput && o >= output_alphabet_.size()) throw InvalidArgument("dfao: output symbol out of range");
}

Dfao::Dfao(const Automaton& structure, OrderedAlphabet output_alphabet, std::vector<Symbol> outputs)
    : Automaton(structure), output_alphabet_(std::move(output_alphabet)), outputs_(std::move(outputs)) {
  if (outputs_.size() != num_states()) throw InvalidArgument("dfao: output count does not match state count");
  for (Symbol o : outputs_)
    if (o != kNoOutput && o >= output_alphabet_.size()) throw InvalidArgument("dfao: output symbol out of range");
}

}  // namespace ans
