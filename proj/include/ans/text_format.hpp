#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "ans/automaton.hpp"

namespace ans {

// Line-based automaton files ('#' starts a comment):
//
//   alphabet: a b          declaration order is the letter order
//   states: q0 q1
//   start: q0
//   final: q0 q1           Dfa only; may be repeated
//   outputs: 0 1 2 3       Dfao only; the output alphabet, in order
//   output: q0 0           Dfao only; one line per state ("⊥" allowed)
//   trans: q0 a q1         one per line; absent pairs go to the dead state
//
// Parsing is strict: unknown directives, repeated singleton directives,
// duplicate transitions, undeclared symbols or states, and reserved names
// are reported as ParseError with the offending line.

using AnyAutomaton = std::variant<Dfa, Dfao>;

/// Parses a Dfa or a Dfao, depending on whether output directives appear.
AnyAutomaton parse_automaton(std::string_view text, const std::string& source = "<input>");
Dfa parse_dfa(std::string_view text, const std::string& source = "<input>");
Dfao parse_dfao(std::string_view text, const std::string& source = "<input>");

/// Reads and parses a file; I/O failures become ParseError at line 0.
AnyAutomaton load_automaton(const std::string& path);
Dfa load_dfa(const std::string& path);
Dfao load_dfao(const std::string& path);

/// Canonical serialization; parse(format(x)) reproduces x exactly.
std::string format_dfa(const Dfa& a);
std::string format_dfao(const Dfao& m);

/// Whole-file read helper shared by the loaders.
std::string read_text_file(const std::string& path);

}  // namespace ans
