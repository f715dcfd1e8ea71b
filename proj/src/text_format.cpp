#include "ans/text_format.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "ans/error.hpp"

namespace ans {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Parsed {
  std::optional<std::vector<std::string>> alphabet;
  std::optional<std::vector<std::string>> states;
  std::optional<std::string> start;
  std::size_t start_line = 0;
  std::vector<std::pair<std::string, std::size_t>> finals;
  bool saw_final = false;
  std::optional<std::vector<std::string>> outputs;
  std::vector<std::tuple<std::string, std::string, std::size_t>> output_lines;
  std::vector<std::tuple<std::string, std::string, std::string, std::size_t>> trans;
  std::size_t alphabet_line = 0, states_line = 0, outputs_line = 0;
};

Parsed scan(std::string_view text, const std::string& source) {
  Parsed p;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) { throw ParseError(source, line_no, what); };
  auto check_names = [&](const std::vector<std::string>& names, const char* kind) {
    for (const auto& n : names)
      if (is_reserved_token(n)) fail(std::string("reserved token '") + n + "' used as " + kind);
  };
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string directive = tokens.front();
    std::vector<std::string> args(tokens.begin() + 1, tokens.end());
    if (directive == "alphabet:") {
      if (p.alphabet) fail("repeated 'alphabet:' directive");
      if (args.empty()) fail("empty alphabet");
      check_names(args, "an alphabet symbol");
      p.alphabet = args;
      p.alphabet_line = line_no;
    } else if (directive == "states:") {
      if (p.states) fail("repeated 'states:' directive");
      if (args.empty()) fail("empty state list");
      check_names(args, "a state name");
      p.states = args;
      p.states_line = line_no;
    } else if (directive == "start:") {
      if (p.start) fail("repeated 'start:' directive");
      if (args.size() != 1) fail("'start:' takes exactly one state");
      p.start = args[0];
      p.start_line = line_no;
    } else if (directive == "final:") {
      p.saw_final = true;
      for (auto& a : args) p.finals.emplace_back(a, line_no);
    } else if (directive == "outputs:") {
      if (p.outputs) fail("repeated 'outputs:' directive");
      if (args.empty()) fail("empty output alphabet");
      check_names(args, "an output symbol");
      p.outputs = args;
      p.outputs_line = line_no;
    } else if (directive == "output:") {
      if (args.size() != 2) fail("'output:' takes a state and an output symbol");
      p.output_lines.emplace_back(args[0], args[1], line_no);
    } else if (directive == "trans:") {
      if (args.size() != 3) fail("'trans:' takes source, symbol and target");
      p.trans.emplace_back(args[0], args[1], args[2], line_no);
    } else {
      fail("unknown directive '" + directive + "'");
    }
  }
  line_no = 0;
  if (!p.alphabet) fail("missing 'alphabet:' directive");
  if (!p.states) fail("missing 'states:' directive");
  if (!p.start) fail("missing 'start:' directive");
  return p;
}

struct Structure {
  OrderedAlphabet alphabet;
  std::vector<std::string> names;
  State start = 0;
  std::vector<State> trans;
  std::unordered_map<std::string, State> state_index;
};

Structure build_structure(const Parsed& p, const std::string& source) {
  Structure s;
  try {
    s.alphabet = OrderedAlphabet(*p.alphabet);
  } catch (const InvalidArgument& e) {
    throw ParseError(source, p.alphabet_line, e.what());
  }
  s.names = *p.states;
  for (std::size_t i = 0; i < s.names.size(); ++i)
    if (!s.state_index.emplace(s.names[i], static_cast<State>(i)).second)
      throw ParseError(source, p.states_line, "duplicate state '" + s.names[i] + "'");
  auto state = [&](const std::string& name, std::size_t line) {
    auto it = s.state_index.find(name);
    if (it == s.state_index.end()) throw ParseError(source, line, "undeclared state '" + name + "'");
    return it->second;
  };
  s.start = state(*p.start, p.start_line);
  const std::size_t k = s.alphabet.size();
  s.trans.assign(s.names.size() * k, kDead);
  for (const auto& [from, sym, to, line] : p.trans) {
    State q = state(from, line);
    auto a = s.alphabet.find(sym);
    if (!a) throw ParseError(source, line, "symbol '" + sym + "' is not in the alphabet");
    State t = state(to, line);
    auto& slot = s.trans[static_cast<std::size_t>(q) * k + *a];
    if (slot != kDead) throw ParseError(source, line, "duplicate transition from '" + from + "' on '" + sym + "'");
    slot = t;
  }
  return s;
}

Dfa build_dfa(const Parsed& p, const std::string& source) {
  if (p.outputs || !p.output_lines.empty())
    throw ParseError(source, p.outputs_line, "output directives are not allowed in a DFA");
  Structure s = build_structure(p, source);
  std::vector<bool> finals(s.names.size(), false);
  for (const auto& [name, line] : p.finals) {
    auto it = s.state_index.find(name);
    if (it == s.state_index.end()) throw ParseError(source, line, "undeclared state '" + name + "'");
    if (finals[it->second]) throw ParseError(source, line, "state '" + name + "' listed as final twice");
    finals[it->second] = true;
  }
  return Dfa(std::move(s.alphabet), s.start, std::move(s.trans), std::move(finals), std::move(s.names));
}

Dfao build_dfao(const Parsed& p, const std::string& source) {
  if (p.saw_final) throw ParseError(source, p.finals.empty() ? 0 : p.finals.front().second,
                                    "'final:' is not allowed in a DFAO");
  if (!p.outputs) throw ParseError(source, 0, "missing 'outputs:' directive");
  Structure s = build_structure(p, source);
  OrderedAlphabet delta;
  try {
    delta = OrderedAlphabet(*p.outputs);
  } catch (const InvalidArgument& e) {
    throw ParseError(source, p.outputs_line, e.what());
  }
  std::vector<Symbol> outputs(s.names.size(), kNoOutput);
  std::vector<bool> assigned(s.names.size(), false);
  for (const auto& [name, out, line] : p.output_lines) {
    auto it = s.state_index.find(name);
    if (it == s.state_index.end()) throw ParseError(source, line, "undeclared state '" + name + "'");
    if (assigned[it->second]) throw ParseError(source, line, "duplicate output for state '" + name + "'");
    assigned[it->second] = true;
    if (out == kBottomToken) continue;
    auto o = delta.find(out);
    if (!o) throw ParseError(source, line, "output '" + out + "' is not in the output alphabet");
    outputs[it->second] = *o;
  }
  for (std::size_t q = 0; q < s.names.size(); ++q)
    if (!assigned[q]) throw ParseError(source, p.states_line, "state '" + s.names[q] + "' has no output");
  return Dfao(std::move(s.alphabet), std::move(delta), s.start, std::move(s.trans), std::move(outputs),
              std::move(s.names));
}

void write_common(std::ostringstream& out, const Automaton& a) {
  out << "alphabet:";
  for (const auto& s : a.alphabet().symbols()) out << ' ' << s;
  out << "\nstates:";
  for (const auto& n : a.state_names()) out << ' ' << n;
  out << "\nstart: " << a.state_name(a.start()) << '\n';
}

void write_transitions(std::ostringstream& out, const Automaton& a) {
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      if (State t = a.next(q, s); t != kDead)
        out << "trans: " << a.state_name(q) << ' ' << a.alphabet().name(s) << ' ' << a.state_name(t) << '\n';
}

}  // namespace

AnyAutomaton parse_automaton(std::string_view text, const std::string& source) {
  Parsed p = scan(text, source);
  if (p.outputs || !p.output_lines.empty()) return build_dfao(p, source);
  return build_dfa(p, source);
}

Dfa parse_dfa(std::string_view text, const std::string& source) { return build_dfa(scan(text, source), source); }

Dfao parse_dfao(std::string_view text, const std::string& source) { return build_dfao(scan(text, source), source); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AnyAutomaton load_automaton(const std::string& path) { return parse_automaton(read_text_file(path), path); }
Dfa load_dfa(const std::string& path) { return parse_dfa(read_text_file(path), path); }
Dfao load_dfao(const std::string& path) { return parse_dfao(read_text_file(path), path); }

std::string format_dfa(const Dfa& a) {
  std::ostringstream out;
  write_common(out, a);
  out << "final:";
  for (State q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) out << ' ' << a.state_name(q);
  out << '\n';
  write_transitions(out, a);
  return out.str();
}

std::string format_dfao(const Dfao& m) {
  std::ostringstream out;
  write_common(out, m);
  out << "outputs:";
  for (const auto& s : m.output_alphabet().symbols()) out << ' ' << s;
  out << '\n';
  for (State q = 0; q < m.num_states(); ++q) {
    Symbol o = m.output(q);
    out << "output: " << m.state_name(q) << ' '
        << (o == kNoOutput ? std::string(kBottomToken) : m.output_alphabet().name(o)) << '\n';
  }
  write_transitions(out, m);
  return out.str();
}

}  // namespace ans
