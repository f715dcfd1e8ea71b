#include "ans/operations.hpp"

#include <deque>
#include <functional>
#include <map>
#include <unordered_map>

#include "ans/error.hpp"

namespace ans {

namespace {

void require_same_alphabet(const Automaton& a, const Automaton& b, const char* op) {
  if (!(a.alphabet() == b.alphabet()))
    throw InvalidArgument(std::string(op) + ": alphabet mismatch");
}

/// Reachable states in BFS order (start first, successors in alphabet order).
std::vector<State> bfs_order(const Automaton& a) {
  std::vector<State> order{a.start()};
  std::vector<bool> seen(a.num_states(), false);
  seen[a.start()] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      State t = a.next(order[i], s);
      if (t != kDead && !seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

/// Renumbers the states listed in `keep` (keep[0] becomes the start) and
/// redirects transitions into dropped states to kDead.
struct Renumbered {
  std::vector<State> trans;
  std::vector<std::string> names;
  std::vector<State> old_to_new;
};

Renumbered renumber(const Automaton& a, const std::vector<State>& keep) {
  const std::size_t k = a.alphabet().size();
  Renumbered r;
  r.old_to_new.assign(a.num_states(), kDead);
  for (std::size_t i = 0; i < keep.size(); ++i) r.old_to_new[keep[i]] = static_cast<State>(i);
  r.trans.reserve(keep.size() * k);
  for (State q : keep) {
    r.names.push_back(a.state_name(q));
    for (Symbol s = 0; s < k; ++s) {
      State t = a.next(q, s);
      r.trans.push_back(t == kDead ? kDead : r.old_to_new[t]);
    }
  }
  return r;
}

/// BFS order restricted to states allowed by `keep_state`.
std::vector<State> bfs_order_within(const Automaton& a, const std::vector<bool>& keep_state) {
  std::vector<State> order;
  if (!keep_state[a.start()]) return order;
  order.push_back(a.start());
  std::vector<bool> seen(a.num_states(), false);
  seen[a.start()] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      State t = a.next(order[i], s);
      if (t != kDead && !seen[t] && keep_state[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

std::vector<bool> coaccessible(const Automaton& a, const std::vector<bool>& finals) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      if (State t = a.next(q, s); t != kDead) rev[t].push_back(q);
  std::vector<bool> co(n, false);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q)
    if (finals[q]) {
      co[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : rev[q])
      if (!co[p]) {
        co[p] = true;
        stack.push_back(p);
      }
  }
  return co;
}

/// Coarsest partition refining `classes` that is stable under transitions.
/// The automaton must be complete. Class ids are assigned in order of the
/// first state carrying them.
std::vector<std::uint32_t> refine(const Automaton& a, std::vector<std::uint32_t> classes) {
  const std::size_t n = a.num_states();
  const std::size_t k = a.alphabet().size();
  std::size_t count = 0;
  {
    std::map<std::uint32_t, std::uint32_t> relabel;
    for (auto& c : classes) c = relabel.try_emplace(c, static_cast<std::uint32_t>(relabel.size())).first->second;
    count = relabel.size();
  }
  std::vector<std::uint32_t> signature(k + 1);
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    for (State q = 0; q < n; ++q) {
      signature[0] = classes[q];
      for (Symbol s = 0; s < k; ++s) signature[s + 1] = classes[a.next(q, s)];
      next[q] = ids.try_emplace(signature, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    classes = std::move(next);
    if (ids.size() == count) return classes;
    count = ids.size();
  }
}

/// Quotient of a complete automaton by `classes`; the class `dead_class`
/// (if any) becomes the implicit dead state. Returns the transition table
/// over class ids with the dead class removed, and a representative per
/// kept class.
struct Quotient {
  std::vector<State> trans;
  std::vector<State> representative;
  State start = 0;
};

Quotient quotient(const Automaton& a, const std::vector<std::uint32_t>& classes,
                  std::optional<std::uint32_t> dead_class) {
  const std::size_t k = a.alphabet().size();
  std::uint32_t count = 0;
  for (auto c : classes) count = std::max(count, c + 1);
  std::vector<State> class_to_new(count, kDead);
  Quotient out;
  for (State q = 0; q < a.num_states(); ++q) {
    auto c = classes[q];
    if (dead_class && c == *dead_class) continue;
    if (class_to_new[c] == kDead) {
      class_to_new[c] = static_cast<State>(out.representative.size());
      out.representative.push_back(q);
    }
  }
  for (State rep : out.representative)
    for (Symbol s = 0; s < k; ++s) out.trans.push_back(class_to_new[classes[a.next(rep, s)]]);
  out.start = class_to_new[classes[a.start()]];
  return out;
}

std::vector<std::string> sequential_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  return names;
}

/// Reachable pairs of two complete automata; `visit` gets each new pair.
template <typename Visit>
std::vector<State> pair_bfs(const Automaton& a, const Automaton& b, std::vector<std::pair<State, State>>& pairs,
                            Visit&& visit) {
  const std::size_t k = a.alphabet().size();
  std::unordered_map<std::uint64_t, State> index;
  auto key = [](State x, State y) { return (static_cast<std::uint64_t>(x) << 32) | y; };
  auto intern = [&](State x, State y) {
    auto [it, fresh] = index.try_emplace(key(x, y), static_cast<State>(pairs.size()));
    if (fresh) {
      pairs.emplace_back(x, y);
      visit(x, y);
    }
    return it->second;
  };
  std::vector<State> trans;
  intern(a.start(), b.start());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, y] = pairs[i];
    for (Symbol s = 0; s < k; ++s) trans.push_back(intern(a.next(x, s), b.next(y, s)));
  }
  return trans;
}

Dfa combine(const Dfa& a, const Dfa& b, const std::function<bool(bool, bool)>& op, const char* name) {
  require_same_alphabet(a, b, name);
  Dfa ca = complete(a);
  Dfa cb = complete(b);
  std::vector<std::pair<State, State>> pairs;
  std::vector<bool> finals;
  auto trans = pair_bfs(ca, cb, pairs, [&](State x, State y) { finals.push_back(op(ca.is_final(x), cb.is_final(y))); });
  return trim(Dfa(a.alphabet(), 0, std::move(trans), std::move(finals)));
}

}  // namespace

Dfa complete(const Dfa& a) {
  if (a.is_complete()) return a;
  const std::size_t n = a.num_states();
  const std::size_t k = a.alphabet().size();
  std::vector<State> trans(a.transitions().begin(), a.transitions().end());
  for (auto& t : trans)
    if (t == kDead) t = static_cast<State>(n);
  trans.insert(trans.end(), k, static_cast<State>(n));
  auto finals = a.finals();
  finals.push_back(false);
  auto names = a.state_names();
  names.emplace_back(kDeadStateName);
  return Dfa(a.alphabet(), a.start(), std::move(trans), std::move(finals), std::move(names));
}

Dfao complete(const Dfao& m) {
  if (m.is_complete()) return m;
  const std::size_t n = m.num_states();
  const std::size_t k = m.alphabet().size();
  std::vector<State> trans(m.transitions().begin(), m.transitions().end());
  for (auto& t : trans)
    if (t == kDead) t = static_cast<State>(n);
  trans.insert(trans.end(), k, static_cast<State>(n));
  auto outputs = m.outputs();
  outputs.push_back(kNoOutput);
  auto names = m.state_names();
  names.emplace_back(kDeadStateName);
  return Dfao(m.alphabet(), m.output_alphabet(), m.start(), std::move(trans), std::move(outputs), std::move(names));
}

Dfa accessible(const Dfa& a) {
  auto order = bfs_order(a);
  auto r = renumber(a, order);
  std::vector<bool> finals;
  for (State q : order) finals.push_back(a.is_final(q));
  return Dfa(a.alphabet(), 0, std::move(r.trans), std::move(finals), std::move(r.names));
}

Dfao accessible(const Dfao& m) {
  auto order = bfs_order(m);
  auto r = renumber(m, order);
  std::vector<Symbol> outputs;
  for (State q : order) outputs.push_back(m.output(q));
  return Dfao(m.alphabet(), m.output_alphabet(), 0, std::move(r.trans), std::move(outputs), std::move(r.names));
}

Dfa trim(const Dfa& a) {
  auto co = coaccessible(a, a.finals());
  auto order = bfs_order_within(a, co);
  if (order.empty()) {
    std::vector<State> trans(a.alphabet().size(), kDead);
    return Dfa(a.alphabet(), 0, std::move(trans), {false}, {a.state_name(a.start())});
  }
  auto r = renumber(a, order);
  std::vector<bool> finals;
  for (State q : order) finals.push_back(a.is_final(q));
  return Dfa(a.alphabet(), 0, std::move(r.trans), std::move(finals), std::move(r.names));
}

Dfa minimize(const Dfa& a) {
  Dfa t = trim(a);
  if (is_empty(t)) return Dfa(a.alphabet(), 0, std::vector<State>(a.alphabet().size(), kDead), {false}, {"q0"});
  const bool had_dead = !t.is_complete();
  Dfa c = complete(t);
  std::vector<std::uint32_t> initial(c.num_states());
  for (State q = 0; q < c.num_states(); ++q) initial[q] = c.is_final(q) ? 1 : 0;
  auto classes = refine(c, std::move(initial));
  std::optional<std::uint32_t> dead_class;
  if (had_dead) dead_class = classes[c.num_states() - 1];
  auto qt = quotient(c, classes, dead_class);
  std::vector<bool> finals;
  for (State rep : qt.representative) finals.push_back(c.is_final(rep));
  Dfa ordered = accessible(Dfa(a.alphabet(), qt.start, std::move(qt.trans), std::move(finals)));
  return Dfa(ordered.alphabet(), 0, std::vector<State>(ordered.transitions().begin(), ordered.transitions().end()),
             ordered.finals(), sequential_names(ordered.num_states()));
}

Dfao reduce_dfao(const Dfao& m) {
  Dfao acc = accessible(m);
  const bool had_dead = !acc.is_complete();
  Dfao c = complete(acc);
  std::vector<std::uint32_t> initial(c.num_states());
  for (State q = 0; q < c.num_states(); ++q) initial[q] = c.output(q);
  auto classes = refine(c, std::move(initial));
  std::optional<std::uint32_t> dead_class;
  if (had_dead && classes[c.num_states() - 1] != classes[c.start()]) dead_class = classes[c.num_states() - 1];
  auto qt = quotient(c, classes, dead_class);
  std::vector<Symbol> outputs;
  for (State rep : qt.representative) outputs.push_back(c.output(rep));
  const std::size_t n = qt.representative.size();
  Dfao raw(m.alphabet(), m.output_alphabet(), qt.start, std::move(qt.trans), std::move(outputs), sequential_names(n));
  Dfao ordered = accessible(raw);
  return Dfao(ordered.alphabet(), ordered.output_alphabet(), 0,
              std::vector<State>(ordered.transitions().begin(), ordered.transitions().end()), ordered.outputs(),
              sequential_names(ordered.num_states()));
}

namespace {

/// Classes of a greedy merge over a machine with unspecified entries.
struct MergeTable {
  std::vector<State> parent;
  std::vector<Symbol> output;               // kNoOutput = unspecified
  std::vector<std::vector<State>> next;     // kDead = unspecified

  State find(State q) {
    while (parent[q] != q) q = parent[q] = parent[parent[q]];
    return q;
  }
  /// Merges the classes of p and q and everything forced by determinism.
  bool merge(State p, State q) {
    std::vector<std::pair<State, State>> work{{p, q}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (y < x) std::swap(x, y);
      if (output[x] == kNoOutput) output[x] = output[y];
      else if (output[y] != kNoOutput && output[y] != output[x]) return false;
      parent[y] = x;
      for (std::size_t s = 0; s < next[x].size(); ++s) {
        if (next[x][s] == kDead) next[x][s] = next[y][s];
        else if (next[y][s] != kDead) work.emplace_back(next[x][s], next[y][s]);
      }
    }
    return true;
  }
};

}  // namespace

Dfao merge_unspecified(const Dfao& m) {
  Dfao acc = accessible(m);
  const std::size_t n = acc.num_states();
  const std::size_t k = acc.alphabet().size();
  // States from which some defined output is reachable.
  std::vector<bool> useful(n, false);
  for (State q = 0; q < n; ++q) useful[q] = acc.output(q) != kNoOutput;
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < n; ++q) {
      if (useful[q]) continue;
      for (Symbol s = 0; s < k && !useful[q]; ++s) {
        const State t = acc.next(q, s);
        if (t != kDead && useful[t]) useful[q] = changed = true;
      }
    }
  }

  MergeTable table;
  for (State q = 0; q < n; ++q) {
    table.parent.push_back(q);
    table.output.push_back(acc.output(q));
    std::vector<State> row(k, kDead);
    for (Symbol s = 0; s < k; ++s) {
      const State t = acc.next(q, s);
      if (t != kDead && useful[t]) row[s] = t;
    }
    table.next.push_back(std::move(row));
  }

  // Accessible states are already in BFS order; try each against the
  // earlier classes in order.
  std::vector<State> red{acc.start()};
  for (State q = 0; q < n; ++q) {
    if (q == acc.start() || !useful[q]) continue;
    if (std::find(red.begin(), red.end(), table.find(q)) != red.end()) continue;
    bool merged = false;
    for (State r : red) {
      MergeTable trial = table;
      if (trial.merge(r, q)) {
        table = std::move(trial);
        merged = true;
        break;
      }
    }
    if (!merged) red.push_back(table.find(q));
  }

  std::vector<State> trans(n * k, kDead);
  std::vector<Symbol> outputs(n, kNoOutput);
  for (State q = 0; q < n; ++q) {
    const State c = table.find(q);
    outputs[q] = table.output[c];
    for (Symbol s = 0; s < k; ++s) {
      const State t = table.next[c][s];
      trans[q * k + s] = t == kDead ? kDead : table.find(t);
    }
  }
  Dfao raw(acc.alphabet(), acc.output_alphabet(), table.find(acc.start()), std::move(trans), std::move(outputs));
  Dfao ordered = accessible(raw);
  return Dfao(ordered.alphabet(), ordered.output_alphabet(), 0,
              std::vector<State>(ordered.transitions().begin(), ordered.transitions().end()), ordered.outputs(),
              sequential_names(ordered.num_states()));
}

bool is_empty(const Dfa& a) {
  for (State q : bfs_order(a))
    if (a.is_final(q)) return false;
  return true;
}

bool is_infinite(const Dfa& a) {
  Dfa t = trim(a);
  if (is_empty(t)) return false;
  // Any cycle in the trimmed graph lies on an accepting path.
  const std::size_t n = t.num_states();
  const std::size_t k = t.alphabet().size();
  enum class Mark : unsigned char { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<std::pair<State, Symbol>> stack;
  for (State root = 0; root < n; ++root) {
    if (mark[root] != Mark::White) continue;
    stack.emplace_back(root, 0);
    mark[root] = Mark::Grey;
    while (!stack.empty()) {
      auto& [q, s] = stack.back();
      if (s == k) {
        mark[q] = Mark::Black;
        stack.pop_back();
        continue;
      }
      State t2 = t.next(q, s++);
      if (t2 == kDead) continue;
      if (mark[t2] == Mark::Grey) return true;
      if (mark[t2] == Mark::White) {
        mark[t2] = Mark::Grey;
        stack.emplace_back(t2, 0);
      }
    }
  }
  return false;
}

std::optional<Word> shortest_word(const Dfa& a) {
  const std::size_t n = a.num_states();
  std::vector<State> parent(n, kDead);
  std::vector<Symbol> via(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<State> queue{a.start()};
  seen[a.start()] = true;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (a.is_final(q)) {
      Word w;
      for (State p = q; p != a.start(); p = parent[p]) w.push_back(via[p]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      State t = a.next(q, s);
      if (t != kDead && !seen[t]) {
        seen[t] = true;
        parent[t] = q;
        via[t] = s;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

Dfa intersect(const Dfa& a, const Dfa& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; }, "intersect");
}

Dfa unite(const Dfa& a, const Dfa& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; }, "unite");
}

Dfa difference(const Dfa& a, const Dfa& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; }, "difference");
}

Equivalence equivalent(const Dfa& a, const Dfa& b) {
  Dfa sym = combine(a, b, [](bool x, bool y) { return x != y; }, "equivalent");
  auto w = shortest_word(sym);
  return Equivalence{!w.has_value(), std::move(w)};
}

ProductDfao product(const Dfa& a, const Dfao& b) {
  require_same_alphabet(a, b, "product");
  Dfa ca = complete(a);
  Dfao cb = complete(b);
  const State dead_a = a.is_complete() ? kDead : static_cast<State>(a.num_states());
  const State dead_b = b.is_complete() ? kDead : static_cast<State>(b.num_states());
  std::vector<std::pair<State, State>> pairs;
  std::vector<bool> left_final;
  std::vector<Symbol> outputs;
  std::vector<std::string> names;
  auto trans = pair_bfs(ca, cb, pairs, [&](State x, State y) {
    left_final.push_back(ca.is_final(x));
    outputs.push_back(cb.output(y));
    names.push_back("(" + ca.state_name(x) + "," + cb.state_name(y) + ")");
  });
  for (auto& [x, y] : pairs) {
    if (x == dead_a) x = kDead;
    if (y == dead_b) y = kDead;
  }
  Dfao machine(a.alphabet(), b.output_alphabet(), 0, std::move(trans), std::move(outputs), std::move(names));
  return ProductDfao{std::move(machine), std::move(left_final), std::move(pairs)};
}

std::vector<std::optional<Word>> access_words(const Automaton& a) {
  std::vector<std::optional<Word>> words(a.num_states());
  words[a.start()] = Word{};
  for (State q : bfs_order(a)) {
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      State t = a.next(q, s);
      if (t != kDead && !words[t]) {
        Word w = *words[q];
        w.push_back(s);
        words[t] = std::move(w);
      }
    }
  }
  return words;
}

Dfa preimage(const Dfao& m, Symbol output) {
  if (output >= m.output_alphabet().size()) throw InvalidArgument("preimage: output symbol not in the output alphabet");
  std::vector<bool> finals(m.num_states());
  for (State q = 0; q < m.num_states(); ++q) finals[q] = m.output(q) == output;
  return Dfa(m, std::move(finals));
}

}  // namespace ans
