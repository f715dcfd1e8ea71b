#include "ans/automatic.hpp"

#include <algorithm>
#include <unordered_map>

#include "ans/error.hpp"

namespace ans {

namespace {

/// Streams the words of `words` through `machine`, re-running only the
/// suffix that changed since the previous word.
class IncrementalRunner {
 public:
  explicit IncrementalRunner(const Dfao& machine) : machine_(&machine) { path_.push_back(machine.start()); }

  State run(const Word& w) {
    std::size_t common = 0;
    while (common < prev_.size() && common < w.size() && prev_[common] == w[common]) ++common;
    path_.resize(common + 1);
    for (std::size_t i = common; i < w.size(); ++i) path_.push_back(machine_->next(path_.back(), w[i]));
    prev_ = w;
    return path_.back();
  }

 private:
  const Dfao* machine_;
  Word prev_;
  std::vector<State> path_;
};

[[noreturn]] void undefined_output(const Dfao& machine, WordView w) {
  throw DomainError("machine has no output for the word '" + machine.alphabet().format(w) + "' of L");
}

}  // namespace

AutomaticSequence::AutomaticSequence(NumerationSystem system, Dfao machine)
    : system_(std::move(system)), machine_(std::move(machine)) {
  if (!(system_.alphabet() == machine_.alphabet()))
    throw InvalidArgument("automatic sequence: machine alphabet differs from the numeration alphabet");
}

Symbol AutomaticSequence::term(const Rank& n) const {
  Word w = system_.rep(n);
  Symbol out = machine_.eval(w);
  if (out == kNoOutput) undefined_output(machine_, w);
  return out;
}

SymbolStream AutomaticSequence::terms(const Rank& from) const {
  auto words = std::make_shared<WordStream>(system_.enumerate(from));
  auto machine = std::make_shared<const Dfao>(machine_);
  auto runner = std::make_shared<IncrementalRunner>(*machine);
  return SymbolStream([words, machine, runner]() -> std::optional<Symbol> {
    auto w = words->next();
    if (!w) return std::nullopt;
    Symbol out = machine->output(runner->run(*w));
    if (out == kNoOutput) undefined_output(*machine, *w);
    return out;
  });
}

SymbolStream sequence(const NumerationSystem& system, const Dfao& machine) {
  return AutomaticSequence(system, machine).terms();
}

Dfa fiber(const AutomaticSequence& u, Symbol a) {
  if (a >= u.output_alphabet().size()) throw InvalidArgument("fiber: symbol is not in the output alphabet");
  return minimize(intersect(preimage(u.machine(), a), u.system().language()));
}

Dfao dfao_from_fibers(const NumerationSystem& system, const std::map<Symbol, Dfa>& fibers,
                      const OrderedAlphabet& output_alphabet) {
  if (fibers.empty()) throw FiberPartitionError("fibers do not cover L: no fiber given");
  const auto& sigma = system.alphabet();
  std::vector<Symbol> symbols;
  std::vector<Dfa> complete_fibers;
  for (const auto& [a, f] : fibers) {
    if (a >= output_alphabet.size()) throw InvalidArgument("fibers: symbol outside the output alphabet");
    if (!(f.alphabet() == sigma)) throw InvalidArgument("fibers: fiber alphabet differs from the numeration alphabet");
    symbols.push_back(a);
    complete_fibers.push_back(complete(f));
  }
  for (std::size_t i = 0; i < complete_fibers.size(); ++i)
    for (std::size_t j = i + 1; j < complete_fibers.size(); ++j)
      if (auto w = shortest_word(intersect(complete_fibers[i], complete_fibers[j])))
        throw FiberPartitionError("fibers of '" + output_alphabet.name(symbols[i]) + "' and '" +
                                  output_alphabet.name(symbols[j]) + "' overlap on '" + sigma.format(*w) + "'");
  Dfa all = complete_fibers.front();
  for (std::size_t i = 1; i < complete_fibers.size(); ++i) all = unite(all, complete_fibers[i]);
  if (auto eq = equivalent(all, system.language()); !eq)
    throw FiberPartitionError("fibers do not partition L: they disagree with L on '" + sigma.format(*eq.witness) +
                              "'");

  // Product over tuples of fiber states, reachable part only.
  const std::size_t k = sigma.size();
  std::vector<std::vector<State>> tuples;
  std::map<std::vector<State>, State> index;
  auto intern = [&](std::vector<State> t) {
    auto [it, fresh] = index.try_emplace(t, static_cast<State>(tuples.size()));
    if (fresh) tuples.push_back(std::move(t));
    return it->second;
  };
  std::vector<State> start;
  for (const auto& f : complete_fibers) start.push_back(f.start());
  intern(std::move(start));
  std::vector<State> trans;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    for (Symbol s = 0; s < k; ++s) {
      std::vector<State> t(complete_fibers.size());
      for (std::size_t j = 0; j < t.size(); ++j) t[j] = complete_fibers[j].next(tuples[i][j], s);
      trans.push_back(intern(std::move(t)));
    }
  }
  std::vector<Symbol> outputs;
  std::vector<std::string> names;
  for (const auto& t : tuples) {
    Symbol out = kNoOutput;
    int hits = 0;
    std::string name = "(";
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (complete_fibers[j].is_final(t[j])) {
        out = symbols[j];
        ++hits;
      }
      if (j > 0) name += ',';
      name += complete_fibers[j].state_name(t[j]);
    }
    outputs.push_back(hits == 1 ? out : kNoOutput);
    names.push_back(name + ")");
  }
  return Dfao(sigma, output_alphabet, 0, std::move(trans), std::move(outputs), std::move(names));
}

Kernel kernel(const AutomaticSequence& u) {
  Dfa min_l = minimize(u.system().language());
  Dfao reduced = reduce_dfao(u.machine());
  Kernel out;
  out.language_states = complete(min_l).num_states();
  out.machine_states = complete(reduced).num_states();

  ProductDfao prod = product(min_l, reduced);
  out.reachable_pairs = prod.machine.num_states();

  // Outputs masked to continuations in L; "@reject" marks the others.
  auto delta = u.output_alphabet().symbols();
  const Symbol reject = static_cast<Symbol>(delta.size());
  delta.emplace_back("@reject");
  std::vector<Symbol> masked(prod.machine.num_states());
  for (State p = 0; p < masked.size(); ++p) masked[p] = prod.left_final[p] ? prod.machine.output(p) : reject;
  Dfao behaviour(prod.machine, OrderedAlphabet(delta), masked);
  Dfao merged = reduce_dfao(behaviour);

  auto access = access_words(prod.machine);
  std::map<State, std::size_t> class_of_reduced;
  for (State p = 0; p < prod.machine.num_states(); ++p) {
    State c = merged.run(*access[p]);
    if (class_of_reduced.contains(c)) continue;
    class_of_reduced.emplace(c, out.classes.size());
    KernelClass kc;
    kc.class_id = out.classes.size();
    kc.representative_prefix = *access[p];
    kc.pair_state = prod.components[p];
    kc.empty = prod.components[p].first == kDead;
    out.classes.push_back(std::move(kc));
  }
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < out.classes.size(); ++i) ids.push_back("k" + std::to_string(i));
  std::vector<Symbol> class_outputs(merged.num_states());
  for (const auto& [c, id] : class_of_reduced) class_outputs[c] = static_cast<Symbol>(id);
  out.classifier.emplace(merged, OrderedAlphabet(ids), class_outputs);
  return out;
}

SymbolStream subsequence(const AutomaticSequence& u, WordView prefix) {
  const NumerationSystem& system = u.system();
  State q = system.language().run(prefix);
  auto continuations = std::make_shared<WordStream>(system.enumerate_residual(q));
  auto machine = std::make_shared<const Dfao>(u.machine());
  State after_prefix = machine->run(prefix);
  Word w(prefix.begin(), prefix.end());
  return SymbolStream([continuations, machine, after_prefix, w]() -> std::optional<Symbol> {
    auto z = continuations->next();
    if (!z) return std::nullopt;
    Symbol out = machine->output(machine->run(after_prefix, *z));
    if (out == kNoOutput) {
      Word full = w;
      full.insert(full.end(), z->begin(), z->end());
      undefined_output(*machine, full);
    }
    return out;
  });
}

SymbolStream subsequence(const AutomaticSequence& u, const KernelClass& k) {
  return subsequence(u, k.representative_prefix);
}

Dfao dfao_from_kernel(const TermFunction& term, const NumerationSystem& system,
                      const OrderedAlphabet& output_alphabet, const KernelReconstructionOptions& options) {
  const Dfa& lang = system.language();
  const Dfa residual = complete(minimize(lang));
  const std::size_t k = lang.alphabet().size();

  struct Node {
    Word prefix;
    State residual_state;
    State language_state;
    std::vector<Symbol> signature;
  };
  std::vector<Node> nodes;
  std::map<std::pair<State, std::vector<Symbol>>, State> index;

  auto signature_of = [&](const Word& w, State lang_state) {
    std::vector<Symbol> sig;
    auto zs = system.enumerate_residual(lang_state);
    Word full = w;
    for (std::size_t i = 0; i < options.bound; ++i) {
      auto z = zs.next();
      if (!z) break;
      full.resize(w.size());
      full.insert(full.end(), z->begin(), z->end());
      Symbol t = term(system.val(full));
      if (t >= output_alphabet.size()) throw InvalidArgument("kernel reconstruction: term outside the output alphabet");
      sig.push_back(t);
    }
    return sig;
  };
  auto intern = [&](Word w) -> State {
    State r = residual.run(w);
    State l = lang.run(w);
    auto sig = signature_of(w, l);
    auto [it, fresh] = index.try_emplace({r, sig}, static_cast<State>(nodes.size()));
    if (fresh) {
      if (nodes.size() >= options.max_states)
        throw BoundExceeded("kernel reconstruction: not recognized within bound (more than " +
                            std::to_string(options.max_states) + " subsequences)");
      nodes.push_back(Node{std::move(w), r, l, std::move(sig)});
    }
    return it->second;
  };

  intern(Word{});
  std::vector<State> trans;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (Symbol s = 0; s < k; ++s) {
      Word w = nodes[i].prefix;
      w.push_back(s);
      trans.push_back(intern(std::move(w)));
    }
  }
  // Words outside L are never fed to the machine; their states reuse the
  // first term of their subsequence (or the first output symbol).
  std::vector<Symbol> outputs;
  for (const auto& node : nodes) outputs.push_back(node.signature.empty() ? 0 : node.signature.front());
  Dfao raw(lang.alphabet(), output_alphabet, 0, std::move(trans), std::move(outputs));
  Dfao result = reduce_dfao(raw);

  auto check = AutomaticSequence(system, result).terms();
  for (std::size_t n = 0; n < options.verify_terms; ++n) {
    Symbol got = *check.next();
    if (got != term(Rank(static_cast<unsigned long>(n))))
      throw BoundExceeded("kernel reconstruction: not recognized within bound (disagreement at rank " +
                          std::to_string(n) + ")");
  }
  return result;
}

std::size_t OccurrenceGaps::max_gap() const {
  return gaps.empty() ? 0 : *std::max_element(gaps.begin(), gaps.end());
}

OccurrenceGaps occurrence_gaps(SymbolStream& stream, WordView factor, std::size_t horizon) {
  if (factor.empty()) throw InvalidArgument("occurrence gaps: empty factor");
  if (horizon < factor.size()) throw InvalidArgument("occurrence gaps: horizon shorter than the factor");
  std::vector<Symbol> prefix = stream.take(horizon);
  OccurrenceGaps out;
  auto it = prefix.begin();
  while (true) {
    it = std::search(it, prefix.end(), factor.begin(), factor.end());
    if (it == prefix.end()) break;
    out.positions.push_back(static_cast<std::size_t>(it - prefix.begin()) + 1);
    ++it;
  }
  for (std::size_t i = 1; i < out.positions.size(); ++i) out.gaps.push_back(out.positions[i] - out.positions[i - 1]);
  return out;
}

}  // namespace ans
