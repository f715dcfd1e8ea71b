#include "ans/numeration.hpp"

#include "ans/error.hpp"
#include "ans/operations.hpp"

namespace ans {

namespace {

const Natural& zero() {
  static const Natural z = 0;
  return z;
}

/// Completes w[from..] with the shortlex-least continuation of total length
/// w.size(); the continuation must exist.
void fill_minimal(const CountTable& table, Word& w, std::vector<State>& path, std::size_t from) {
  const Dfa& a = table.automaton();
  const std::size_t len = w.size();
  for (std::size_t pos = from; pos < len; ++pos) {
    const auto& row = table.row(len - pos - 1);
    State q = path[pos];
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      State t = a.next(q, s);
      if (t != kDead && sgn(row[t]) > 0) {
        w[pos] = s;
        path[pos + 1] = t;
        break;
      }
    }
  }
}

}  // namespace

CountTable::CountTable(Dfa trimmed) : dfa_(std::move(trimmed)) {
  const std::size_t n = dfa_.num_states();
  infinite_.resize(n);
  std::vector<State> trans(dfa_.transitions().begin(), dfa_.transitions().end());
  for (State q = 0; q < n; ++q) infinite_[q] = is_infinite(Dfa(dfa_.alphabet(), q, trans, dfa_.finals()));
}

const std::vector<Natural>& CountTable::row(std::size_t m) const {
  std::lock_guard<std::mutex> lock(mu_);
  const std::size_t n = dfa_.num_states();
  const std::size_t k = dfa_.alphabet().size();
  if (rows_.empty()) {
    std::vector<Natural> first(n);
    for (State q = 0; q < n; ++q) first[q] = dfa_.is_final(q) ? 1 : 0;
    rows_.push_back(std::move(first));
  }
  while (rows_.size() <= m) {
    const auto& prev = rows_.back();
    std::vector<Natural> next(n);
    for (State q = 0; q < n; ++q)
      for (Symbol s = 0; s < k; ++s)
        if (State t = dfa_.next(q, s); t != kDead) next[q] += prev[t];
    rows_.push_back(std::move(next));
  }
  return rows_[m];
}

const Natural& CountTable::count(State q, std::size_t m) const {
  if (q == kDead) return zero();
  return row(m)[q];
}

NumerationSystem::NumerationSystem(const Dfa& language) {
  Dfa t = trim(language);
  if (!is_infinite(t)) throw FiniteLanguage("numeration system: the language is finite");
  table_ = std::make_shared<const CountTable>(std::move(t));
}

Word NumerationSystem::rep(const Rank& n) const {
  if (sgn(n) < 0) throw InvalidArgument("rep: negative rank");
  const Dfa& a = language();
  Natural remaining = n;
  std::size_t len = 0;
  while (true) {
    const Natural& c = table_->count(a.start(), len);
    if (remaining < c) break;
    remaining -= c;
    if (++len > kMaxRepLength)
      throw DomainError("rep: the representation of " + n.get_str() + " is longer than " +
                        std::to_string(kMaxRepLength) + " letters");
  }
  Word w;
  w.reserve(len);
  State q = a.start();
  for (std::size_t pos = 0; pos < len; ++pos) {
    const auto& row = table_->row(len - pos - 1);
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      State t = a.next(q, s);
      if (t == kDead) continue;
      if (remaining < row[t]) {
        w.push_back(s);
        q = t;
        break;
      }
      remaining -= row[t];
    }
  }
  return w;
}

Rank NumerationSystem::val(WordView w) const {
  const Dfa& a = language();
  Rank r = count_shorter(w.size());
  State q = a.start();
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    if (w[pos] >= a.alphabet().size()) throw InvalidArgument("val: symbol out of range");
    const auto& row = table_->row(w.size() - pos - 1);
    for (Symbol s = 0; s < w[pos]; ++s)
      if (State t = a.next(q, s); t != kDead) r += row[t];
    q = a.next(q, w[pos]);
    if (q == kDead)
      throw NotInLanguage("word '" + a.alphabet().format(w) + "' is not in L: no continuation at position " +
                          std::to_string(pos + 1) + " (symbol '" + a.alphabet().name(w[pos]) + "')");
  }
  if (!a.is_final(q))
    throw NotInLanguage("word '" + a.alphabet().format(w) + "' is not in L: it ends in non-final state " +
                        a.state_name(q));
  return r;
}

Natural NumerationSystem::count_words(std::size_t length) const { return table_->count(language().start(), length); }

Natural NumerationSystem::count_shorter(std::size_t length) const {
  Natural total = 0;
  for (std::size_t m = 0; m < length; ++m) total += table_->count(language().start(), m);
  return total;
}

bool shortlex_successor(const CountTable& table, State root, Word& w, std::vector<State>& path) {
  const Dfa& a = table.automaton();
  const std::size_t k = a.alphabet().size();
  const std::size_t len = w.size();
  for (std::size_t pos = len; pos-- > 0;) {
    const auto& row = table.row(len - pos - 1);
    State q = path[pos];
    for (Symbol s = w[pos] + 1; s < k; ++s) {
      State t = a.next(q, s);
      if (t != kDead && sgn(row[t]) > 0) {
        w[pos] = s;
        path[pos + 1] = t;
        fill_minimal(table, w, path, pos + 1);
        return true;
      }
    }
  }
  // A finite residual language has no word longer than the state count.
  const bool infinite = table.infinite_from(root);
  for (std::size_t l = len + 1;; ++l) {
    if (!infinite && l > a.num_states()) return false;
    if (table.nonempty(root, l)) {
      w.assign(l, 0);
      path.assign(l + 1, kDead);
      path[0] = root;
      fill_minimal(table, w, path, 0);
      return true;
    }
  }
}

WordStream NumerationSystem::enumerate(const Rank& from) const {
  Word first = rep(from);
  std::vector<State> path{language().start()};
  for (Symbol s : first) path.push_back(language().next(path.back(), s));
  return WordStream([table = table_, w = std::move(first), path = std::move(path),
                     started = false]() mutable -> std::optional<Word> {
    if (started) shortlex_successor(*table, table->automaton().start(), w, path);
    started = true;
    return w;
  });
}

WordStream NumerationSystem::enumerate_residual(State q) const {
  if (q == kDead) return WordStream([]() -> std::optional<Word> { return std::nullopt; });
  return WordStream([table = table_, root = q, w = Word{}, path = std::vector<State>{q},
                     started = false]() mutable -> std::optional<Word> {
    if (!started) {
      started = true;
      if (table->automaton().is_final(root)) return w;
    }
    if (!shortlex_successor(*table, root, w, path)) return std::nullopt;
    return w;
  });
}

}  // namespace ans
