#include "ans/alphabet.hpp"

#include <algorithm>

#include "ans/error.hpp"

namespace ans {

bool is_reserved_token(std::string_view token) {
  return token == kEpsilonToken || token == kBottomToken ||
         token.starts_with(kFreshPrefix);
}

OrderedAlphabet::OrderedAlphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  index_.reserve(symbols_.size());
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& s = symbols_[i];
    if (s.empty()) throw InvalidArgument("alphabet: empty symbol name");
    if (s.find_first_of(" \t\r\n") != std::string::npos)
      throw InvalidArgument("alphabet: symbol '" + s + "' contains whitespace");
    if (s == kEpsilonToken || s == kBottomToken) throw InvalidArgument("alphabet: '" + s + "' is reserved");
    if (!index_.emplace(s, static_cast<Symbol>(i)).second)
      throw InvalidArgument("alphabet: duplicate symbol '" + s + "'");
    if (s.size() != 1) single_char_ = false;
  }
}

std::optional<Symbol> OrderedAlphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol OrderedAlphabet::index(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw InvalidArgument("unknown symbol '" + std::string(name) + "'");
}

std::string OrderedAlphabet::format(WordView w) const {
  if (w.empty()) return std::string(kEpsilonToken);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !single_char_) out += ',';
    out += name(w[i]);
  }
  return out;
}

Word OrderedAlphabet::parse(std::string_view text) const {
  Word w;
  if (text == kEpsilonToken || text.empty()) return w;
  if (single_char_ && text.find(',') == std::string_view::npos) {
    w.reserve(text.size());
    for (char c : text) w.push_back(index(std::string_view(&c, 1)));
    return w;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    w.push_back(index(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return w;
}

bool shortlex_less(WordView a, WordView b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string generated_letter_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "a" + std::to_string(i);
}

}  // namespace ans
