#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ans {

/// Index of a letter inside an OrderedAlphabet. Comparing two Symbols of
/// the same alphabet compares the letters in the alphabet order.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

/// Spelling of the empty word in every text interface.
inline constexpr std::string_view kEpsilonToken = "@eps";
/// Placeholder output of states never reached by a word of L.
inline constexpr std::string_view kBottomToken = "⊥";
/// Prefix reserved for generated letters and states.
inline constexpr std::string_view kFreshPrefix = "@";

/// True for tokens a user file may not declare as a symbol or state.
bool is_reserved_token(std::string_view token);

/// Finite alphabet whose declaration order is the letter order.
class OrderedAlphabet {
 public:
  OrderedAlphabet() = default;
  explicit OrderedAlphabet(std::vector<std::string> symbols);
  OrderedAlphabet(std::initializer_list<std::string> symbols)
      : OrderedAlphabet(std::vector<std::string>(symbols)) {}

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::string& name(Symbol s) const { return symbols_.at(s); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::optional<Symbol> find(std::string_view name) const;
  /// Like find() but throws InvalidArgument for unknown names.
  Symbol index(std::string_view name) const;

  /// True when every letter is spelled with a single character, in which
  /// case words are written by plain concatenation.
  bool single_char() const { return single_char_; }

  /// "@eps" for the empty word; concatenation when single_char(),
  /// otherwise letters joined by ','.
  std::string format(WordView w) const;
  /// Inverse of format(). Throws InvalidArgument on unknown letters.
  Word parse(std::string_view text) const;

  friend bool operator==(const OrderedAlphabet& a, const OrderedAlphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
  bool single_char_ = true;
};

/// Shortlex comparison: length first, then letter order.
bool shortlex_less(WordView a, WordView b);

/// Generated letter names "a", "b", ..., "z", "a26", "a27", ...
std::string generated_letter_name(std::size_t i);

}  // namespace ans
