#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ans/alphabet.hpp"
#include "ans/stream.hpp"

namespace ans {

/// Monoid morphism Σ* → Γ* given by the image of every letter.
class Morphism {
 public:
  Morphism(OrderedAlphabet domain, OrderedAlphabet codomain, std::vector<Word> images);

  const OrderedAlphabet& domain() const { return domain_; }
  const OrderedAlphabet& codomain() const { return codomain_; }
  const Word& image(Symbol s) const { return images_.at(s); }
  const std::vector<Word>& images() const { return images_; }

  std::size_t max_image_length() const;
  bool is_endomorphism() const { return domain_ == codomain_; }
  bool is_uniform() const;
  /// φ(c) ∈ cΣ* with |φ(c)| ≥ 2, so φ^ω(c) exists and is not just c.
  bool prolongable(Symbol c) const;
  /// Every image is empty or a single letter.
  bool is_weak_coding() const;
  bool is_erasing() const;

  Word apply(WordView w) const;

 private:
  OrderedAlphabet domain_;
  OrderedAlphabet codomain_;
  std::vector<Word> images_;
};

/// φ^ω(c) produced by the expanding-prefix pump: the prefix u starts as
/// φ(c) and φ(u[i]) is appended for i = 1, 2, ... The stream ends only if
/// the fixed point is finite (possible with an erasing φ). Throws
/// InvalidArgument unless φ is prolongable on c.
SymbolStream fixed_point(const Morphism& phi, Symbol c);

/// Substitution T = (φ, h, c): φ prolongable on c, h a weak coding and
/// h(φ^ω(c)) infinite. Generates u_T = h(φ^ω(c)).
class Substitution {
 public:
  /// Validates every invariant; throws InvalidArgument otherwise.
  Substitution(Morphism phi, Morphism coding, Symbol seed);

  const Morphism& phi() const { return phi_; }
  const Morphism& coding() const { return coding_; }
  Symbol seed() const { return seed_; }
  const OrderedAlphabet& letters() const { return phi_.domain(); }
  const OrderedAlphabet& output_alphabet() const { return coding_.codomain(); }

  SymbolStream generate() const;

 private:
  Morphism phi_;
  Morphism coding_;
  Symbol seed_;
};

/// True iff h(φ^ω(c)) is infinite. Decided exactly from the eventually
/// periodic sequence of letter sets alph(φ^k(x)), where φ(c) = c x.
bool generates_infinite_word(const Morphism& phi, const Morphism& coding, Symbol seed);

// Text format ('#' comments):
//
//   axiom: 0
//   0 -> 0 1 0 1          rule order fixes the letter order
//   1 -> 1 1
//   outputs: x y          optional; output alphabet order of the weak coding
//   h: 0 -> x             optional weak coding, "@eps" for erasure
//   h: 1 -> @eps
//
// "@eps" and "⊥" may not be used as letters. Generated letters such as
// "@alpha" are accepted so that emitted substitutions can be read back.

struct MorphismFile {
  Morphism phi;
  std::optional<Symbol> axiom;
  std::optional<Morphism> coding;
};

MorphismFile parse_morphism(std::string_view text, const std::string& source = "<input>");
MorphismFile load_morphism(const std::string& path);

std::string format_morphism(const Morphism& phi, std::optional<Symbol> axiom = std::nullopt);
std::string format_substitution(const Substitution& t);

}  // namespace ans
