#include "ans/substitutions.hpp"

#include <algorithm>

#include "ans/error.hpp"
#include "ans/operations.hpp"

namespace ans {

StateMorphism state_morphism(const Automaton& m) {
  if (!m.is_complete()) throw InvalidArgument("state morphism: the automaton must be complete");
  const std::size_t n = m.num_states();
  const std::size_t k = m.alphabet().size();
  auto names = m.state_names();
  names.emplace_back(kAlphaName);
  OrderedAlphabet letters(std::move(names));
  const auto alpha = static_cast<Symbol>(n);
  std::vector<Word> images(n + 1);
  for (State q = 0; q < n; ++q) {
    images[q].reserve(k);
    for (Symbol s = 0; s < k; ++s) images[q].push_back(m.next(q, s));
  }
  images[alpha] = {alpha, m.start()};
  return StateMorphism{Morphism(letters, letters, std::move(images)), alpha};
}

Substitution substitution_of(const Dfa& language, const Dfao& machine) {
  ProductDfao prod = product(language, machine);
  StateMorphism sm = state_morphism(prod.machine);
  std::vector<Word> coded(sm.phi.domain().size());
  for (State p = 0; p < prod.machine.num_states(); ++p) {
    if (!prod.left_final[p]) continue;
    Symbol out = prod.machine.output(p);
    if (out == kNoOutput)
      throw DomainError("substitution: the machine has no output in product state " + prod.machine.state_name(p) +
                        ", which is reached by a word of L");
    coded[p] = {out};
  }
  Morphism h(sm.phi.domain(), machine.output_alphabet(), std::move(coded));
  return Substitution(std::move(sm.phi), std::move(h), sm.alpha);
}

Substitution substitution_of(const AutomaticSequence& u) {
  return substitution_of(u.system().language(), u.machine());
}

Substitution canonical_substitution(const Dfa& language, const Dfao& machine) {
  return substitution_of(minimize(language), reduce_dfao(machine));
}

MorphicSystem system_from_morphism(const Morphism& phi, Symbol seed) {
  if (!phi.prolongable(seed)) throw InvalidArgument("morphic system: φ is not prolongable on the seed");
  for (Symbol x = 0; x < phi.domain().size(); ++x)
    if (phi.image(x).empty())
      throw InvalidArgument("morphic system: the image of '" + phi.domain().name(x) + "' is empty");
  const std::size_t width = phi.max_image_length();
  std::vector<std::string> sigma_names;
  for (std::size_t i = 0; i < width; ++i) sigma_names.push_back(generated_letter_name(i));
  OrderedAlphabet sigma(std::move(sigma_names));

  const std::size_t n = phi.domain().size();
  std::vector<State> trans(n * width, kDead);
  for (Symbol x = 0; x < n; ++x) {
    const Word& img = phi.image(x);
    for (std::size_t i = 0; i < img.size(); ++i) trans[x * width + i] = img[i];
  }
  std::vector<Symbol> identity(n);
  for (Symbol x = 0; x < n; ++x) identity[x] = x;
  Dfa language(sigma, seed, trans, std::vector<bool>(n, true), phi.domain().symbols());
  Dfao machine(sigma, phi.domain(), seed, std::move(trans), std::move(identity), phi.domain().symbols());
  return MorphicSystem{NumerationSystem(language), std::move(machine)};
}

bool is_substitution_morphism(const SubstitutionMap& m, const Substitution& t, const Substitution& target) {
  const std::size_t n = t.letters().size();
  const std::size_t d = t.output_alphabet().size();
  const std::size_t n2 = target.letters().size();
  const std::size_t d2 = target.output_alphabet().size();
  if (m.on_letters.size() != n || m.on_outputs.size() != d)
    throw InvalidArgument("substitution morphism: the map is not total on Σ ∪ Δ");
  if (std::any_of(m.on_letters.begin(), m.on_letters.end(), [&](Symbol s) { return s >= n2; }) ||
      std::any_of(m.on_outputs.begin(), m.on_outputs.end(), [&](Symbol s) { return s >= d2; }))
    throw InvalidArgument("substitution morphism: image outside Σ' ∪ Δ'");

  auto covers = [](const std::vector<Symbol>& image, std::size_t size) {
    std::vector<bool> hit(size, false);
    for (Symbol s : image) hit[s] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  };
  if (!covers(m.on_letters, n2) || !covers(m.on_outputs, d2)) return false;
  if (m.on_letters[t.seed()] != target.seed()) return false;

  auto map_word = [](const std::vector<Symbol>& f, const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Symbol s : w) out.push_back(f[s]);
    return out;
  };
  for (Symbol s = 0; s < n; ++s) {
    if (map_word(m.on_letters, t.phi().image(s)) != target.phi().image(m.on_letters[s])) return false;
    if (map_word(m.on_outputs, t.coding().image(s)) != target.coding().image(m.on_letters[s])) return false;
  }
  return true;
}

}  // namespace ans
