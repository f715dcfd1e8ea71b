#include "ans/morphism.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>

#include "ans/error.hpp"
#include "ans/text_format.hpp"

namespace ans {

Morphism::Morphism(OrderedAlphabet domain, OrderedAlphabet codomain, std::vector<Word> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_.size()) throw InvalidArgument("morphism: one image per domain letter is required");
  for (const auto& img : images_)
    for (Symbol s : img)
      if (s >= codomain_.size()) throw InvalidArgument("morphism: image letter outside the codomain");
}

std::size_t Morphism::max_image_length() const {
  std::size_t m = 0;
  for (const auto& img : images_) m = std::max(m, img.size());
  return m;
}

bool Morphism::is_uniform() const {
  return std::all_of(images_.begin(), images_.end(), [&](const Word& w) { return w.size() == images_[0].size(); });
}

bool Morphism::prolongable(Symbol c) const {
  return is_endomorphism() && c < images_.size() && images_[c].size() >= 2 && images_[c].front() == c;
}

bool Morphism::is_weak_coding() const {
  return std::all_of(images_.begin(), images_.end(), [](const Word& w) { return w.size() <= 1; });
}

bool Morphism::is_erasing() const {
  return std::any_of(images_.begin(), images_.end(), [](const Word& w) { return w.empty(); });
}

Word Morphism::apply(WordView w) const {
  Word out;
  for (Symbol s : w) {
    const auto& img = images_.at(s);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

SymbolStream fixed_point(const Morphism& phi, Symbol c) {
  if (!phi.prolongable(c)) throw InvalidArgument("fixed point: morphism is not prolongable on the seed");
  auto images = std::make_shared<const std::vector<Word>>(phi.images());
  return SymbolStream([images, u = (*images)[c], expanded = std::size_t{1},
                       pos = std::size_t{0}]() mutable -> std::optional<Symbol> {
    while (pos >= u.size()) {
      if (expanded >= u.size()) return std::nullopt;
      const Word& img = (*images)[u[expanded++]];
      u.insert(u.end(), img.begin(), img.end());
    }
    return u[pos++];
  });
}

bool generates_infinite_word(const Morphism& phi, const Morphism& coding, Symbol seed) {
  if (!phi.prolongable(seed)) return false;
  const std::size_t n = phi.domain().size();
  std::vector<bool> current(n, false);
  const Word& first = phi.image(seed);
  for (std::size_t i = 1; i < first.size(); ++i) current[first[i]] = true;
  std::map<std::vector<bool>, std::size_t> seen;
  std::vector<std::vector<bool>> history;
  while (!seen.contains(current)) {
    seen.emplace(current, history.size());
    history.push_back(current);
    std::vector<bool> next(n, false);
    for (Symbol s = 0; s < n; ++s)
      if (current[s])
        for (Symbol t : phi.image(s)) next[t] = true;
    current = std::move(next);
  }
  for (std::size_t k = seen.at(current); k < history.size(); ++k)
    for (Symbol s = 0; s < n; ++s)
      if (history[k][s] && !coding.image(s).empty()) return true;
  return false;
}

Substitution::Substitution(Morphism phi, Morphism coding, Symbol seed)
    : phi_(std::move(phi)), coding_(std::move(coding)), seed_(seed) {
  if (!phi_.is_endomorphism()) throw InvalidArgument("substitution: φ must map Σ to Σ*");
  if (!(coding_.domain() == phi_.domain())) throw InvalidArgument("substitution: h must be defined on Σ");
  if (!phi_.prolongable(seed_)) throw InvalidArgument("substitution: φ is not prolongable on the seed");
  if (!coding_.is_weak_coding()) throw InvalidArgument("substitution: h is not a weak coding");
  if (!generates_infinite_word(phi_, coding_, seed_))
    throw InvalidArgument("substitution: h(φ^ω(c)) is finite");
}

SymbolStream Substitution::generate() const {
  // φ^ω(c) = c x φ(x) φ²(x) … is pumped breadth first. Letters none of
  // whose descendants survive h are dropped with their whole subtree, which
  // keeps sparse languages (most of Σ* erased) tractable.
  const std::size_t n = phi_.domain().size();
  std::vector<bool> productive(n);
  for (Symbol s = 0; s < n; ++s) productive[s] = !coding_.image(s).empty();
  for (bool changed = true; changed;) {
    changed = false;
    for (Symbol s = 0; s < n; ++s) {
      if (productive[s]) continue;
      for (Symbol t : phi_.image(s))
        if (productive[t]) {
          productive[s] = changed = true;
          break;
        }
    }
  }
  std::vector<Word> images(n);
  for (Symbol s = 0; s < n; ++s)
    for (Symbol t : phi_.image(s))
      if (productive[t]) images[s].push_back(t);
  std::vector<Symbol> coded(n, kNoOutput);
  for (Symbol s = 0; s < n; ++s)
    if (!coding_.image(s).empty()) coded[s] = coding_.image(s).front();

  Word u{seed_};
  const Word& first = phi_.image(seed_);
  for (std::size_t i = 1; i < first.size(); ++i)
    if (productive[first[i]]) u.push_back(first[i]);
  return SymbolStream([images = std::move(images), coded = std::move(coded), u = std::move(u),
                       expanded = std::size_t{1}, pos = std::size_t{0}]() mutable -> std::optional<Symbol> {
    while (true) {
      while (pos >= u.size()) {
        if (expanded >= u.size()) return std::nullopt;
        const Word& img = images[u[expanded++]];
        u.insert(u.end(), img.begin(), img.end());
      }
      const Symbol out = coded[u[pos++]];
      if (out != kNoOutput) return out;
    }
  });
}

namespace {

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool forbidden_letter(const std::string& t) { return t == kEpsilonToken || t == kBottomToken; }

}  // namespace

MorphismFile parse_morphism(std::string_view text, const std::string& source) {
  struct Rule {
    std::string lhs;
    std::vector<std::string> rhs;
    std::size_t line;
  };
  std::vector<Rule> rules, coding_rules;
  std::optional<std::pair<std::string, std::size_t>> axiom;
  std::optional<std::vector<std::string>> outputs;
  std::size_t outputs_line = 0;

  std::size_t line_no = 0, pos = 0;
  auto fail = [&](std::size_t line, const std::string& what) { throw ParseError(source, line, what); };
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] == "axiom:") {
      if (axiom) fail(line_no, "repeated 'axiom:' directive");
      if (toks.size() != 2) fail(line_no, "'axiom:' takes exactly one letter");
      axiom.emplace(toks[1], line_no);
    } else if (toks[0] == "outputs:") {
      if (outputs) fail(line_no, "repeated 'outputs:' directive");
      outputs.emplace(toks.begin() + 1, toks.end());
      outputs_line = line_no;
    } else {
      bool is_coding = toks[0] == "h:";
      std::size_t at = is_coding ? 1 : 0;
      if (toks.size() < at + 3 || toks[at + 1] != "->") fail(line_no, "expected a rule 'x -> y z ...'");
      Rule r{toks[at], {toks.begin() + static_cast<std::ptrdiff_t>(at + 2), toks.end()}, line_no};
      if (forbidden_letter(r.lhs)) fail(line_no, "reserved token '" + r.lhs + "' used as a letter");
      if (r.rhs.size() == 1 && r.rhs[0] == kEpsilonToken) r.rhs.clear();
      for (const auto& t : r.rhs)
        if (forbidden_letter(t)) fail(line_no, "reserved token '" + t + "' inside an image");
      (is_coding ? coding_rules : rules).push_back(std::move(r));
    }
  }
  if (rules.empty()) fail(0, "no morphism rules");

  std::vector<std::string> letters;
  std::map<std::string, std::size_t> rule_line;
  for (const auto& r : rules) {
    if (rule_line.contains(r.lhs)) fail(r.line, "duplicate rule for '" + r.lhs + "'");
    rule_line.emplace(r.lhs, r.line);
    letters.push_back(r.lhs);
  }
  OrderedAlphabet sigma(letters);
  std::vector<Word> images;
  for (const auto& r : rules) {
    Word img;
    for (const auto& t : r.rhs) {
      auto s = sigma.find(t);
      if (!s) fail(r.line, "letter '" + t + "' has no rule");
      img.push_back(*s);
    }
    images.push_back(std::move(img));
  }
  MorphismFile out{Morphism(sigma, sigma, std::move(images)), std::nullopt, std::nullopt};
  if (axiom) {
    auto s = sigma.find(axiom->first);
    if (!s) fail(axiom->second, "axiom '" + axiom->first + "' has no rule");
    out.axiom = *s;
  }
  if (!coding_rules.empty() || outputs) {
    std::vector<std::string> delta_names;
    if (outputs) {
      for (const auto& t : *outputs)
        if (is_reserved_token(t)) fail(outputs_line, "reserved token '" + t + "' used as an output symbol");
      delta_names = *outputs;
    } else {
      for (const auto& r : coding_rules)
        for (const auto& t : r.rhs)
          if (std::find(delta_names.begin(), delta_names.end(), t) == delta_names.end()) delta_names.push_back(t);
    }
    OrderedAlphabet delta;
    try {
      delta = OrderedAlphabet(delta_names);
    } catch (const InvalidArgument& e) {
      fail(outputs_line, e.what());
    }
    std::vector<std::optional<Word>> coded(sigma.size());
    for (const auto& r : coding_rules) {
      auto s = sigma.find(r.lhs);
      if (!s) fail(r.line, "coding of unknown letter '" + r.lhs + "'");
      if (coded[*s]) fail(r.line, "duplicate coding for '" + r.lhs + "'");
      Word img;
      for (const auto& t : r.rhs) {
        auto o = delta.find(t);
        if (!o) fail(r.line, "output '" + t + "' is not declared");
        img.push_back(*o);
      }
      coded[*s] = std::move(img);
    }
    std::vector<Word> images_h;
    for (Symbol s = 0; s < sigma.size(); ++s) {
      if (!coded[s]) fail(0, "letter '" + sigma.name(s) + "' has no coding");
      images_h.push_back(std::move(*coded[s]));
    }
    out.coding = Morphism(sigma, delta, std::move(images_h));
  }
  return out;
}

MorphismFile load_morphism(const std::string& path) { return parse_morphism(read_text_file(path), path); }

namespace {

void write_rules(std::ostringstream& out, const Morphism& m, const char* prefix) {
  for (Symbol s = 0; s < m.domain().size(); ++s) {
    out << prefix << m.domain().name(s) << " ->";
    if (m.image(s).empty()) out << ' ' << kEpsilonToken;
    for (Symbol t : m.image(s)) out << ' ' << m.codomain().name(t);
    out << '\n';
  }
}

}  // namespace

std::string format_morphism(const Morphism& phi, std::optional<Symbol> axiom) {
  std::ostringstream out;
  if (axiom) out << "axiom: " << phi.domain().name(*axiom) << '\n';
  write_rules(out, phi, "");
  return out.str();
}

std::string format_substitution(const Substitution& t) {
  std::ostringstream out;
  out << "axiom: " << t.letters().name(t.seed()) << '\n';
  write_rules(out, t.phi(), "");
  out << "outputs:";
  for (const auto& s : t.output_alphabet().symbols()) out << ' ' << s;
  out << '\n';
  write_rules(out, t.coding(), "h: ");
  return out.str();
}

}  // namespace ans
