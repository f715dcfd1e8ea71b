#include "cli.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ans/automatic.hpp"
#include "ans/complexity.hpp"
#include "ans/error.hpp"
#include "ans/morphism.hpp"
#include "ans/numeration.hpp"
#include "ans/operations.hpp"
#include "ans/substitutions.hpp"
#include "ans/text_format.hpp"

namespace ans::cli {
namespace {

using nlohmann::json;

// Styling only touches verdict words and the error prefix, and only on a
// terminal. ANS_COLOR=0 turns it off, ANS_COLOR=1 forces it on.
bool color_enabled(int fd) {
  const char* env = std::getenv("ANS_COLOR");
  if (env && std::string_view(env) == "0") return false;
  if (env && std::string_view(env) == "1") return true;
  return isatty(fd) == 1;
}

std::string paint(const std::string& text, const char* code, bool on) {
  return on ? std::string("\x1b[") + code + "m" + text + "\x1b[0m" : text;
}

Rank parse_rank(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument("not a natural number: '" + text + "'");
  return Rank(text);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string output_name(const OrderedAlphabet& out, Symbol s) {
  return s == kNoOutput ? std::string(kBottomToken) : out.name(s);
}

// Terms are concatenated when every output symbol is one character.
std::string format_terms(const OrderedAlphabet& out, const std::vector<Symbol>& terms) {
  std::vector<std::string> names;
  for (Symbol s : terms) names.push_back(output_name(out, s));
  return join(names, out.single_char() ? "" : ",");
}

std::vector<std::string> term_names(const OrderedAlphabet& out, const std::vector<Symbol>& terms) {
  std::vector<std::string> names;
  for (Symbol s : terms) names.push_back(output_name(out, s));
  return names;
}

json automaton_json(const Automaton& a) {
  json j;
  j["alphabet"] = a.alphabet().symbols();
  j["states"] = a.state_names();
  j["start"] = a.state_name(a.start());
  json trans = json::array();
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      if (a.next(q, s) != kDead)
        trans.push_back({a.state_name(q), a.alphabet().name(s), a.state_name(a.next(q, s))});
  j["transitions"] = trans;
  return j;
}

json dfa_json(const Dfa& a) {
  json j = automaton_json(a);
  std::vector<std::string> finals;
  for (State q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) finals.push_back(a.state_name(q));
  j["final"] = finals;
  return j;
}

json dfao_json(const Dfao& m) {
  json j = automaton_json(m);
  j["outputs"] = m.output_alphabet().symbols();
  json out = json::object();
  for (State q = 0; q < m.num_states(); ++q) out[m.state_name(q)] = output_name(m.output_alphabet(), m.output(q));
  j["output"] = out;
  return j;
}

json morphism_json(const Morphism& phi) {
  json j = json::object();
  for (Symbol s = 0; s < phi.domain().size(); ++s) {
    std::vector<std::string> img;
    for (Symbol t : phi.image(s)) img.push_back(phi.codomain().name(t));
    j[phi.domain().name(s)] = img;
  }
  return j;
}

json profile_json(const ComplexityProfile& p) {
  json j;
  j["prefix"] = p.prefix_length;
  std::vector<std::size_t> ns;
  std::vector<std::uint64_t> ps;
  std::vector<double> ratios;
  for (std::size_t n = 1; n <= p.n_max(); ++n) {
    ns.push_back(n);
    ps.push_back(p.p(n));
    ratios.push_back(static_cast<double>(p.p(n)) / static_cast<double>(n * n));
  }
  j["n"] = ns;
  j["p"] = ps;
  j["ratios"] = ratios;
  return j;
}

std::string fixed(double x, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

// One subcommand run: options are bound at setup, the action runs after parsing.
struct Context {
  std::ostream& out;
  std::ostream& err;
  bool as_json = false;
  std::string output_path;

  // Writes an artifact to -o when given, else to stdout.
  void artifact(const std::string& text) const {
    if (output_path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(output_path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + output_path + "'");
    f << text;
  }
  void emit(const json& j) const { artifact(j.dump(2) + "\n"); }
};

// A sequence given by (system, machine), a morphism file or the binomial word.
struct SourceOptions {
  std::string system;
  std::string machine;
  std::string morphism;
  bool binomial = false;

  void add(CLI::App* cmd) {
    cmd->add_option("-s,--system", system, "DFA of the numeration language");
    cmd->add_option("-m,--dfao", machine, "DFAO producing the sequence");
    cmd->add_option("--morphism", morphism, "Morphism file; uses h(φ^ω(axiom)) or φ^ω(axiom)");
    cmd->add_flag("--binomial", binomial, "The binomial word with three 1s per block");
  }

  struct Opened {
    std::unique_ptr<SymbolStream> stream;
    OrderedAlphabet alphabet;
  };

  Opened open() const {
    const int given = !machine.empty() + !morphism.empty() + binomial;
    if (given != 1) throw InvalidArgument("give exactly one of -m (with -s), --morphism, --binomial");
    if (!machine.empty()) {
      if (system.empty()) throw InvalidArgument("-m needs -s");
      AutomaticSequence u(NumerationSystem(load_dfa(system)), load_dfao(machine));
      return {std::make_unique<SymbolStream>(u.terms()), u.output_alphabet()};
    }
    if (binomial) return {std::make_unique<SymbolStream>(binomial_word_stream()), OrderedAlphabet{"0", "1"}};
    auto file = load_morphism(morphism);
    const Symbol c = file.axiom.value_or(0);
    if (file.coding) {
      Substitution t(file.phi, *file.coding, c);
      return {std::make_unique<SymbolStream>(t.generate()), t.output_alphabet()};
    }
    return {std::make_unique<SymbolStream>(fixed_point(file.phi, c)), file.phi.codomain()};
  }
};

AutomaticSequence load_sequence(const std::string& system, const std::string& machine) {
  if (system.empty() || machine.empty()) throw InvalidArgument("-s and -m are required");
  return {NumerationSystem(load_dfa(system)), load_dfao(machine)};
}

void add_json(CLI::App* cmd, Context& ctx) { cmd->add_flag("--json", ctx.as_json, "Machine-readable output"); }
void add_output(CLI::App* cmd, Context& ctx) { cmd->add_option("-o,--output", ctx.output_path, "Write to a file"); }

using Action = std::function<void()>;

// ---------------------------------------------------------------------------

struct Runner {
  Context ctx;
  Action action;
  void setup_rep(CLI::App& app) {
    auto* cmd = app.add_subcommand("rep", "Representation of natural numbers");
    struct Opts {
      std::string sys;
      std::vector<std::string> ranks;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("-s,--system", o->sys, "DFA of the numeration language")->required();
    cmd->add_option("n", o->ranks, "Ranks (0-based)")->required();
    add_json(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        NumerationSystem s(load_dfa(o->sys));
        json items = json::array();
        std::string text;
        for (const auto& r : o->ranks) {
          const auto w = s.alphabet().format(s.rep(parse_rank(r)));
          items.push_back({{"n", r}, {"word", w}});
          text += w + "\n";
        }
        if (ctx.as_json) ctx.emit({{"command", "rep"}, {"items", items}});
        else ctx.artifact(text);
      };
    });
  }

  void setup_val(CLI::App& app) {
    auto* cmd = app.add_subcommand("val", "Numerical value of words of L");
    struct Opts {
      std::string sys;
      std::vector<std::string> words;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("-s,--system", o->sys, "DFA of the numeration language")->required();
    cmd->add_option("word", o->words, "Words; @eps is the empty word")->required();
    add_json(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        NumerationSystem s(load_dfa(o->sys));
        json items = json::array();
        std::string text;
        for (const auto& w : o->words) {
          const auto n = s.val(s.alphabet().parse(w)).get_str();
          items.push_back({{"n", n}, {"word", w}});
          text += n + "\n";
        }
        if (ctx.as_json) ctx.emit({{"command", "val"}, {"items", items}});
        else ctx.artifact(text);
      };
    });
  }

  void setup_enum(CLI::App& app) {
    auto* cmd = app.add_subcommand("enum", "Words of L in shortlex order");
    struct Opts {
      std::string sys;
      std::string from = "0";
      std::size_t count = 10;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("-s,--system", o->sys, "DFA of the numeration language")->required();
    cmd->add_option("--from", o->from, "First rank (0-based)");
    cmd->add_option("--count", o->count, "Number of words");
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        NumerationSystem s(load_dfa(o->sys));
        std::vector<std::string> words;
        for (const auto& w : s.enumerate(parse_rank(o->from)).take(o->count)) words.push_back(s.alphabet().format(w));
        if (ctx.as_json) ctx.emit({{"command", "enum"}, {"from", o->from}, {"words", words}});
        else ctx.artifact(words.empty() ? "" : join(words, "\n") + "\n");
      };
    });
  }

  void setup_seq(CLI::App& app) {
    auto* cmd = app.add_subcommand("seq", "Terms of an automatic sequence");
    struct Opts {
      std::string sys;
      std::string dfao;
      std::string from = "0";
      std::size_t count = 50;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("-s,--system", o->sys, "DFA of the numeration language")->required();
    cmd->add_option("-m,--dfao", o->dfao, "DFAO producing the sequence")->required();
    cmd->add_option("--from", o->from, "First rank (0-based)");
    cmd->add_option("--count", o->count, "Number of terms");
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto u = load_sequence(o->sys, o->dfao);
        const auto terms = u.terms(parse_rank(o->from)).take(o->count);
        if (ctx.as_json) ctx.emit({{"command", "seq"}, {"from", o->from}, {"terms", term_names(u.output_alphabet(), terms)}});
        else ctx.artifact(format_terms(u.output_alphabet(), terms) + "\n");
      };
    });
  }

  void setup_fiber(CLI::App& app) {
    auto* cmd = app.add_subcommand("fiber", "Minimal DFA of the fiber of one output symbol");
    struct Opts {
      std::string sys;
      std::string dfao;
      std::string symbol;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("-s,--system", o->sys, "DFA of the numeration language")->required();
    cmd->add_option("-m,--dfao", o->dfao, "DFAO producing the sequence")->required();
    cmd->add_option("--symbol", o->symbol, "Output symbol")->required();
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto u = load_sequence(o->sys, o->dfao);
        auto f = fiber(u, u.output_alphabet().index(o->symbol));
        if (ctx.as_json) ctx.emit({{"command", "fiber"}, {"symbol", o->symbol}, {"dfa", dfa_json(f)}});
        else ctx.artifact(format_dfa(f));
      };
    });
  }

  void setup_fibers_to_dfao(CLI::App& app) {
    auto* cmd = app.add_subcommand("fibers-to-dfao", "DFAO from a partition of L into fibers");
    struct Opts {
      std::string sys;
      std::vector<std::string> specs;
      std::vector<std::string> outputs;
      bool compact = false;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("-s,--system", o->sys, "DFA of the numeration language")->required();
    cmd->add_option("--fiber", o->specs, "SYMBOL=FILE, one per output symbol")->required();
    cmd->add_option("--outputs", o->outputs, "Output alphabet order (default: order of --fiber)");
    cmd->add_flag("--compact", o->compact, "Merge states whose outputs differ only on ⊥");
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        NumerationSystem s(load_dfa(o->sys));
        std::vector<std::pair<std::string, Dfa>> given;
        for (const auto& spec : o->specs) {
          const auto eq = spec.find('=');
          if (eq == std::string::npos || eq == 0) throw InvalidArgument("--fiber expects SYMBOL=FILE, got '" + spec + "'");
          given.emplace_back(spec.substr(0, eq), load_dfa(spec.substr(eq + 1)));
        }
        std::vector<std::string> order = o->outputs;
        if (order.empty())
          for (const auto& [name, f] : given) order.push_back(name);
        OrderedAlphabet delta(order);
        std::map<Symbol, Dfa> fibers;
        for (auto& [name, f] : given)
          if (!fibers.emplace(delta.index(name), std::move(f)).second)
            throw InvalidArgument("symbol '" + name + "' has two fibers");
        auto m = reduce_dfao(dfao_from_fibers(s, fibers, delta));
        if (o->compact) m = merge_unspecified(m);
        if (ctx.as_json) ctx.emit({{"command", "fibers-to-dfao"}, {"dfao", dfao_json(m)}});
        else ctx.artifact(format_dfao(m));
      };
    });
  }

  void setup_kernel(CLI::App& app) {
    auto* cmd = app.add_subcommand("kernel", "Classes of the kernel of an automatic sequence");
    struct Opts {
      std::string sys;
      std::string dfao;
      std::size_t terms = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("-s,--system", o->sys, "DFA of the numeration language")->required();
    cmd->add_option("-m,--dfao", o->dfao, "DFAO producing the sequence")->required();
    cmd->add_option("--terms", o->terms, "Also print this many terms of every class subsequence");
    add_json(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto u = load_sequence(o->sys, o->dfao);
        auto k = kernel(u);
        const auto& sigma = u.system().alphabet();
        json classes = json::array();
        std::ostringstream text;
        text << "classes " << k.classes.size() << "\n"
             << "bound " << k.bound() << " = " << k.language_states << " * " << k.machine_states << "\n";
        for (const auto& c : k.classes) {
          const auto prefix = sigma.format(c.representative_prefix);
          json jc{{"id", c.class_id}, {"prefix", prefix}, {"empty", c.empty}};
          text << "k" << c.class_id << " " << prefix << (c.empty ? " empty" : "");
          if (o->terms > 0) {
            const auto sub = subsequence(u, c).take(o->terms);
            jc["terms"] = term_names(u.output_alphabet(), sub);
            text << " " << (sub.empty() ? "-" : format_terms(u.output_alphabet(), sub));
          }
          text << "\n";
          classes.push_back(jc);
        }
        if (ctx.as_json)
          ctx.emit({{"command", "kernel"},
                    {"classes", classes},
                    {"language_states", k.language_states},
                    {"machine_states", k.machine_states},
                    {"bound", k.bound()}});
        else ctx.artifact(text.str());
      };
    });
  }

  void setup_kernel_to_dfao(CLI::App& app) {
    auto* cmd = app.add_subcommand("kernel-to-dfao", "Rebuild a DFAO from a term function by kernel exploration");
    struct Opts {
      std::string sys;
      std::string dfao;
      std::string progression;
      bool squares = false;
      KernelReconstructionOptions opt;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("-s,--system", o->sys, "DFA of the numeration language")->required();
    cmd->add_option("-m,--dfao", o->dfao, "Terms come from this DFAO");
    cmd->add_option("--progression", o->progression, "P:Q, the indicator of P + Qℕ");
    cmd->add_flag("--squares", o->squares, "The indicator of the perfect squares");
    cmd->add_option("--bound", o->opt.bound, "Subsequences are compared on this many terms");
    cmd->add_option("--max-states", o->opt.max_states, "Exploration limit");
    cmd->add_option("--verify", o->opt.verify_terms, "Check the result on this many ranks");
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        if (!o->dfao.empty() + !o->progression.empty() + o->squares != 1)
          throw InvalidArgument("give exactly one of -m, --progression, --squares");
        NumerationSystem s(load_dfa(o->sys));
        TermFunction term;
        OrderedAlphabet delta{"0", "1"};
        if (!o->dfao.empty()) {
          auto u = std::make_shared<AutomaticSequence>(s, load_dfao(o->dfao));
          delta = u->output_alphabet();
          term = [u](const Rank& n) { return u->term(n); };
        } else if (!o->progression.empty()) {
          const auto colon = o->progression.find(':');
          if (colon == std::string::npos) throw InvalidArgument("--progression expects P:Q");
          const Rank p = parse_rank(o->progression.substr(0, colon)), q = parse_rank(o->progression.substr(colon + 1));
          if (q == 0) throw InvalidArgument("--progression needs Q > 0");
          term = [p, q](const Rank& n) -> Symbol { return n >= p && Rank((n - p) % q) == 0; };
        } else {
          term = [](const Rank& n) -> Symbol {
            Rank r = sqrt(n);
            return r * r == n;
          };
        }
        auto m = dfao_from_kernel(term, s, delta, o->opt);
        if (ctx.as_json) ctx.emit({{"command", "kernel-to-dfao"}, {"dfao", dfao_json(m)}});
        else ctx.artifact(format_dfao(m));
      };
    });
  }

  void setup_gaps(CLI::App& app) {
    auto* cmd = app.add_subcommand("gaps", "Gaps between occurrences of a factor");
    struct Opts {
      SourceOptions src;
      std::string factor;
      std::size_t horizon = 1000;
      bool list = false;
    };
    auto o = std::make_shared<Opts>();
    o->src.add(cmd);
    cmd->add_option("--factor", o->factor, "Factor over the output alphabet")->required();
    cmd->add_option("--horizon", o->horizon, "Number of terms scanned");
    cmd->add_flag("--positions", o->list, "List the 1-based positions");
    add_json(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto opened = o->src.open();
        const auto w = opened.alphabet.parse(o->factor);
        auto g = occurrence_gaps(*opened.stream, w, o->horizon);
        if (ctx.as_json) {
          ctx.emit({{"command", "gaps"},
                    {"factor", o->factor},
                    {"horizon", o->horizon},
                    {"positions", g.positions},
                    {"gaps", g.gaps},
                    {"max_gap", g.max_gap()}});
          return;
        }
        std::ostringstream text;
        text << "occurrences " << g.positions.size() << "\n" << "max_gap " << g.max_gap() << "\n";
        if (o->list)
          for (std::size_t p : g.positions) text << p << "\n";
        ctx.artifact(text.str());
      };
    });
  }

  void setup_subst(CLI::App& app) {
    auto* cmd = app.add_subcommand("subst", "Substitution generating an automatic sequence");
    struct Opts {
      std::string sys;
      std::string dfao;
      bool canonical = false;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("-s,--system", o->sys, "DFA of the numeration language")->required();
    cmd->add_option("-m,--dfao", o->dfao, "DFAO producing the sequence")->required();
    cmd->add_flag("--canonical", o->canonical, "Use the minimal L automaton and the reduced machine");
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        const auto lang = load_dfa(o->sys);
        const auto m = load_dfao(o->dfao);
        auto t = o->canonical ? canonical_substitution(lang, m) : substitution_of(lang, m);
        if (ctx.as_json)
          ctx.emit({{"command", "subst"},
                    {"axiom", t.letters().name(t.seed())},
                    {"phi", morphism_json(t.phi())},
                    {"h", morphism_json(t.coding())},
                    {"outputs", t.output_alphabet().symbols()}});
        else ctx.artifact(format_substitution(t));
      };
    });
  }

  void setup_from_morphism(CLI::App& app) {
    auto* cmd = app.add_subcommand("from-morphism", "Numeration system and DFAO of a morphism");
    struct Opts {
      std::string file;
      std::string letter;
      std::string dfao_path;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("morphism", o->file, "Morphism file")->required();
    cmd->add_option("--letter", o->letter, "Seed letter (default: the axiom, else the first letter)");
    cmd->add_option("--dfao", o->dfao_path, "Also write the DFAO to this file");
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto f = load_morphism(o->file);
        const Symbol c = o->letter.empty() ? f.axiom.value_or(0) : f.phi.domain().index(o->letter);
        auto ms = system_from_morphism(f.phi, c);
        if (!o->dfao_path.empty()) Context{ctx.out, ctx.err, false, o->dfao_path}.artifact(format_dfao(ms.machine));
        if (ctx.as_json)
          ctx.emit({{"command", "from-morphism"}, {"dfa", dfa_json(ms.system.language())}, {"dfao", dfao_json(ms.machine)}});
        else ctx.artifact(format_dfa(ms.system.language()));
      };
    });
  }

  void setup_fixpoint(CLI::App& app) {
    auto* cmd = app.add_subcommand("fixpoint", "Prefix of φ^ω(c), or of h(φ^ω(c)) when the file has a coding");
    struct Opts {
      std::string file;
      std::string letter;
      std::size_t count = 50;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("morphism", o->file, "Morphism file")->required();
    cmd->add_option("--letter", o->letter, "Seed letter (default: the axiom, else the first letter)");
    cmd->add_option("--count", o->count, "Number of letters");
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        SourceOptions src;
        src.morphism = o->file;
        if (!o->letter.empty()) {
          // Re-anchor the axiom by rewriting the parsed o->file's seed.
          auto f = load_morphism(o->file);
          const Symbol c = f.phi.domain().index(o->letter);
          std::unique_ptr<SymbolStream> s;
          OrderedAlphabet out;
          if (f.coding) {
            Substitution t(f.phi, *f.coding, c);
            s = std::make_unique<SymbolStream>(t.generate());
            out = t.output_alphabet();
          } else {
            s = std::make_unique<SymbolStream>(fixed_point(f.phi, c));
            out = f.phi.codomain();
          }
          const auto terms = s->take(o->count);
          if (ctx.as_json) ctx.emit({{"command", "fixpoint"}, {"terms", term_names(out, terms)}});
          else ctx.artifact(format_terms(out, terms) + "\n");
          return;
        }
        auto opened = src.open();
        const auto terms = opened.stream->take(o->count);
        if (ctx.as_json) ctx.emit({{"command", "fixpoint"}, {"terms", term_names(opened.alphabet, terms)}});
        else ctx.artifact(format_terms(opened.alphabet, terms) + "\n");
      };
    });
  }

  void setup_complexity(CLI::App& app) {
    auto* cmd = app.add_subcommand("complexity", "Factor complexity of a prefix");
    struct Opts {
      SourceOptions src;
      std::size_t prefix = 10000;
      std::size_t n_max = 20;
    };
    auto o = std::make_shared<Opts>();
    o->src.add(cmd);
    cmd->add_option("--prefix", o->prefix, "Prefix length");
    cmd->add_option("--nmax", o->n_max, "Largest factor length");
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto opened = o->src.open();
        auto p = factor_count(*opened.stream, o->prefix, o->n_max);
        if (p.prefix_length < o->prefix) throw DomainError("the sequence ends after " + std::to_string(p.prefix_length) + " terms");
        std::vector<std::size_t> violations;
        for (std::size_t n = 1; 2 * n <= o->n_max; ++n)
          if (p.p(2 * n) > 4 * p.p(n)) violations.push_back(n);
        json verdicts{{"exactness_horizon", p.exactness_horizon}, {"doubling_violations", violations}};
        if (o->n_max >= 4) verdicts["exponent"] = growth_exponent(p, std::max<std::size_t>(2, o->n_max / 4), o->n_max);
        if (ctx.as_json) {
          json j = profile_json(p);
          j["verdicts"] = verdicts;
          ctx.emit(j);
          return;
        }
        std::ostringstream text;
        text << "prefix " << p.prefix_length << "\n"
             << "exactness_horizon " << p.exactness_horizon << "\n";
        if (verdicts.contains("exponent")) text << "exponent " << fixed(verdicts["exponent"].get<double>()) << "\n";
        text << "doubling_violations " << violations.size() << "\n";
        for (std::size_t n = 1; n <= o->n_max; ++n)
          text << n << " " << p.p(n) << " " << fixed(static_cast<double>(p.p(n)) / static_cast<double>(n * n)) << "\n";
        ctx.artifact(text.str());
      };
    });
  }

  void setup_witness(CLI::App& app) {
    auto* cmd = app.add_subcommand("witness-quadratic", "Quadratic complexity witness 0→01, 1→12, 2→2");
    struct Opts {
      std::size_t prefix = 100000;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--prefix", o->prefix, "Prefix length");
    add_json(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto r = quadratic_witness_check(o->prefix);
        auto ms = system_from_morphism(quadratic_witness_morphism(), 0);
        if (ctx.as_json) {
          ctx.emit({{"command", "witness-quadratic"},
                    {"prefix", r.prefix_length},
                    {"fixed_point", profile_json(r.fixed_point)},
                    {"automatic", profile_json(r.automatic)},
                    {"language", dfa_json(ms.system.language())},
                    {"embedding_ok", r.embedding_ok},
                    {"longest_run", r.longest_run},
                    {"run_target", r.run_target},
                    {"runs_ok", r.runs_ok},
                    {"exponent", r.exponent},
                    {"exponent_threshold", r.exponent_threshold},
                    {"exponent_ok", r.exponent_ok},
                    {"passed", r.passed()}});
          return;
        }
        const bool on = color_enabled(STDOUT_FILENO);
        std::ostringstream text;
        text << "prefix " << r.prefix_length << "\n"
             << "embedding p_v(n) >= p_w(n) " << (r.embedding_ok ? "yes" : "no") << "\n"
             << "longest run " << r.longest_run << " (target " << r.run_target << ")\n"
             << "exponent " << fixed(r.exponent) << " (threshold " << fixed(r.exponent_threshold, 2) << ")\n"
             << "verdict " << (r.passed() ? paint("pass", "32", on) : paint("fail", "31", on)) << "\n";
        ctx.artifact(text.str());
      };
    });
  }

  void setup_binomial(CLI::App& app) {
    auto* cmd = app.add_subcommand("binomial-word", "Prefix of the binomial word and its ratio check");
    struct Opts {
      std::size_t count = 19;
      std::size_t check = 0;
      bool ones = false;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--count", o->count, "Number of bits");
    cmd->add_flag("--ones", o->ones, "Print the 0-based positions of the 1s instead");
    cmd->add_option("--ratio-check", o->check, "Run the p(n)/n² growth check on this many terms");
    add_json(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto b = binomial_word(o->count);
        std::optional<RatioReport> r;
        if (o->check > 0) r = super_quadratic_check(o->check);
        if (ctx.as_json) {
          json j{{"command", "binomial-word"}, {"bits", term_names(OrderedAlphabet{"0", "1"}, b.bits)}, {"ones", b.ones}};
          if (r)
            j["ratio_check"] = {{"n_terms", r->n_terms},
                                {"grid", r->grid},
                                {"ratios", r->ratios},
                                {"growth", r->growth},
                                {"threshold", r->threshold},
                                {"conclusive", r->conclusive},
                                {"passed", r->passed()}};
          ctx.emit(j);
          return;
        }
        std::ostringstream text;
        if (o->ones) {
          std::vector<std::string> s;
          for (auto x : b.ones) s.push_back(std::to_string(x));
          text << join(s, " ") << "\n";
        } else {
          text << format_terms(OrderedAlphabet{"0", "1"}, b.bits) << "\n";
        }
        if (r) {
          const bool on = color_enabled(STDOUT_FILENO);
          for (std::size_t i = 0; i < r->grid.size(); ++i) text << r->grid[i] << " " << fixed(r->ratios[i]) << "\n";
          text << "growth " << fixed(r->growth, 2) << "\n"
               << "verdict "
               << (!r->conclusive ? paint("inconclusive", "33", on)
                                  : r->passed() ? paint("pass", "32", on) : paint("fail", "31", on))
               << "\n";
        }
        ctx.artifact(text.str());
      };
    });
  }

  void setup_equiv(CLI::App& app) {
    auto* cmd = app.add_subcommand("equiv", "Language equality of two DFAs");
    struct Opts {
      std::string a_path;
      std::string b_path;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("a", o->a_path, "First DFA")->required();
    cmd->add_option("b", o->b_path, "Second DFA")->required();
    add_json(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        const auto a = load_dfa(o->a_path);
        const auto e = equivalent(a, load_dfa(o->b_path));
        const std::optional<std::string> witness = e.witness ? std::optional(a.alphabet().format(*e.witness)) : std::nullopt;
        if (ctx.as_json) {
          json j{{"command", "equiv"}, {"equivalent", e.equivalent}};
          j["witness"] = witness ? json(*witness) : json(nullptr);
          ctx.emit(j);
          return;
        }
        const bool on = color_enabled(STDOUT_FILENO);
        if (e.equivalent) ctx.artifact(paint("equivalent", "32", on) + "\n");
        else ctx.artifact(paint("not equivalent", "31", on) + "\nwitness " + witness.value_or("") + "\n");
      };
    });
  }

  void setup_minimize(CLI::App& app) {
    auto* cmd = app.add_subcommand("minimize", "Minimal DFA with canonical state numbering");
    struct Opts {
      std::string path;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("dfa", o->path, "DFA file")->required();
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto m = minimize(load_dfa(o->path));
        if (ctx.as_json) ctx.emit({{"command", "minimize"}, {"dfa", dfa_json(m)}});
        else ctx.artifact(format_dfa(m));
      };
    });
  }

  void setup_reduce(CLI::App& app) {
    auto* cmd = app.add_subcommand("reduce", "Reduced DFAO (accessible, output-equivalent states merged)");
    struct Opts {
      std::string path;
      bool compact = false;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("dfao", o->path, "DFAO file")->required();
    cmd->add_flag("--compact", o->compact, "Also merge states whose outputs differ only on ⊥");
    add_json(cmd, ctx);
    add_output(cmd, ctx);
    cmd->callback([this, o] {
      action = [this, o] {
        auto m = reduce_dfao(load_dfao(o->path));
        if (o->compact) m = merge_unspecified(m);
        if (ctx.as_json) ctx.emit({{"command", "reduce"}, {"dfao", dfao_json(m)}});
        else ctx.artifact(format_dfao(m));
      };
    });
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Abstract numeration systems, automatic sequences and substitutions", "ans"};
  app.require_subcommand(1);
  Runner r{Context{out, err, false, {}}, {}};
  for (auto setup : {&Runner::setup_rep, &Runner::setup_val, &Runner::setup_enum, &Runner::setup_seq,
                     &Runner::setup_fiber, &Runner::setup_fibers_to_dfao, &Runner::setup_kernel,
                     &Runner::setup_kernel_to_dfao, &Runner::setup_gaps, &Runner::setup_subst,
                     &Runner::setup_from_morphism, &Runner::setup_fixpoint, &Runner::setup_complexity,
                     &Runner::setup_witness, &Runner::setup_binomial, &Runner::setup_equiv, &Runner::setup_minimize,
                     &Runner::setup_reduce})
    (r.*setup)(app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInternal;
  }

  const bool on = color_enabled(STDERR_FILENO);
  try {
    if (r.action) r.action();
    return kExitOk;
  } catch (const DomainError& e) {
    err << paint("ans: domain error:", "31", on) << " " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << paint("ans: error:", "31", on) << " " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace ans::cli
