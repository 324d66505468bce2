#include "symta/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace symta {

ParseError::ParseError(std::size_t line, const std::string &message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message
                              : message),
      line_(line) {}

namespace {

enum class Tok { Word, LParen, RParen, Comma, Arrow, Slash, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (is_space(c)) {
      ++i;
    } else if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", line});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", line});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, ",", line});
      ++i;
    } else if (c == '/') {
      out.push_back({Tok::Slash, "/", line});
      ++i;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", line});
      i += 2;
    } else {
      std::size_t start = i;
      while (i < text.size() && !is_space(text[i]) &&
             std::string_view("(),/%").find(text[i]) == std::string_view::npos &&
             !(text[i] == '-' && i + 1 < text.size() && text[i + 1] == '>'))
        ++i;
      out.push_back({Tok::Word, std::string(text.substr(start, i - start)), line});
    }
  }
  out.push_back({Tok::End, "end of input", line});
  return out;
}

class DocumentParser {
 public:
  explicit DocumentParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  TimbukDocument parse() {
    TimbukDocument doc;
    keyword("Ops");
    std::set<std::pair<std::string, unsigned>> seen;
    while (peek().kind == Tok::Word && peek().text != "Automaton" &&
           peek().text != "Transducer") {
      const Token &t = next();
      auto colon = t.text.rfind(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == t.text.size() ||
          !all_digits(t.text.substr(colon + 1)))
        throw ParseError(t.line, "expected <name>:<arity>, got '" + t.text + "'");
      std::string name = t.text.substr(0, colon);
      unsigned arity = parse_number(t.text.substr(colon + 1), t.line);
      if (!seen.emplace(name, arity).second)
        throw ParseError(t.line, "operator " + t.text + " declared twice");
      doc.ops.emplace_back(std::move(name), arity);
    }
    if (peek().kind != Tok::Word)
      throw ParseError(peek().line, "expected 'Automaton' or 'Transducer'");
    doc.transducer = next().text == "Transducer";
    doc.name = word("automaton name").text;

    keyword("States");
    while (peek().kind == Tok::Word && peek().text != "Final") {
      const Token &t = next();
      std::string name = t.text;
      auto colon = name.rfind(':');
      if (colon != std::string::npos && colon > 0 && colon + 1 < name.size() &&
          all_digits(name.substr(colon + 1)))
        name.resize(colon);
      doc.states.push_back(std::move(name));
      doc.state_lines.push_back(t.line);
    }
    keyword("Final");
    keyword("States");
    while (peek().kind == Tok::Word && peek().text != "Transitions") {
      const Token &t = next();
      doc.finals.push_back(t.text);
      doc.final_lines.push_back(t.line);
    }
    keyword("Transitions");
    while (peek().kind != Tok::End) doc.rules.push_back(rule(doc.transducer));
    return doc;
  }

 private:
  static bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }

  static unsigned parse_number(const std::string &s, std::size_t line) {
    try {
      unsigned long v = std::stoul(s);
      if (v > 64) throw std::out_of_range("arity");
      return static_cast<unsigned>(v);
    } catch (const std::exception &) {
      throw ParseError(line, "arity '" + s + "' out of range");
    }
  }

  const Token &peek() const { return toks_[pos_]; }
  const Token &next() {
    const Token &t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  const Token &expect(Tok kind, const std::string &what) {
    if (peek().kind != kind)
      throw ParseError(peek().line,
                       "expected " + what + ", got '" + peek().text + "'");
    return next();
  }
  const Token &word(const std::string &what) { return expect(Tok::Word, what); }
  void keyword(const std::string &kw) {
    if (peek().kind != Tok::Word || peek().text != kw)
      throw ParseError(peek().line,
                       "expected '" + kw + "', got '" + peek().text + "'");
    next();
  }

  TimbukRule rule(bool transducer) {
    TimbukRule r;
    const Token &head = word("rule symbol");
    r.symbol = head.text;
    r.line = head.line;
    if (peek().kind == Tok::LParen) {
      next();
      if (peek().kind != Tok::RParen) {
        r.source.push_back(word("state").text);
        while (peek().kind == Tok::Comma) {
          next();
          r.source.push_back(word("state").text);
        }
      }
      expect(Tok::RParen, "')'");
    }
    if (peek().kind == Tok::Slash) {
      if (!transducer)
        throw ParseError(peek().line, "output symbol in an automaton rule");
      next();
      r.output = word("output symbol").text;
    } else if (transducer) {
      throw ParseError(peek().line, "expected '/' and an output symbol");
    }
    expect(Tok::Arrow, "'->'");
    r.target = word("target state").text;
    return r;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct Resolver {
  const TimbukDocument &doc;
  const Alphabet &alphabet;
  std::set<std::pair<std::string, unsigned>> declared;

  Resolver(const TimbukDocument &d, const Alphabet &a) : doc(d), alphabet(a) {
    for (const auto &op : d.ops) declared.insert(op);
  }

  SymbolId symbol(const std::string &name, std::size_t arity,
                  std::size_t line) const {
    if (!declared.count({name, static_cast<unsigned>(arity)})) {
      std::string arities;
      for (const auto &[n, a] : doc.ops)
        if (n == name) arities += (arities.empty() ? "" : ", ") + std::to_string(a);
      if (arities.empty()) throw ParseError(line, "undeclared symbol " + name);
      throw ParseError(line, "symbol " + name + " declared with arity " +
                                 arities + " but used with " +
                                 std::to_string(arity) + " arguments");
    }
    auto id = alphabet.find(name, static_cast<unsigned>(arity));
    if (!id)
      throw ParseError(line, "symbol " + name + ":" + std::to_string(arity) +
                                 " missing from the alphabet");
    return *id;
  }

  template <class Store>
  void declare_states(Store &store) const {
    for (std::size_t i = 0; i < doc.states.size(); ++i) {
      if (store.find_state(doc.states[i]))
        throw ParseError(doc.state_lines[i],
                         "state " + doc.states[i] + " declared twice");
      store.add_state(doc.states[i]);
    }
    for (std::size_t i = 0; i < doc.finals.size(); ++i)
      store.set_final(state(store, doc.finals[i], doc.final_lines[i]));
  }

  template <class Store>
  StateId state(const Store &store, const std::string &name,
                std::size_t line) const {
    auto id = store.find_state(name);
    if (!id) throw ParseError(line, "undeclared state " + name);
    return *id;
  }

  template <class Store>
  SuperState source(const Store &store, const TimbukRule &r) const {
    SuperState out;
    for (const std::string &q : r.source) out.push_back(state(store, q, r.line));
    return out;
  }
};

void require_kind(const TimbukDocument &doc, bool transducer) {
  if (doc.transducer != transducer)
    throw ParseError(0, transducer ? "expected a transducer document"
                                   : "expected an automaton document");
}

std::string state_list(const TransitionStore &s, bool finals_only) {
  std::string out;
  for (StateId q = 0; q < s.state_count(); ++q) {
    if (finals_only && !s.is_final(q)) continue;
    out += ' ';
    out += s.state_name(q);
  }
  return out;
}

std::string header(const TransitionStore &s, const char *kind) {
  std::string out = "Ops";
  for (const Symbol &f : s.alphabet().symbols())
    out += " " + f.name + ":" + std::to_string(f.arity);
  out += "\n";
  out += std::string(kind) + " " + (s.name().empty() ? "A" : s.name()) + "\n";
  out += "States" + state_list(s, false) + "\n";
  out += "Final States" + state_list(s, true) + "\n";
  out += "Transitions\n";
  return out;
}

std::string lhs(const TransitionStore &s, SymbolId f, const SuperState &source) {
  std::string out = s.alphabet().symbol(f).name;
  if (source.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (i) out += ',';
    out += s.state_name(source[i]);
  }
  return out + ')';
}

SymbolAssignment half(const SymbolAssignment &pair, std::size_t offset) {
  SymbolAssignment out(pair.width() / 2);
  for (std::size_t i = 0; i < out.width(); ++i) out[i] = pair[2 * i + offset];
  return out;
}

// Targets per symbol of one super-state of an automaton.
std::map<SymbolId, StateSet> symbol_targets(const TreeAutomaton &a,
                                            const SuperState &source) {
  std::map<SymbolId, StateSet> out;
  const auto arity = static_cast<unsigned>(source.size());
  for (const auto &[cube, targets] :
       extract_cubes(a.manager(), a.root(source), {Bank::X}))
    for (SymbolId f : a.alphabet().decode_cube(cube, arity))
      out[f] = set_union(out[f], targets);
  return out;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

TimbukDocument parse_timbuk_document(std::string_view text) {
  return DocumentParser(tokenize(text)).parse();
}

std::shared_ptr<Alphabet> merged_alphabet(
    const std::vector<const TimbukDocument *> &documents) {
  auto alphabet = std::make_shared<Alphabet>();
  for (const TimbukDocument *doc : documents)
    for (const auto &[name, arity] : doc->ops)
      if (!alphabet->find(name, arity)) alphabet->add_symbol(name, arity);
  alphabet->freeze();
  return alphabet;
}

TreeAutomaton build_automaton(const TimbukDocument &doc,
                              std::shared_ptr<const Alphabet> alphabet,
                              std::shared_ptr<Manager> manager) {
  require_kind(doc, false);
  TreeAutomaton a(alphabet, std::move(manager), doc.name);
  Resolver resolve(doc, *alphabet);
  resolve.declare_states(a);
  std::map<std::pair<SymbolId, SuperState>, StateSet> rules;
  for (const TimbukRule &r : doc.rules) {
    SymbolId f = resolve.symbol(r.symbol, r.source.size(), r.line);
    StateSet &targets = rules[{f, resolve.source(a, r)}];
    targets = set_union(targets, {resolve.state(a, r.target, r.line)});
  }
  for (const auto &[key, targets] : rules)
    a.insert_transition(key.first, key.second, targets);
  return a;
}

Transducer build_transducer(const TimbukDocument &doc,
                            std::shared_ptr<const Alphabet> alphabet,
                            std::shared_ptr<Manager> manager) {
  require_kind(doc, true);
  Transducer t(alphabet, std::move(manager), doc.name);
  Resolver resolve(doc, *alphabet);
  resolve.declare_states(t);
  std::map<std::tuple<SymbolId, SuperState, SymbolId>, StateSet> rules;
  for (const TimbukRule &r : doc.rules) {
    SymbolId f = resolve.symbol(r.symbol, r.source.size(), r.line);
    auto candidates = alphabet->find_name(*r.output);
    SymbolId g = 0;
    bool found = false;
    for (SymbolId c : candidates)
      if (alphabet->symbol(c).arity == r.source.size()) {
        g = resolve.symbol(*r.output, r.source.size(), r.line);
        found = true;
      }
    if (!found) {
      if (candidates.empty())
        throw ParseError(r.line, "undeclared symbol " + *r.output);
      throw ParseError(r.line, "cannot relabel " + r.symbol + " of arity " +
                                   std::to_string(r.source.size()) + " to " +
                                   *r.output + " of a different arity");
    }
    StateSet &targets = rules[{f, resolve.source(t, r), g}];
    targets = set_union(targets, {resolve.state(t, r.target, r.line)});
  }
  for (const auto &[key, targets] : rules)
    t.insert_rule(std::get<0>(key), std::get<1>(key), std::get<2>(key), targets);
  return t;
}

TreeAutomaton parse_timbuk(std::string_view text) {
  TimbukDocument doc = parse_timbuk_document(text);
  require_kind(doc, false);
  auto alphabet = merged_alphabet({&doc});
  auto manager = std::make_shared<Manager>(alphabet->width());
  return build_automaton(doc, alphabet, manager);
}

Transducer parse_timbuk_transducer(std::string_view text) {
  TimbukDocument doc = parse_timbuk_document(text);
  require_kind(doc, true);
  auto alphabet = merged_alphabet({&doc});
  auto manager = std::make_shared<Manager>(alphabet->width());
  return build_transducer(doc, alphabet, manager);
}

std::string write_timbuk(const TreeAutomaton &a) {
  std::string out = header(a, "Automaton");
  a.index().for_each([&](const SuperState &source, NodeRef) {
    for (const auto &[f, targets] : symbol_targets(a, source))
      for (StateId q : targets)
        out += lhs(a, f, source) + " -> " + a.state_name(q) + "\n";
  });
  return out;
}

std::string write_timbuk(const Transducer &t) {
  std::string out = header(t, "Transducer");
  const Alphabet &alphabet = t.alphabet();
  t.index().for_each([&](const SuperState &source, NodeRef root) {
    const auto arity = static_cast<unsigned>(source.size());
    std::map<std::pair<SymbolId, SymbolId>, StateSet> rules;
    for (const auto &[cube, targets] :
         extract_cubes(t.manager(), root, {Bank::X, Bank::Y}))
      for (SymbolId f : alphabet.decode_cube(half(cube, 0), arity))
        for (SymbolId g : alphabet.decode_cube(half(cube, 1), arity))
          rules[{f, g}] = set_union(rules[{f, g}], targets);
    for (const auto &[fg, targets] : rules)
      for (StateId q : targets)
        out += lhs(t, fg.first, source) + " / " +
               alphabet.symbol(fg.second).name + " -> " + t.state_name(q) + "\n";
  });
  return out;
}

Term parse_term(std::string_view text, const Alphabet &alphabet) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  };
  auto fail = [&](const std::string &message) -> ParseError {
    return ParseError(1, "term: " + message + " at offset " + std::to_string(pos));
  };
  auto rec = [&](auto &self) -> Term {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && !is_space(text[pos]) && text[pos] != '(' &&
           text[pos] != ')' && text[pos] != ',')
      ++pos;
    if (start == pos) throw fail("expected a symbol name");
    std::string name(text.substr(start, pos - start));
    std::vector<Term> children;
    skip();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      skip();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
      } else {
        while (true) {
          children.push_back(self(self));
          skip();
          if (pos < text.size() && text[pos] == ',') {
            ++pos;
          } else if (pos < text.size() && text[pos] == ')') {
            ++pos;
            break;
          } else {
            throw fail("expected ',' or ')'");
          }
        }
      }
    }
    auto id = alphabet.find(name, static_cast<unsigned>(children.size()));
    if (!id)
      throw fail("no symbol " + name + " of arity " +
                 std::to_string(children.size()));
    return Term{*id, std::move(children)};
  };
  Term t = rec(rec);
  skip();
  if (pos != text.size()) throw fail("trailing input");
  return t;
}

std::vector<std::pair<SymbolAssignment, StateSet>> extract_cubes(
    const Manager &m, NodeRef root, const std::vector<Bank> &banks) {
  std::vector<Bank> sorted = banks;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<unsigned> vars;
  for (unsigned i = 0; i < m.bank_width(); ++i)
    for (Bank b : sorted) vars.push_back(Manager::variable(b, i));

  std::vector<std::pair<SymbolAssignment, StateSet>> out;
  SymbolAssignment cube(vars.size());
  auto rec = [&](auto &self, NodeRef node, std::size_t k) -> void {
    const bool terminal = m.is_terminal(node);
    if (k == vars.size()) {
      if (!terminal)
        throw std::invalid_argument("diagram tests a variable outside the banks");
      const StateSet &leaf = m.leaf_value(m.leaf_of(node));
      if (!leaf.empty()) out.emplace_back(cube, leaf);
      return;
    }
    if (terminal || m.var_of(node) > vars[k]) {
      self(self, node, k + 1);
      return;
    }
    if (m.var_of(node) < vars[k])
      throw std::invalid_argument("diagram tests a variable outside the banks");
    cube[k] = Bit::Zero;
    self(self, m.low(node), k + 1);
    cube[k] = Bit::One;
    self(self, m.high(node), k + 1);
    cube[k] = Bit::Any;
  };
  rec(rec, root, 0);
  return out;
}

std::vector<TransitionCube> extract_transitions(const TreeAutomaton &a) {
  std::vector<TransitionCube> out;
  a.index().for_each([&](const SuperState &source, NodeRef root) {
    for (auto &[cube, targets] : extract_cubes(a.manager(), root, {Bank::X}))
      out.push_back({source, std::move(cube), std::move(targets)});
  });
  return out;
}

std::vector<TransitionCube> extract_transitions(const Transducer &t) {
  std::vector<TransitionCube> out;
  t.index().for_each([&](const SuperState &source, NodeRef root) {
    for (auto &[cube, targets] :
         extract_cubes(t.manager(), root, {Bank::X, Bank::Y}))
      out.push_back({source, std::move(cube), std::move(targets)});
  });
  return out;
}

std::string to_dot(const TreeAutomaton &a) {
  std::ostringstream out;
  out << "digraph \"" << escape(a.name()) << "\" {\n";
  out << "  node [shape=circle];\n";
  for (StateId q = 0; q < a.state_count(); ++q) {
    out << "  q" << q << " [label=\"" << escape(a.state_name(q)) << "\"";
    if (a.is_final(q)) out << ", shape=doublecircle";
    out << "];\n";
  }
  std::size_t next = 0;
  a.index().for_each([&](const SuperState &source, NodeRef) {
    const std::size_t sp = next++;
    out << "  sp" << sp << " [shape=record, label=\"";
    for (std::size_t i = 0; i < source.size(); ++i)
      out << (i ? "|" : "") << "<p" << i + 1 << ">";
    out << "\"];\n";
    for (std::size_t i = 0; i < source.size(); ++i)
      out << "  q" << source[i] << " -> sp" << sp << ":p" << i + 1
          << " [label=\"" << i + 1 << "\"];\n";
    std::map<StateId, std::vector<std::string>> labels;
    for (const auto &[f, targets] : symbol_targets(a, source))
      for (StateId q : targets) {
        auto &names = labels[q];
        const std::string &name = a.alphabet().symbol(f).name;
        if (std::find(names.begin(), names.end(), name) == names.end())
          names.push_back(name);
      }
    for (const auto &[q, names] : labels) {
      std::string joined;
      for (const std::string &n : names) joined += (joined.empty() ? "" : ",") + n;
      out << "  sp" << sp << " -> q" << q << " [label=\"" << escape(joined)
          << "\"];\n";
    }
  });
  out << "}\n";
  return out.str();
}

}  // namespace symta
