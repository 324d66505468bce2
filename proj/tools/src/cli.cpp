#include "symta/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symta/io.hpp"
#include "symta/ops.hpp"
#include "symta/oracle.hpp"
#include "symta/transducer.hpp"

namespace symta::cli {

namespace {

constexpr unsigned kOracleHeight = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Format problems are reported with the offending file.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  if (path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return buffer.str();
}

void write_output(const std::string &path, const std::string &text,
                  std::ostream &out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw IoError("cannot write " + path);
}

// Documents of one command, bound to one alphabet and manager.
class Workspace {
 public:
  explicit Workspace(const std::vector<std::string> &paths) {
    for (const std::string &path : paths) {
      try {
        docs_.push_back(parse_timbuk_document(read_file(path)));
      } catch (const ParseError &e) {
        throw FormatError(path + ": " + e.what());
      }
      paths_.push_back(path);
    }
    std::vector<const TimbukDocument *> pointers;
    for (const auto &d : docs_) pointers.push_back(&d);
    alphabet_ = merged_alphabet(pointers);
    manager_ = std::make_shared<Manager>(alphabet_->width());
  }

  TreeAutomaton automaton(std::size_t i) const {
    try {
      return build_automaton(docs_[i], alphabet_, manager_);
    } catch (const ParseError &e) {
      throw FormatError(paths_[i] + ": " + e.what());
    }
  }
  Transducer transducer(std::size_t i) const {
    try {
      return build_transducer(docs_[i], alphabet_, manager_);
    } catch (const ParseError &e) {
      throw FormatError(paths_[i] + ": " + e.what());
    }
  }

 private:
  std::vector<std::string> paths_;
  std::vector<TimbukDocument> docs_;
  std::shared_ptr<Alphabet> alphabet_;
  std::shared_ptr<Manager> manager_;
};

std::set<Term> lang(const TreeAutomaton &a) {
  return language_upto(to_explicit(a), kOracleHeight);
}

void expect_language(const TreeAutomaton &result, const std::set<Term> &expected,
                     const std::string &verb) {
  const std::set<Term> actual = lang(result);
  if (actual == expected) return;
  for (const Term &t : expected)
    if (!actual.count(t))
      throw OracleMismatch(verb + ": oracle accepts " +
                           t.to_string(result.alphabet()) +
                           " but the result does not");
  for (const Term &t : actual)
    if (!expected.count(t))
      throw OracleMismatch(verb + ": result accepts " +
                           t.to_string(result.alphabet()) +
                           " but the oracle does not");
}

std::string stats(const TreeAutomaton &a) {
  std::ostringstream out;
  out << "states: " << a.state_count() << "\n";
  out << "finals: " << a.finals().size() << "\n";
  out << "super-states:";
  for (std::size_t n : a.index().arities())
    out << " arity" << n << "=" << a.index().count(n);
  out << "\n";
  out << "super-states-total: " << a.index().size() << "\n";
  out << "mtbdd-nodes: " << a.diagram_size() << "\n";
  return out.str();
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Symbolic tree automata"};
  app.name("symta");
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string output;
  std::string method = "antichain";
  std::string term_text;
  bool check_oracle = false;

  auto add = [&](const std::string &name, const std::string &help,
                 std::size_t files, bool has_output, bool language) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("inputs", inputs, "Input files ('-' for stdin)")
        ->required()
        ->expected(static_cast<int>(files));
    if (has_output) sub->add_option("-o,--output", output, "Output file (default stdout)");
    if (language)
      sub->add_flag("--check-oracle", check_oracle,
                    "Cross-check the answer against the explicit oracle on "
                    "terms up to height 3");
    return sub;
  };
  add("union", "Union of two automata", 2, true, true);
  add("intersect", "Intersection of two automata", 2, true, true);
  add("determinise", "Subset construction", 1, true, true);
  add("complement", "Complement", 1, true, true);
  add("prune", "Remove unreachable states", 1, true, true);
  add("minimise", "Minimal deterministic automaton", 1, true, true);
  add("reduce-sim", "Quotient by mutual downward simulation", 1, true, true);
  add("is-empty", "Language emptiness", 1, false, true);
  add("incl", "Language inclusion L(A) in L(B)", 2, false, true)
      ->add_option("--method", method, "antichain or classical")
      ->check(CLI::IsMember({"antichain", "classical"}));
  add("member", "Term membership", 1, false, false)
      ->add_option("-t,--term", term_text, "Term, e.g. f(a,g(b))")
      ->required();
  add("apply-trans", "Image of an automaton under a transducer", 2, true, true);
  add("compose", "Composition of two transducers", 2, true, false);
  add("dot", "Graphviz rendering", 1, true, false);
  add("stats", "Size statistics", 1, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    Workspace ws(inputs);
    if (verb == "is-empty") {
      TreeAutomaton a = ws.automaton(0);
      const bool empty = is_empty(a);
      if (check_oracle && empty != explicit_is_empty(to_explicit(a)))
        throw OracleMismatch("is-empty: oracle disagrees");
      out << (empty ? "empty" : "nonempty") << "\n";
      return empty ? kOk : kNo;
    }
    if (verb == "incl") {
      TreeAutomaton a = ws.automaton(0), b = ws.automaton(1);
      const bool yes = method == "classical" ? check_inclusion_classical(a, b)
                                             : check_inclusion_antichain(a, b);
      if (check_oracle) {
        const bool other = method == "classical" ? check_inclusion_antichain(a, b)
                                                 : check_inclusion_classical(a, b);
        if (other != yes) throw OracleMismatch("incl: methods disagree");
        if (yes) {
          const auto lb = lang(b);
          for (const Term &t : lang(a))
            if (!lb.count(t))
              throw OracleMismatch("incl: " + t.to_string(a.alphabet()) +
                                   " refutes inclusion");
        }
      }
      out << (yes ? "yes" : "no") << "\n";
      return yes ? kOk : kNo;
    }
    if (verb == "member") {
      TreeAutomaton a = ws.automaton(0);
      Term t;
      try {
        t = parse_term(term_text, a.alphabet());
      } catch (const ParseError &e) {
        throw FormatError(std::string("term: ") + e.what());
      }
      const bool yes = a.accepts(t);
      out << (yes ? "yes" : "no") << "\n";
      return yes ? kOk : kNo;
    }
    if (verb == "stats") {
      out << stats(ws.automaton(0));
      return kOk;
    }
    if (verb == "dot") {
      write_output(output, to_dot(ws.automaton(0)), out);
      return kOk;
    }
    if (verb == "compose") {
      write_output(output, write_timbuk(compose(ws.transducer(0), ws.transducer(1))),
                   out);
      return kOk;
    }
    if (verb == "apply-trans") {
      Transducer t = ws.transducer(0);
      TreeAutomaton a = ws.automaton(1);
      TreeAutomaton result = apply_step(t, a);
      if (check_oracle)
        expect_language(result, image_upto(to_explicit(t), to_explicit(a), kOracleHeight),
                        verb);
      write_output(output, write_timbuk(result), out);
      return kOk;
    }

    // Remaining verbs map one or two automata to an automaton.
    TreeAutomaton a = ws.automaton(0);
    std::optional<TreeAutomaton> result;
    std::set<Term> expected;
    if (verb == "union" || verb == "intersect") {
      TreeAutomaton b = ws.automaton(1);
      result = verb == "union" ? union_of(a, b) : intersection(a, b);
      if (check_oracle) {
        const auto la = lang(a), lb = lang(b);
        for (const Term &t : la)
          if (verb == "union" || lb.count(t)) expected.insert(t);
        if (verb == "union") expected.insert(lb.begin(), lb.end());
      }
    } else if (verb == "complement") {
      result = complement(a);
      if (check_oracle) {
        const auto la = lang(a);
        for (Term &t : all_terms_upto(a.alphabet(), kOracleHeight))
          if (!la.count(t)) expected.insert(std::move(t));
      }
    } else {
      if (verb == "determinise") result = determinise(a);
      else if (verb == "prune") result = prune_unreachable(a);
      else if (verb == "minimise") result = minimise(a);
      else result = reduce_by_simulation(a);
      if (check_oracle) expected = lang(a);
    }
    if (check_oracle) expect_language(*result, expected, verb);
    write_output(output, write_timbuk(*result), out);
    return kOk;
  } catch (const IoError &e) {
    err << "symta: " << e.what() << "\n";
    return kIo;
  } catch (const FormatError &e) {
    err << "symta: " << e.what() << "\n";
    return kFormat;
  } catch (const OracleMismatch &e) {
    err << "symta: oracle check failed: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument &e) {
    err << "symta: " << e.what() << "\n";
    return kFormat;
  } catch (const std::exception &e) {
    err << "symta: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace symta::cli
