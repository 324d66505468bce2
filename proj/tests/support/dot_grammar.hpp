/// @file  dot_grammar.hpp
/// @brief Recursive-descent checker for the Graphviz DOT language
///
/// Accepts the abstract grammar published with Graphviz: graphs, subgraphs,
/// node, edge and attribute statements, ports, and the four kinds of ID
/// (identifiers, numerals, quoted strings, HTML strings). Comments and
/// preprocessor lines are skipped.

#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symta::testing {

class DotChecker {
 public:
  /// Empty on success, otherwise a message with the byte offset.
  static std::optional<std::string> check(std::string_view text) {
    DotChecker c(text);
    try {
      c.lex();
      c.graph();
      if (c.pos_ != c.tokens_.size()) c.fail("trailing input");
    } catch (const Failure &f) {
      return f.message;
    }
    return std::nullopt;
  }

 private:
  enum class Kind { Id, Punct, Edge, End };
  struct Token {
    Kind kind;
    std::string text;
    std::size_t offset;
  };
  struct Failure {
    std::string message;
  };

  explicit DotChecker(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string &what) const {
    const std::size_t at = pos_ < tokens_.size() ? tokens_[pos_].offset : text_.size();
    throw Failure{what + " at offset " + std::to_string(at)};
  }

  void lex() {
    std::size_t i = 0;
    bool line_start = true;
    while (i < text_.size()) {
      const char c = text_[i];
      if (c == '\n') {
        line_start = true;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (line_start && c == '#') {
        while (i < text_.size() && text_[i] != '\n') ++i;
        continue;
      }
      line_start = false;
      if (text_.substr(i, 2) == "//") {
        while (i < text_.size() && text_[i] != '\n') ++i;
        continue;
      }
      if (text_.substr(i, 2) == "/*") {
        const std::size_t end = text_.find("*/", i + 2);
        if (end == std::string_view::npos) throw Failure{"unterminated comment"};
        i = end + 2;
        continue;
      }
      const std::size_t start = i;
      if (text_.substr(i, 2) == "->" || text_.substr(i, 2) == "--") {
        tokens_.push_back({Kind::Edge, std::string(text_.substr(i, 2)), start});
        i += 2;
      } else if (std::string_view("{}[]=;,:").find(c) != std::string_view::npos) {
        tokens_.push_back({Kind::Punct, std::string(1, c), start});
        ++i;
      } else if (c == '"') {
        ++i;
        while (i < text_.size() && text_[i] != '"') i += text_[i] == '\\' ? 2 : 1;
        if (i >= text_.size()) throw Failure{"unterminated string"};
        ++i;
        tokens_.push_back({Kind::Id, std::string(text_.substr(start, i - start)), start});
      } else if (c == '<') {
        int depth = 0;
        do {
          if (text_[i] == '<') ++depth;
          if (text_[i] == '>') --depth;
          ++i;
        } while (depth > 0 && i < text_.size());
        if (depth != 0) throw Failure{"unterminated HTML string"};
        tokens_.push_back({Kind::Id, std::string(text_.substr(start, i - start)), start});
      } else if (c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
        if (c == '-') ++i;
        bool digits = false, dot = false;
        while (i < text_.size()) {
          if (std::isdigit(static_cast<unsigned char>(text_[i]))) {
            digits = true;
          } else if (text_[i] == '.' && !dot) {
            dot = true;
          } else {
            break;
          }
          ++i;
        }
        if (!digits) throw Failure{"bad numeral at offset " + std::to_string(start)};
        tokens_.push_back({Kind::Id, std::string(text_.substr(start, i - start)), start});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                 static_cast<unsigned char>(c) >= 0x80) {
        while (i < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_' ||
                static_cast<unsigned char>(text_[i]) >= 0x80))
          ++i;
        tokens_.push_back({Kind::Id, std::string(text_.substr(start, i - start)), start});
      } else {
        throw Failure{std::string("unexpected character '") + c + "' at offset " +
                      std::to_string(start)};
      }
    }
  }

  const Token &peek(std::size_t ahead = 0) const {
    static const Token end{Kind::End, "", 0};
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : end;
  }

  static bool keyword(const Token &t, std::string_view word) {
    if (t.kind != Kind::Id || t.text.size() != word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i)
      if (std::tolower(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
    return true;
  }
  static bool is_keyword(const Token &t) {
    for (std::string_view w : {"strict", "graph", "digraph", "node", "edge", "subgraph"})
      if (keyword(t, w)) return true;
    return false;
  }
  bool punct(std::string_view p) const {
    return peek().kind == Kind::Punct && peek().text == p;
  }
  void expect(std::string_view p) {
    if (!punct(p)) fail("expected '" + std::string(p) + "'");
    ++pos_;
  }
  bool at_id() const { return peek().kind == Kind::Id && !is_keyword(peek()); }
  void id() {
    if (!at_id()) fail("expected ID");
    ++pos_;
  }

  void graph() {
    if (keyword(peek(), "strict")) ++pos_;
    if (keyword(peek(), "digraph")) {
      directed_ = true;
    } else if (!keyword(peek(), "graph")) {
      fail("expected graph or digraph");
    }
    ++pos_;
    if (at_id()) ++pos_;
    expect("{");
    stmt_list();
    expect("}");
  }

  void stmt_list() {
    while (!punct("}") && peek().kind != Kind::End) {
      stmt();
      if (punct(";")) ++pos_;
    }
  }

  void stmt() {
    const Token &t = peek();
    if (keyword(t, "graph") || keyword(t, "node") || keyword(t, "edge")) {
      ++pos_;
      attr_list();
      return;
    }
    if (at_id() && peek(1).kind == Kind::Punct && peek(1).text == "=") {
      pos_ += 2;
      id();
      return;
    }
    if (punct("{") || keyword(t, "subgraph")) {
      subgraph();
    } else {
      node_id();
    }
    if (peek().kind == Kind::Edge) {
      while (peek().kind == Kind::Edge) {
        if (peek().text != (directed_ ? "->" : "--")) fail("wrong edge operator");
        ++pos_;
        if (punct("{") || keyword(peek(), "subgraph")) {
          subgraph();
        } else {
          node_id();
        }
      }
    }
    if (punct("[")) attr_list();
  }

  void attr_list() {
    if (!punct("[")) fail("expected '['");
    while (punct("[")) {
      ++pos_;
      while (!punct("]")) {
        id();
        expect("=");
        id();
        if (punct(";") || punct(",")) ++pos_;
      }
      ++pos_;
    }
  }

  void node_id() {
    id();
    if (punct(":")) {
      ++pos_;
      id();
      if (punct(":")) {
        ++pos_;
        id();
      }
    }
  }

  void subgraph() {
    if (keyword(peek(), "subgraph")) {
      ++pos_;
      if (at_id()) ++pos_;
    }
    expect("{");
    stmt_list();
    expect("}");
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool directed_ = false;
};

}  // namespace symta::testing
