#pragma once

// Recursive-descent parser for .gspec files.
//
// Concrete syntax (normalized across the language's example corpus):
//   spec        := NAME '=' '{' variables properties? constraints '}'
//   variables   := 'variables' '{' var-decl* '}'
//   var-decl    := 'flexible'? TYPE NAME (',' NAME)* ';'
//   properties  := 'properties' '{' (NAME '=' expr ';')* '}'
//   constraints := 'constraints' '{' (expr ';')+ '}'
//   expr        := operand (OP operand)*          -- single precedence, left-assoc
//   operand     := 'not' operand | '(' expr ')' | INT | '-' INT | STRING
//                | 'true' | 'false' | NAME ('.' NAME)?
// '//' starts a line comment; strings are single-quoted with no escapes.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "guicheck/errors.hpp"
#include "guicheck/spec_ast.hpp"

namespace guicheck {
namespace detail {

struct SpecToken {
  enum class Kind { Ident, Int, Str, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  std::int64_t int_value = 0;
  SourceLoc loc;
};

class SpecLexer {
 public:
  explicit SpecLexer(std::string_view text) : text_(text) { next_ = scan(); }

  const SpecToken& peek() const { return next_; }

  SpecToken take() {
    SpecToken t = next_;
    next_ = scan();
    return t;
  }

 private:
  SpecToken scan() {
    skip();
    SpecToken tok;
    tok.loc = SourceLoc{line_, col_};
    if (pos_ >= text_.size()) return tok;

    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = SpecToken::Kind::Ident;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        tok.text.push_back(text_[pos_]);
        advance();
      }
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = SpecToken::Kind::Int;
      std::int64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_] - '0');
        if (v > 2147483647LL)
          throw ParseError(ParseError::Kind::Syntax, "integer literal out of range", tok.loc);
        advance();
      }
      tok.int_value = v;
      return tok;
    }
    if (c == '\'') {
      tok.kind = SpecToken::Kind::Str;
      advance();
      while (pos_ < text_.size() && text_[pos_] != '\'' && text_[pos_] != '\n') {
        tok.text.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size() || text_[pos_] != '\'')
        throw ParseError(ParseError::Kind::Syntax, "unterminated string literal", tok.loc);
      advance();
      return tok;
    }
    tok.kind = SpecToken::Kind::Sym;
    if ((c == '=' || c == '!') && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      tok.text = std::string(1, c) + "=";
      advance();
      advance();
      return tok;
    }
    static constexpr std::string_view kSingle = "={}();,.<>+-*/";
    if (kSingle.find(c) != std::string_view::npos) {
      tok.text = std::string(1, c);
      advance();
      return tok;
    }
    throw ParseError(ParseError::Kind::Syntax, std::string("unexpected character '") + c + "'",
                     tok.loc);
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    ++pos_;
    ++col_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  SpecToken next_;
};

inline const std::unordered_set<std::string>& spec_reserved_words() {
  static const std::unordered_set<std::string> kWords = {
      "variables", "properties", "constraints", "flexible", "true",       "false",
      "not",       "and",        "or",          "xor",      "implies",    "equals",
      "concat",    "leftto",     "rightto",     "above",    "below",      "contains",
      "over",      "smaller",    "leftaligned", "rightaligned", "topaligned",
      "bottomaligned"};
  return kWords;
}

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : lex_(text) {}

  SpecDoc parse_document() {
    SpecDoc doc;
    while (lex_.peek().kind != SpecToken::Kind::End) {
      Spec spec = parse_spec();
      if (doc.find(spec.name))
        throw ParseError(ParseError::Kind::DuplicateSpec,
                         "duplicate specification '" + spec.name + "'", spec.loc);
      doc.specs.push_back(std::move(spec));
    }
    return doc;
  }

 private:
  Spec parse_spec() {
    Spec spec;
    SpecToken name = expect_ident("specification name");
    spec.name = name.text;
    spec.loc = name.loc;
    if (shape_kind_from_type_name(spec.name))
      throw ParseError(ParseError::Kind::Syntax,
                       "'" + spec.name + "' is a reserved primitive type name", name.loc);
    expect_sym("=");
    expect_sym("{");
    expect_keyword("variables");
    parse_variables(spec);
    if (peek_keyword("properties")) {
      lex_.take();
      parse_properties(spec);
    }
    expect_keyword("constraints");
    parse_constraints(spec);
    expect_sym("}");
    return spec;
  }

  void parse_variables(Spec& spec) {
    expect_sym("{");
    while (!accept_sym("}")) {
      bool flexible = false;
      SpecToken type = expect_ident("type name");
      if (type.text == "flexible") {
        flexible = true;
        type = expect_ident("type name");
      }
      for (;;) {
        SpecToken name = expect_ident("variable name");
        check_name(name);
        if (spec.find_variable(name.text))
          throw ParseError(ParseError::Kind::DuplicateVariable,
                           "duplicate variable '" + name.text + "'", name.loc);
        spec.variables.push_back(VarDecl{name.text, type.text, flexible, name.loc});
        if (!accept_sym(",")) break;
      }
      expect_sym(";");
    }
  }

  void parse_properties(Spec& spec) {
    expect_sym("{");
    while (!accept_sym("}")) {
      SpecToken name = expect_ident("property name");
      std::string key = canonical_property_name(name.text);
      if (spec.find_property(key))
        throw ParseError(ParseError::Kind::DuplicateProperty,
                         "duplicate property '" + name.text + "'", name.loc);
      expect_sym("=");
      ExprPtr value = parse_expr();
      expect_sym(";");
      spec.properties.push_back(PropertyDecl{key, std::move(value), name.loc});
    }
  }

  void parse_constraints(Spec& spec) {
    expect_sym("{");
    SourceLoc open = lex_.peek().loc;
    while (!accept_sym("}")) {
      spec.constraints.push_back(parse_expr());
      expect_sym(";");
    }
    if (spec.constraints.empty())
      throw ParseError(ParseError::Kind::Syntax, "constraints block is empty", open);
  }

  ExprPtr parse_expr() {
    ExprPtr left = parse_operand();
    for (;;) {
      const SpecToken& tok = lex_.peek();
      std::optional<BinOp> op;
      if (tok.kind == SpecToken::Kind::Sym || tok.kind == SpecToken::Kind::Ident)
        op = binop_from_token(tok.text);
      if (!op) break;
      SourceLoc at = lex_.take().loc;
      ExprPtr right = parse_operand();
      left = Expr::binary(*op, std::move(left), std::move(right), at);
    }
    return left;
  }

  ExprPtr parse_operand() {
    const SpecToken& tok = lex_.peek();
    switch (tok.kind) {
      case SpecToken::Kind::Int: {
        SpecToken t = lex_.take();
        return Expr::integer(t.int_value, t.loc);
      }
      case SpecToken::Kind::Str: {
        SpecToken t = lex_.take();
        return Expr::string(t.text, t.loc);
      }
      case SpecToken::Kind::Sym: {
        if (tok.text == "(") {
          lex_.take();
          ExprPtr inner = parse_expr();
          expect_sym(")");
          return inner;
        }
        if (tok.text == "-") {
          SpecToken minus = lex_.take();
          if (lex_.peek().kind != SpecToken::Kind::Int)
            throw ParseError(ParseError::Kind::Syntax, "expected integer after '-'",
                             lex_.peek().loc);
          SpecToken t = lex_.take();
          return Expr::integer(-t.int_value, minus.loc);
        }
        break;
      }
      case SpecToken::Kind::Ident: {
        if (tok.text == "not") {
          SpecToken t = lex_.take();
          return Expr::negate(parse_operand(), t.loc);
        }
        if (tok.text == "true" || tok.text == "false") {
          SpecToken t = lex_.take();
          return Expr::boolean(t.text == "true", t.loc);
        }
        if (spec_reserved_words().count(tok.text))
          throw ParseError(ParseError::Kind::Syntax,
                           "reserved word '" + tok.text + "' cannot start an expression",
                           tok.loc);
        SpecToken name = lex_.take();
        if (accept_sym(".")) {
          SpecToken prop = expect_ident("property name");
          return Expr::member(name.text, prop.text, name.loc);
        }
        return Expr::var(name.text, name.loc);
      }
      case SpecToken::Kind::End: break;
    }
    throw ParseError(ParseError::Kind::Syntax, "expected expression", tok.loc);
  }

  void check_name(const SpecToken& name) {
    if (spec_reserved_words().count(name.text))
      throw ParseError(ParseError::Kind::Syntax,
                       "'" + name.text + "' is a reserved word", name.loc);
  }

  SpecToken expect_ident(const char* what) {
    if (lex_.peek().kind != SpecToken::Kind::Ident)
      throw ParseError(ParseError::Kind::Syntax, std::string("expected ") + what,
                       lex_.peek().loc);
    return lex_.take();
  }

  void expect_keyword(const char* word) {
    const SpecToken& tok = lex_.peek();
    if (tok.kind != SpecToken::Kind::Ident || tok.text != word)
      throw ParseError(ParseError::Kind::Syntax, std::string("expected '") + word + "'",
                       tok.loc);
    lex_.take();
  }

  bool peek_keyword(const char* word) {
    const SpecToken& tok = lex_.peek();
    return tok.kind == SpecToken::Kind::Ident && tok.text == word;
  }

  void expect_sym(const char* sym) {
    const SpecToken& tok = lex_.peek();
    if (tok.kind != SpecToken::Kind::Sym || tok.text != sym)
      throw ParseError(ParseError::Kind::Syntax, std::string("expected '") + sym + "'",
                       tok.loc);
    lex_.take();
  }

  bool accept_sym(const char* sym) {
    const SpecToken& tok = lex_.peek();
    if (tok.kind == SpecToken::Kind::Sym && tok.text == sym) {
      lex_.take();
      return true;
    }
    return false;
  }

  SpecLexer lex_;
};

}  // namespace detail

inline SpecDoc parse_specs(std::string_view text) {
  detail::SpecParser parser(text);
  return parser.parse_document();
}

}  // namespace guicheck
