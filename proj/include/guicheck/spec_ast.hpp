#pragma once

// AST for the GUI specification language: named specs with variable
// declarations, property definitions and constraint statements.

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "guicheck/errors.hpp"
#include "guicheck/trace.hpp"

namespace guicheck {

enum class BinOp {
  // positional
  LeftTo,
  RightTo,
  Above,
  Below,
  Contains,
  Over,
  Smaller,
  LeftAligned,
  RightAligned,
  TopAligned,
  BottomAligned,
  // logic
  And,
  Or,
  Xor,
  Implies,
  // arithmetic
  Add,
  Sub,
  Mul,
  Div,
  // relational / string
  Eq,
  Ne,
  Lt,
  Gt,
  StrEquals,
  Concat,
};

inline const char* binop_token(BinOp op) {
  switch (op) {
    case BinOp::LeftTo: return "leftto";
    case BinOp::RightTo: return "rightto";
    case BinOp::Above: return "above";
    case BinOp::Below: return "below";
    case BinOp::Contains: return "contains";
    case BinOp::Over: return "over";
    case BinOp::Smaller: return "smaller";
    case BinOp::LeftAligned: return "leftaligned";
    case BinOp::RightAligned: return "rightaligned";
    case BinOp::TopAligned: return "topaligned";
    case BinOp::BottomAligned: return "bottomaligned";
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
    case BinOp::Xor: return "xor";
    case BinOp::Implies: return "implies";
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Gt: return ">";
    case BinOp::StrEquals: return "equals";
    case BinOp::Concat: return "concat";
  }
  return "?";
}

inline std::optional<BinOp> binop_from_token(std::string_view s) {
  static const std::unordered_map<std::string_view, BinOp> kMap = {
      {"leftto", BinOp::LeftTo},
      {"rightto", BinOp::RightTo},
      {"above", BinOp::Above},
      {"below", BinOp::Below},
      {"contains", BinOp::Contains},
      {"over", BinOp::Over},
      {"smaller", BinOp::Smaller},
      {"leftaligned", BinOp::LeftAligned},
      {"rightaligned", BinOp::RightAligned},
      {"topaligned", BinOp::TopAligned},
      {"bottomaligned", BinOp::BottomAligned},
      {"and", BinOp::And},
      {"or", BinOp::Or},
      {"xor", BinOp::Xor},
      {"implies", BinOp::Implies},
      {"+", BinOp::Add},
      {"-", BinOp::Sub},
      {"*", BinOp::Mul},
      {"/", BinOp::Div},
      {"==", BinOp::Eq},
      {"!=", BinOp::Ne},
      {"<", BinOp::Lt},
      {">", BinOp::Gt},
      {"equals", BinOp::StrEquals},
      {"concat", BinOp::Concat},
  };
  auto it = kMap.find(s);
  if (it == kMap.end()) return std::nullopt;
  return it->second;
}

inline bool is_positional_op(BinOp op) {
  switch (op) {
    case BinOp::LeftTo:
    case BinOp::RightTo:
    case BinOp::Above:
    case BinOp::Below:
    case BinOp::Contains:
    case BinOp::Over:
    case BinOp::Smaller:
    case BinOp::LeftAligned:
    case BinOp::RightAligned:
    case BinOp::TopAligned:
    case BinOp::BottomAligned: return true;
    default: return false;
  }
}

inline bool is_logic_op(BinOp op) {
  return op == BinOp::And || op == BinOp::Or || op == BinOp::Xor || op == BinOp::Implies;
}

inline bool is_arith_op(BinOp op) {
  return op == BinOp::Add || op == BinOp::Sub || op == BinOp::Mul || op == BinOp::Div ||
         op == BinOp::Concat;
}

inline bool is_relational_op(BinOp op) {
  return op == BinOp::Eq || op == BinOp::Ne || op == BinOp::Lt || op == BinOp::Gt ||
         op == BinOp::StrEquals;
}

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Binary, Not, Var, Member, Int, Str, Bool };

  Kind kind = Kind::Int;
  SourceLoc loc;

  // Binary / Not
  BinOp op = BinOp::And;
  ExprPtr lhs;
  ExprPtr rhs;

  // Var (name) / Member (name.prop)
  std::string name;
  std::string prop;

  std::int64_t int_value = 0;
  std::string str_value;
  bool bool_value = false;

  static ExprPtr binary(BinOp op, ExprPtr l, ExprPtr r, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->loc = loc;
    return e;
  }
  static ExprPtr negate(ExprPtr child, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Not;
    e->lhs = std::move(child);
    e->loc = loc;
    return e;
  }
  static ExprPtr var(std::string name, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(name);
    e->loc = loc;
    return e;
  }
  static ExprPtr member(std::string name, std::string prop, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Member;
    e->name = std::move(name);
    e->prop = std::move(prop);
    e->loc = loc;
    return e;
  }
  static ExprPtr integer(std::int64_t v, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Int;
    e->int_value = v;
    e->loc = loc;
    return e;
  }
  static ExprPtr string(std::string v, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Str;
    e->str_value = std::move(v);
    e->loc = loc;
    return e;
  }
  static ExprPtr boolean(bool v, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Bool;
    e->bool_value = v;
    e->loc = loc;
    return e;
  }
};

// Structural equality, source locations ignored.
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Binary:
      return a->op == b->op && expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    case Expr::Kind::Not: return expr_equal(a->lhs, b->lhs);
    case Expr::Kind::Var: return a->name == b->name;
    case Expr::Kind::Member: return a->name == b->name && a->prop == b->prop;
    case Expr::Kind::Int: return a->int_value == b->int_value;
    case Expr::Kind::Str: return a->str_value == b->str_value;
    case Expr::Kind::Bool: return a->bool_value == b->bool_value;
  }
  return false;
}

struct VarDecl {
  std::string name;
  std::string type_name;  // primitive type or spec name
  bool flexible = false;
  SourceLoc loc;
};

struct PropertyDecl {
  std::string name;  // canonical "X"/"Y"/"WIDTH"/"HEIGHT" or user-defined, case-sensitive
  ExprPtr value;
  SourceLoc loc;
};

// Canonical key for a property name: the four bounding-box properties are
// case-insensitive, everything else is taken as written.
inline std::string canonical_property_name(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "x") return "X";
  if (lower == "y") return "Y";
  if (lower == "width") return "WIDTH";
  if (lower == "height") return "HEIGHT";
  return std::string(name);
}

inline bool is_default_property_name(std::string_view name) {
  std::string c = canonical_property_name(name);
  return c == "X" || c == "Y" || c == "WIDTH" || c == "HEIGHT";
}

struct Spec {
  std::string name;
  std::vector<VarDecl> variables;
  std::vector<PropertyDecl> properties;
  std::vector<ExprPtr> constraints;  // one tree per ';'-terminated statement
  SourceLoc loc;

  const VarDecl* find_variable(std::string_view var) const {
    for (const VarDecl& v : variables)
      if (v.name == var) return &v;
    return nullptr;
  }
  const PropertyDecl* find_property(std::string_view prop) const {
    std::string key = canonical_property_name(prop);
    for (const PropertyDecl& p : properties)
      if (p.name == key) return &p;
    return nullptr;
  }
};

struct SpecDoc {
  std::vector<Spec> specs;

  const Spec* find(std::string_view name) const {
    for (const Spec& s : specs)
      if (s.name == name) return &s;
    return nullptr;
  }
};

// --- pretty printer ---------------------------------------------------------

inline void print_expr(std::ostream& out, const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Binary:
      out << "(";
      print_expr(out, e->lhs);
      out << " " << binop_token(e->op) << " ";
      print_expr(out, e->rhs);
      out << ")";
      return;
    case Expr::Kind::Not:
      out << "(not ";
      print_expr(out, e->lhs);
      out << ")";
      return;
    case Expr::Kind::Var: out << e->name; return;
    case Expr::Kind::Member: out << e->name << "." << e->prop; return;
    case Expr::Kind::Int: out << e->int_value; return;
    case Expr::Kind::Str: out << "'" << e->str_value << "'"; return;
    case Expr::Kind::Bool: out << (e->bool_value ? "true" : "false"); return;
  }
}

inline std::string to_string(const ExprPtr& e) {
  std::ostringstream out;
  print_expr(out, e);
  return out.str();
}

inline std::string print_spec(const Spec& spec) {
  std::ostringstream out;
  out << spec.name << " = {\n";
  out << "  variables {\n";
  for (const VarDecl& v : spec.variables) {
    out << "    " << (v.flexible ? "flexible " : "") << v.type_name << " " << v.name << ";\n";
  }
  out << "  }\n";
  if (!spec.properties.empty()) {
    out << "  properties {\n";
    for (const PropertyDecl& p : spec.properties) {
      out << "    " << p.name << " = " << to_string(p.value) << ";\n";
    }
    out << "  }\n";
  }
  out << "  constraints {\n";
  for (const ExprPtr& c : spec.constraints) {
    out << "    " << to_string(c) << ";\n";
  }
  out << "  }\n";
  out << "}\n";
  return out.str();
}

inline std::string print_specs(const SpecDoc& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.specs.size(); ++i) {
    if (i) out += "\n";
    out += print_spec(doc.specs[i]);
  }
  return out;
}

}  // namespace guicheck
