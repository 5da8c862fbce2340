#pragma once

// Flattening: expands a specification that uses complex (spec-typed) variables
// into a constraint tree over primitive slots with one global tuple ordering.
//
// Each complex variable occupies a contiguous slot range (depth-first, in
// declaration order). A complex variable used as a constraint operand becomes
// the conjunction of its type's constraint tree (rewritten onto the instance
// slots) with the sub-universe over its range, so the operand denotes "the
// component is rendered and satisfies its type".

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guicheck/errors.hpp"
#include "guicheck/library.hpp"
#include "guicheck/spec_ast.hpp"
#include "guicheck/trace.hpp"

namespace guicheck {

enum class BoxProp { X, Y, Width, Height };

inline const char* box_prop_name(BoxProp p) {
  switch (p) {
    case BoxProp::X: return "X";
    case BoxProp::Y: return "Y";
    case BoxProp::Width: return "WIDTH";
    case BoxProp::Height: return "HEIGHT";
  }
  return "?";
}

inline std::optional<BoxProp> box_prop_from(std::string_view name) {
  std::string c = canonical_property_name(name);
  if (c == "X") return BoxProp::X;
  if (c == "Y") return BoxProp::Y;
  if (c == "WIDTH") return BoxProp::Width;
  if (c == "HEIGHT") return BoxProp::Height;
  return std::nullopt;
}

struct SlotInfo {
  std::string path;  // "t1", "eb.r", "hb.r2"
  ShapeKind type = ShapeKind::Rectangle;
  bool flexible = false;
};

struct RExpr;
using RExprPtr = std::shared_ptr<const RExpr>;

// Resolved constraint node. Scope denotes the sub-universe over a slot range;
// a primitive variable is a single-slot Scope. DefaultProp is a bounding-box
// property of a complex variable's sub-tuple.
struct RExpr {
  enum class Kind { Binary, Not, Scope, Member, DefaultProp, Int, Str, Bool };

  Kind kind = Kind::Bool;
  BinOp op = BinOp::And;  // Binary
  RExprPtr lhs;           // Binary lhs / Not child
  RExprPtr rhs;           // Binary rhs

  int slot = -1;     // Member
  std::string prop;  // Member property name (as written)

  int lo = 0, hi = 0;              // Scope / DefaultProp slot range [lo, hi)
  BoxProp box_prop = BoxProp::X;   // DefaultProp

  std::int64_t int_value = 0;
  std::string str_value;
  bool bool_value = false;

  std::string display;  // name used in solver logs
};

struct FlattenedSpec {
  std::string name;
  std::vector<SlotInfo> slots;
  std::vector<RExprPtr> statements;  // one resolved tree per constraint statement
  RExprPtr constraint_tree;          // left-associated `and` fold of statements
  // (variable path, canonical property name) -> scalar expression; "" is the root spec
  std::map<std::pair<std::string, std::string>, RExprPtr> property_defs;
  int node_count = 0;  // size of constraint_tree, shared subtrees counted per occurrence

  int slot_of(std::string_view path) const {
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (slots[i].path == path) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

inline int count_nodes(const RExprPtr& e) {
  if (!e) return 0;
  return 1 + count_nodes(e->lhs) + count_nodes(e->rhs);
}

class Resolver {
 public:
  Resolver(const SpecDoc& doc, const Library& lib) : doc_(doc), lib_(lib) {}

  FlattenedSpec resolve(const std::string& name) {
    const Spec* root = lookup_spec(name);
    if (!root)
      throw ResolveError(ResolveError::Kind::UnknownSpec,
                         "unknown specification '" + name + "'");
    out_ = FlattenedSpec{};
    out_.name = name;
    chain_ = {name};
    std::shared_ptr<Scope> scope = build_scope(*root, "", false);
    for (const ExprPtr& stmt : root->constraints)
      out_.statements.push_back(resolve_expr(stmt, *scope));
    out_.constraint_tree = fold_and(out_.statements);
    out_.node_count = count_nodes(out_.constraint_tree);
    return std::move(out_);
  }

 private:
  struct Scope;

  struct VarBinding {
    int lo = 0, hi = 0;
    std::optional<ShapeKind> primitive;
    const Spec* type_spec = nullptr;
    std::shared_ptr<Scope> child;
    RExprPtr type_tree;  // resolved fold of the type's constraints (complex only)
    std::string path;
  };

  struct Scope {
    const Spec* spec = nullptr;
    std::map<std::string, VarBinding> vars;
  };

  const Spec* lookup_spec(const std::string& name) const {
    if (const Spec* s = doc_.find(name)) return s;
    return lib_.find(name);
  }

  std::shared_ptr<Scope> build_scope(const Spec& spec, const std::string& prefix,
                                     bool flexible) {
    auto scope = std::make_shared<Scope>();
    scope->spec = &spec;
    for (const VarDecl& decl : spec.variables) {
      VarBinding binding;
      binding.path = prefix + decl.name;
      binding.lo = static_cast<int>(out_.slots.size());
      bool flex = flexible || decl.flexible;
      if (auto kind = shape_kind_from_type_name(decl.type_name)) {
        binding.primitive = *kind;
        out_.slots.push_back(SlotInfo{binding.path, *kind, flex});
      } else {
        const Spec* sub = lookup_spec(decl.type_name);
        if (!sub)
          throw ResolveError(ResolveError::Kind::UnknownType,
                             "unknown type '" + decl.type_name + "' for variable '" +
                                 binding.path + "'");
        if (std::find(chain_.begin(), chain_.end(), decl.type_name) != chain_.end()) {
          std::string cycle;
          for (const std::string& link : chain_) cycle += link + " -> ";
          throw ResolveError(ResolveError::Kind::CyclicType,
                             "cyclic type reference: " + cycle + decl.type_name);
        }
        chain_.push_back(decl.type_name);
        binding.type_spec = sub;
        binding.child = build_scope(*sub, binding.path + ".", flex);
        chain_.pop_back();
      }
      binding.hi = static_cast<int>(out_.slots.size());
      scope->vars.emplace(decl.name, std::move(binding));
    }
    // Type trees after all variables exist; property definitions afterwards so
    // they can reference any variable of this scope.
    for (auto& [name, binding] : scope->vars) {
      if (!binding.type_spec) continue;
      std::vector<RExprPtr> stmts;
      for (const ExprPtr& stmt : binding.type_spec->constraints)
        stmts.push_back(resolve_expr(stmt, *binding.child));
      binding.type_tree = fold_and(stmts);
    }
    std::string self_path = prefix.empty() ? "" : prefix.substr(0, prefix.size() - 1);
    for (const PropertyDecl& prop : spec.properties)
      out_.property_defs[{self_path, prop.name}] = resolve_expr(prop.value, *scope);
    return scope;
  }

  RExprPtr fold_and(const std::vector<RExprPtr>& stmts) {
    if (stmts.empty()) return make_bool(true);
    RExprPtr tree = stmts[0];
    for (std::size_t i = 1; i < stmts.size(); ++i)
      tree = make_binary(BinOp::And, tree, stmts[i]);
    return tree;
  }

  RExprPtr resolve_expr(const ExprPtr& e, const Scope& scope) {
    switch (e->kind) {
      case Expr::Kind::Var: {
        const VarBinding& b = find_var(scope, e->name, e->loc);
        RExprPtr range = make_scope(b);
        if (b.primitive) return range;
        if (b.type_tree->kind == RExpr::Kind::Bool && b.type_tree->bool_value) return range;
        return make_binary(BinOp::And, b.type_tree, range);
      }
      case Expr::Kind::Member: {
        const VarBinding& b = find_var(scope, e->name, e->loc);
        if (b.primitive) {
          if (!shape_has_property(*b.primitive, e->prop))
            throw ResolveError(ResolveError::Kind::UnknownProperty,
                               std::string(shape_kind_type_name(*b.primitive)) +
                                   " has no property '" + e->prop + "' (variable '" +
                                   b.path + "')");
          auto node = std::make_shared<RExpr>();
          node->kind = RExpr::Kind::Member;
          node->slot = b.lo;
          node->prop = e->prop;
          node->display = b.path + "." + e->prop;
          return node;
        }
        if (const PropertyDecl* def = b.type_spec->find_property(e->prop))
          return resolve_expr(def->value, *b.child);
        if (auto box = box_prop_from(e->prop)) {
          auto node = std::make_shared<RExpr>();
          node->kind = RExpr::Kind::DefaultProp;
          node->lo = b.lo;
          node->hi = b.hi;
          node->box_prop = *box;
          node->display = b.path + "." + box_prop_name(*box);
          return node;
        }
        throw ResolveError(ResolveError::Kind::UnknownProperty,
                           "type '" + b.type_spec->name + "' has no property '" + e->prop +
                               "' (variable '" + b.path + "')");
      }
      case Expr::Kind::Not: {
        auto node = std::make_shared<RExpr>();
        node->kind = RExpr::Kind::Not;
        node->lhs = resolve_expr(e->lhs, scope);
        node->display = "not";
        return node;
      }
      case Expr::Kind::Binary:
        return make_binary(e->op, resolve_expr(e->lhs, scope), resolve_expr(e->rhs, scope));
      case Expr::Kind::Int: {
        auto node = std::make_shared<RExpr>();
        node->kind = RExpr::Kind::Int;
        node->int_value = e->int_value;
        node->display = "int";
        return node;
      }
      case Expr::Kind::Str: {
        auto node = std::make_shared<RExpr>();
        node->kind = RExpr::Kind::Str;
        node->str_value = e->str_value;
        node->display = "string";
        return node;
      }
      case Expr::Kind::Bool: return make_bool(e->bool_value);
    }
    throw ResolveError(ResolveError::Kind::UnknownVariable, "unresolvable expression");
  }

  const VarBinding& find_var(const Scope& scope, const std::string& name, SourceLoc loc) {
    auto it = scope.vars.find(name);
    if (it == scope.vars.end())
      throw ResolveError(ResolveError::Kind::UnknownVariable,
                         "unknown variable '" + name + "' in spec '" + scope.spec->name +
                             "' at " + to_string(loc));
    return it->second;
  }

  RExprPtr make_scope(const VarBinding& b) {
    auto node = std::make_shared<RExpr>();
    node->kind = RExpr::Kind::Scope;
    node->lo = b.lo;
    node->hi = b.hi;
    node->display = (b.primitive ? std::string(shape_kind_type_name(*b.primitive))
                                 : b.type_spec->name) +
                    ":" + b.path;
    return node;
  }

  RExprPtr make_binary(BinOp op, RExprPtr l, RExprPtr r) {
    auto node = std::make_shared<RExpr>();
    node->kind = RExpr::Kind::Binary;
    node->op = op;
    node->lhs = std::move(l);
    node->rhs = std::move(r);
    node->display = binop_token(op);
    return node;
  }

  RExprPtr make_bool(bool v) {
    auto node = std::make_shared<RExpr>();
    node->kind = RExpr::Kind::Bool;
    node->bool_value = v;
    node->display = v ? "true" : "false";
    return node;
  }

  const SpecDoc& doc_;
  const Library& lib_;
  FlattenedSpec out_;
  std::vector<std::string> chain_;
};

}  // namespace detail

inline FlattenedSpec resolve_spec(const std::string& name, const SpecDoc& doc,
                                  const Library& lib) {
  detail::Resolver resolver(doc, lib);
  return resolver.resolve(name);
}

inline void print_rexpr(std::ostream& out, const RExpr& e) {
  switch (e.kind) {
    case RExpr::Kind::Binary:
      out << "(";
      print_rexpr(out, *e.lhs);
      out << " " << binop_token(e.op) << " ";
      print_rexpr(out, *e.rhs);
      out << ")";
      return;
    case RExpr::Kind::Not:
      out << "(not ";
      print_rexpr(out, *e.lhs);
      out << ")";
      return;
    case RExpr::Kind::Scope:
    case RExpr::Kind::Member:
    case RExpr::Kind::DefaultProp: out << e.display; return;
    case RExpr::Kind::Int: out << e.int_value; return;
    case RExpr::Kind::Str: out << "'" << e.str_value << "'"; return;
    case RExpr::Kind::Bool: out << (e.bool_value ? "true" : "false"); return;
  }
}

inline std::string to_string(const RExpr& e) {
  std::ostringstream out;
  print_rexpr(out, e);
  return out.str();
}

// --- static type validation --------------------------------------------------

enum class NodeType { Set, IntScalar, StrScalar };

inline NodeType infer_node_type(const RExpr& e) {
  switch (e.kind) {
    case RExpr::Kind::Scope: return NodeType::Set;
    case RExpr::Kind::Bool: return NodeType::Set;
    case RExpr::Kind::Member:
      return e.prop == "text" ? NodeType::StrScalar : NodeType::IntScalar;
    case RExpr::Kind::DefaultProp: return NodeType::IntScalar;
    case RExpr::Kind::Int: return NodeType::IntScalar;
    case RExpr::Kind::Str: return NodeType::StrScalar;
    case RExpr::Kind::Not:
      if (infer_node_type(*e.lhs) != NodeType::Set)
        throw EvalError(EvalError::Kind::TypeMismatch, "'not' needs a solution-set operand");
      return NodeType::Set;
    case RExpr::Kind::Binary: {
      NodeType l = infer_node_type(*e.lhs);
      NodeType r = infer_node_type(*e.rhs);
      const std::string tok = binop_token(e.op);
      if (is_positional_op(e.op) || is_logic_op(e.op)) {
        if (l != NodeType::Set || r != NodeType::Set)
          throw EvalError(EvalError::Kind::TypeMismatch,
                          "'" + tok + "' needs solution-set operands");
        return NodeType::Set;
      }
      if (l == NodeType::Set || r == NodeType::Set)
        throw EvalError(EvalError::Kind::TypeMismatch,
                        "'" + tok + "' cannot take a solution-set operand");
      switch (e.op) {
        case BinOp::Add:
        case BinOp::Sub:
        case BinOp::Mul:
        case BinOp::Div:
          if (l != NodeType::IntScalar || r != NodeType::IntScalar)
            throw EvalError(EvalError::Kind::TypeMismatch,
                            "'" + tok + "' needs integer operands");
          return NodeType::IntScalar;
        case BinOp::Concat:
          if (l != NodeType::StrScalar || r != NodeType::StrScalar)
            throw EvalError(EvalError::Kind::TypeMismatch,
                            "'concat' needs string operands");
          return NodeType::StrScalar;
        case BinOp::Lt:
        case BinOp::Gt:
          if (l != NodeType::IntScalar || r != NodeType::IntScalar)
            throw EvalError(EvalError::Kind::TypeMismatch,
                            "'" + tok + "' cannot compare strings");
          return NodeType::Set;
        case BinOp::StrEquals:
          if (l != NodeType::StrScalar || r != NodeType::StrScalar)
            throw EvalError(EvalError::Kind::TypeMismatch,
                            "'equals' needs string operands");
          return NodeType::Set;
        case BinOp::Eq:
        case BinOp::Ne:
          if (l != r)
            throw EvalError(EvalError::Kind::TypeMismatch,
                            "'" + tok + "' needs operands of one type");
          return NodeType::Set;
        default: break;
      }
      throw EvalError(EvalError::Kind::TypeMismatch, "unsupported operator '" + tok + "'");
    }
  }
  throw EvalError(EvalError::Kind::TypeMismatch, "malformed expression");
}

inline void validate_flattened(const FlattenedSpec& spec) {
  if (spec.constraint_tree && infer_node_type(*spec.constraint_tree) != NodeType::Set)
    throw EvalError(EvalError::Kind::TypeMismatch,
                    "constraint of '" + spec.name + "' must be a solution-set expression");
  for (const auto& [key, expr] : spec.property_defs) {
    if (infer_node_type(*expr) == NodeType::Set)
      throw EvalError(EvalError::Kind::TypeMismatch,
                      "property '" + key.second + "' must be a scalar expression");
  }
}

}  // namespace guicheck
