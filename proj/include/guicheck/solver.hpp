#pragma once

// Tuple-set constraint solver. A candidate tuple assigns one trace shape (or
// the Joker wildcard) to each slot of a flattened specification; a tuple with
// Jokers denotes the set of its concrete completions. Constraint nodes
// evaluate to sets of candidate tuples; merging two tuples intersects the
// sets they denote.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "guicheck/errors.hpp"
#include "guicheck/resolve.hpp"
#include "guicheck/trace.hpp"

namespace guicheck {

struct CandidateTuple {
  static constexpr std::int32_t kJoker = -1;

  std::vector<std::int32_t> values;

  CandidateTuple() = default;
  explicit CandidateTuple(std::size_t n) : values(n, kJoker) {}
  explicit CandidateTuple(std::vector<std::int32_t> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  bool bound(std::size_t i) const { return values[i] != kJoker; }
  int bound_count() const {
    int n = 0;
    for (std::int32_t v : values) n += (v != kJoker);
    return n;
  }
  std::int32_t operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const CandidateTuple&, const CandidateTuple&) = default;
};

struct TupleHash {
  std::size_t operator()(const CandidateTuple& t) const {
    std::size_t h = 1469598103934665603ull;
    for (std::int32_t v : t.values) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return h;
  }
};

// A complete, fully bound tuple (no Jokers), as one shape index per slot.
using Assignment = std::vector<std::int32_t>;

// Deduplicated set of candidate tuples in first-insertion order.
class SolutionSet {
 public:
  bool insert(CandidateTuple t) {
    if (index_.count(t)) return false;
    index_.insert(t);
    tuples_.push_back(std::move(t));
    return true;
  }
  bool contains(const CandidateTuple& t) const { return index_.count(t) != 0; }
  const std::vector<CandidateTuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }

 private:
  std::vector<CandidateTuple> tuples_;
  std::unordered_set<CandidateTuple, TupleHash> index_;
};

// Scalar subexpressions evaluate to a relation: the bindings under which the
// expression takes each value.
struct ScalarRow {
  CandidateTuple tuple;
  PropertyValue value;
};

class ScalarRelation {
 public:
  bool insert(ScalarRow row) {
    Key key{row.tuple, row.value};
    if (index_.count(key)) return false;
    index_.insert(std::move(key));
    rows_.push_back(std::move(row));
    return true;
  }
  const std::vector<ScalarRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

 private:
  using Key = std::pair<CandidateTuple, PropertyValue>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = TupleHash{}(k.first);
      if (const auto* i = std::get_if<std::int64_t>(&k.second))
        h ^= std::hash<std::int64_t>{}(*i) + 0x9e3779b97f4a7c15ull + (h << 6);
      else
        h ^= std::hash<std::string>{}(std::get<std::string>(k.second)) + (h << 6);
      return h;
    }
  };
  std::vector<ScalarRow> rows_;
  std::unordered_set<Key, KeyHash> index_;
};

using NodeValue = std::variant<SolutionSet, ScalarRelation>;

struct LogEvent {
  int depth = 0;
  std::string scope;
  std::string message;
  std::optional<std::vector<CandidateTuple>> result;  // exit-event snapshot
};

struct SolveOptions {
  std::uint64_t tuple_budget = 1'000'000;
};

struct Verdict {
  bool satisfied = false;
  SolutionSet solutions;
  std::uint64_t step_count = 0;
  std::vector<LogEvent> log;
};

struct SolveContext {
  const FlattenedSpec& spec;
  const TraceDoc& trace;
  SolveOptions options;
  std::vector<LogEvent>* log = nullptr;
  std::uint64_t steps = 0;
  std::vector<std::vector<std::int32_t>> candidates;  // per slot, in trace order
  std::map<std::pair<int, int>, SolutionSet> scope_cache;

  SolveContext(const FlattenedSpec& s, const TraceDoc& t, SolveOptions o = {},
               std::vector<LogEvent>* sink = nullptr)
      : spec(s), trace(t), options(o), log(sink) {
    candidates.resize(spec.slots.size());
    for (std::size_t i = 0; i < spec.slots.size(); ++i)
      for (const Shape& shape : trace.shapes)
        if (shape.kind == spec.slots[i].type)
          candidates[i].push_back(static_cast<std::int32_t>(shape.seq));
  }

  void emit(int depth, const std::string& scope, std::string message) {
    if (log) log->push_back(LogEvent{depth, scope, std::move(message), std::nullopt});
  }
  void emit_result(int depth, const std::string& scope, std::string message,
                   const SolutionSet& result) {
    if (log)
      log->push_back(LogEvent{depth, scope, std::move(message), result.tuples()});
  }
};

// --- tuple primitives --------------------------------------------------------

// Positionwise intersection; Conflict (nullopt) when two bound slots disagree
// or the merged tuple binds one shape to two non-flexible slots.
inline std::optional<CandidateTuple> merge_tuples(const CandidateTuple& a,
                                                  const CandidateTuple& b,
                                                  const FlattenedSpec& spec) {
  const std::size_t n = a.size();
  CandidateTuple out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.values[i] == CandidateTuple::kJoker)
      out.values[i] = b.values[i];
    else if (b.values[i] == CandidateTuple::kJoker || a.values[i] == b.values[i])
      out.values[i] = a.values[i];
    else
      return std::nullopt;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.bound(i) || spec.slots[i].flexible) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!out.bound(j) || spec.slots[j].flexible) continue;
      if (out.values[i] == out.values[j]) return std::nullopt;
    }
  }
  return out;
}

inline std::optional<Rect> tuple_bbox(const CandidateTuple& t, const TraceDoc& trace) {
  std::optional<Rect> box;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t.bound(i)) continue;
    Rect b = bounding_box(trace.shapes[t.values[i]]);
    box = box ? rect_union(*box, b) : b;
  }
  return box;
}

// Size for `smaller`: squared length for a lone line, bounding-box area
// otherwise.
inline std::int64_t tuple_size_measure(const CandidateTuple& t, const TraceDoc& trace) {
  if (t.bound_count() == 1) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t.bound(i)) continue;
      const Shape& s = trace.shapes[t.values[i]];
      if (s.kind == ShapeKind::Line) {
        std::int64_t dx = s.coords[2] - s.coords[0];
        std::int64_t dy = s.coords[3] - s.coords[1];
        return dx * dx + dy * dy;
      }
      break;
    }
  }
  return tuple_bbox(t, trace)->area();
}

// Non-strict geometric predicates over the operands' bounding boxes. A tuple
// binding no slots has no box and satisfies nothing.
inline bool positional_holds(BinOp op, const CandidateTuple& a, const CandidateTuple& b,
                             const TraceDoc& trace) {
  auto ba = tuple_bbox(a, trace);
  auto bb = tuple_bbox(b, trace);
  if (!ba || !bb) return false;
  switch (op) {
    case BinOp::Above: return ba->bottom <= bb->top;
    case BinOp::Below: return ba->top >= bb->bottom;
    case BinOp::LeftTo: return ba->right <= bb->left;
    case BinOp::RightTo: return ba->left >= bb->right;
    case BinOp::Contains:
      return ba->left <= bb->left && ba->top <= bb->top && ba->right >= bb->right &&
             ba->bottom >= bb->bottom;
    case BinOp::Over:
      return ba->left <= bb->right && bb->left <= ba->right && ba->top <= bb->bottom &&
             bb->top <= ba->bottom;
    case BinOp::LeftAligned: return ba->left == bb->left;
    case BinOp::RightAligned: return ba->right == bb->right;
    case BinOp::TopAligned: return ba->top == bb->top;
    case BinOp::BottomAligned: return ba->bottom == bb->bottom;
    case BinOp::Smaller:
      return tuple_size_measure(a, trace) < tuple_size_measure(b, trace);
    default: return false;
  }
}

// --- base sets and universes --------------------------------------------------

inline SolutionSet base_components(const TraceDoc& trace, int slot,
                                   const FlattenedSpec& spec) {
  SolutionSet out;
  for (const Shape& shape : trace.shapes) {
    if (shape.kind != spec.slots[slot].type) continue;
    CandidateTuple t(spec.slots.size());
    t.values[slot] = static_cast<std::int32_t>(shape.seq);
    out.insert(std::move(t));
  }
  return out;
}

inline SolutionSet universe_set(const SolveContext& ctx) {
  SolutionSet out;
  out.insert(CandidateTuple(ctx.spec.slots.size()));
  return out;
}

// True when every slot can be filled: each type has at least as many trace
// shapes as non-flexible slots, and at least one shape when only flexible
// slots need it.
inline bool universe_inhabited(const FlattenedSpec& spec, const TraceDoc& trace) {
  for (ShapeKind kind : kAllShapeKinds) {
    int non_flexible = 0, flexible = 0, shapes = 0;
    for (const SlotInfo& slot : spec.slots) {
      if (slot.type != kind) continue;
      (slot.flexible ? flexible : non_flexible)++;
    }
    for (const Shape& s : trace.shapes) shapes += (s.kind == kind);
    if (shapes < non_flexible) return false;
    if (non_flexible == 0 && flexible > 0 && shapes == 0) return false;
  }
  return true;
}

// --- concrete expansion --------------------------------------------------------

namespace detail {

template <typename Fn>
void completions_rec(const CandidateTuple& t, std::size_t slot_index,
                     std::vector<std::int32_t>& filled, std::vector<bool>& used,
                     SolveContext& ctx, std::uint64_t& produced, Fn&& fn) {
  const std::size_t n = t.size();
  if (slot_index == n) {
    if (++produced > ctx.options.tuple_budget)
      throw EvalError(EvalError::Kind::BudgetExceeded,
                      "concrete expansion exceeds tuple budget of " +
                          std::to_string(ctx.options.tuple_budget));
    fn(filled);
    return;
  }
  bool flexible = ctx.spec.slots[slot_index].flexible;
  if (t.bound(slot_index)) {
    filled[slot_index] = t.values[slot_index];
    completions_rec(t, slot_index + 1, filled, used, ctx, produced, fn);
    return;
  }
  for (std::int32_t cand : ctx.candidates[slot_index]) {
    if (!flexible && used[cand]) continue;
    filled[slot_index] = cand;
    if (!flexible) used[cand] = true;
    completions_rec(t, slot_index + 1, filled, used, ctx, produced, fn);
    if (!flexible) used[cand] = false;
  }
}

// `produced` is shared across one logical expansion operation, so the budget
// caps the operation as a whole, not each tuple.
template <typename Fn>
void for_each_completion(const CandidateTuple& t, SolveContext& ctx,
                         std::uint64_t& produced, Fn&& fn) {
  std::vector<bool> used(ctx.trace.shapes.size(), false);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.bound(i) && !ctx.spec.slots[i].flexible) {
      if (used[t.values[i]]) return;  // invalid tuple denotes the empty set
      used[t.values[i]] = true;
    }
  std::vector<std::int32_t> filled(t.size());
  completions_rec(t, 0, filled, used, ctx, produced, fn);
}

}  // namespace detail

// All complete assignments denoted by the set, counted against the budget.
inline std::set<Assignment> expand_solutions(const SolutionSet& s, SolveContext& ctx) {
  std::set<Assignment> out;
  std::uint64_t produced = 0;
  for (const CandidateTuple& t : s.tuples()) {
    detail::for_each_completion(t, ctx, produced, [&](const Assignment& a) {
      ctx.steps++;
      out.insert(a);
    });
  }
  return out;
}

inline std::set<Assignment> full_universe(SolveContext& ctx) {
  SolutionSet u = universe_set(ctx);
  return expand_solutions(u, ctx);
}

// --- operator evaluation --------------------------------------------------------

inline SolutionSet eval_positional(BinOp op, const SolutionSet& left,
                                   const SolutionSet& right, SolveContext& ctx) {
  SolutionSet out;
  for (const CandidateTuple& a : left.tuples()) {
    for (const CandidateTuple& b : right.tuples()) {
      ctx.steps++;
      if (!positional_holds(op, a, b, ctx.trace)) continue;
      if (auto merged = merge_tuples(a, b, ctx.spec)) out.insert(std::move(*merged));
    }
  }
  return out;
}

inline SolutionSet set_intersection(const SolutionSet& left, const SolutionSet& right,
                                    SolveContext& ctx) {
  SolutionSet out;
  for (const CandidateTuple& a : left.tuples()) {
    for (const CandidateTuple& b : right.tuples()) {
      ctx.steps++;
      if (auto merged = merge_tuples(a, b, ctx.spec)) out.insert(std::move(*merged));
    }
  }
  return out;
}

inline SolutionSet eval_logical(BinOp op, const SolutionSet& left, const SolutionSet& right,
                                const SolutionSet& universe, SolveContext& ctx) {
  switch (op) {
    case BinOp::And: {
      if (left.empty()) return SolutionSet{};
      return set_intersection(left, right, ctx);
    }
    case BinOp::Or: {
      SolutionSet out;
      for (const CandidateTuple& t : left.tuples()) out.insert(t);
      for (const CandidateTuple& t : right.tuples()) out.insert(t);
      return out;
    }
    case BinOp::Implies: {
      if (left.empty()) return universe;
      return set_intersection(left, right, ctx);
    }
    case BinOp::Xor: {
      std::set<Assignment> l = expand_solutions(left, ctx);
      std::set<Assignment> r = expand_solutions(right, ctx);
      SolutionSet out;
      for (const Assignment& a : l)
        if (!r.count(a)) out.insert(CandidateTuple{a});
      for (const Assignment& a : r)
        if (!l.count(a)) out.insert(CandidateTuple{a});
      return out;
    }
    default:
      throw EvalError(EvalError::Kind::TypeMismatch,
                      std::string("'") + binop_token(op) + "' is not a logic operator");
  }
}

// Set difference of the full concrete universe minus the set's expansion.
inline SolutionSet complement(const SolutionSet& s, SolveContext& ctx) {
  std::set<Assignment> expanded = expand_solutions(s, ctx);
  SolutionSet out;
  SolutionSet u = universe_set(ctx);
  std::uint64_t produced = 0;
  for (const CandidateTuple& t : u.tuples()) {
    detail::for_each_completion(t, ctx, produced, [&](const Assignment& a) {
      ctx.steps++;
      if (!expanded.count(a)) out.insert(CandidateTuple{a});
    });
  }
  return out;
}

inline SolutionSet complement(const SolutionSet& s, const FlattenedSpec& spec,
                              const TraceDoc& trace, SolveOptions options = {}) {
  SolveContext ctx(spec, trace, options);
  return complement(s, ctx);
}

// --- node evaluation --------------------------------------------------------

namespace detail {

inline std::string count_phrase(std::size_t n) {
  return "found " + std::to_string(n) + " objects";
}

inline std::string slot_display(const SolveContext& ctx, int slot) {
  return std::string(shape_kind_type_name(ctx.spec.slots[slot].type)) + ":" +
         ctx.spec.slots[slot].path;
}

// Base candidates of one slot, through the range cache; logs a leaf block.
inline const SolutionSet& slot_base(int slot, SolveContext& ctx, int depth) {
  const std::string name = slot_display(ctx, slot);
  ctx.emit(depth, name, "Starting match. {");
  auto key = std::make_pair(slot, slot + 1);
  auto it = ctx.scope_cache.find(key);
  if (it != ctx.scope_cache.end()) {
    ctx.emit(depth, name, "}. End match. Already computed. return cached.");
    return it->second;
  }
  ctx.emit(depth, name, "matchExecute");
  SolutionSet set = base_components(ctx.trace, slot, ctx.spec);
  ctx.emit(depth, name, "matchExecute done. " + count_phrase(set.size()));
  ctx.emit_result(depth, name, "}. End match. Found " + std::to_string(set.size()) +
                                   " objects.",
                  set);
  return ctx.scope_cache.emplace(key, std::move(set)).first->second;
}

// Sub-universe over a slot range: every type-compatible combination that
// respects distinctness among the range's non-flexible slots.
inline const SolutionSet& scope_universe(const RExpr& node, SolveContext& ctx, int depth) {
  if (node.hi - node.lo == 1) return slot_base(node.lo, ctx, depth);
  ctx.emit(depth, node.display, "Starting match. {");
  auto key = std::make_pair(node.lo, node.hi);
  auto it = ctx.scope_cache.find(key);
  if (it != ctx.scope_cache.end()) {
    ctx.emit(depth, node.display, "}. End match. Already computed. return cached.");
    return it->second;
  }
  ctx.emit(depth, node.display, "matchExecute");
  SolutionSet set;
  std::vector<int> range_slots;
  for (int i = node.lo; i < node.hi; ++i) range_slots.push_back(i);
  std::vector<std::int32_t> chosen(range_slots.size(), CandidateTuple::kJoker);
  std::vector<bool> used(ctx.trace.shapes.size(), false);
  std::uint64_t produced = 0;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == range_slots.size()) {
      ctx.steps++;
      if (++produced > ctx.options.tuple_budget)
        throw EvalError(EvalError::Kind::BudgetExceeded,
                        "sub-universe of '" + node.display + "' exceeds tuple budget");
      CandidateTuple t(ctx.spec.slots.size());
      for (std::size_t j = 0; j < range_slots.size(); ++j)
        t.values[range_slots[j]] = chosen[j];
      set.insert(std::move(t));
      return;
    }
    int slot = range_slots[k];
    bool flexible = ctx.spec.slots[slot].flexible;
    for (std::int32_t cand : ctx.candidates[slot]) {
      if (!flexible && used[cand]) continue;
      chosen[k] = cand;
      if (!flexible) used[cand] = true;
      self(self, k + 1);
      if (!flexible) used[cand] = false;
    }
  };
  rec(rec, 0);
  ctx.emit(depth, node.display, "matchExecute done. " + count_phrase(set.size()));
  ctx.emit_result(depth, node.display,
                  "}. End match. Found " + std::to_string(set.size()) + " objects.", set);
  return ctx.scope_cache.emplace(key, std::move(set)).first->second;
}

inline std::string value_to_string(const PropertyValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return "'" + std::get<std::string>(v) + "'";
}

inline bool is_string_compare(const RExpr& node) {
  return node.op == BinOp::StrEquals ||
         ((node.op == BinOp::Eq || node.op == BinOp::Ne) &&
          infer_node_type(*node.lhs) == NodeType::StrScalar);
}

inline std::string binary_display(const RExpr& node) {
  if (node.op == BinOp::StrEquals) return "strEq";
  if ((node.op == BinOp::Eq || node.op == BinOp::Ne) &&
      infer_node_type(*node.lhs) == NodeType::StrScalar)
    return node.op == BinOp::Eq ? "strEq" : "strNe";
  return node.display;
}

}  // namespace detail

inline NodeValue solve_node(const RExpr& node, SolveContext& ctx, int depth = 2);

namespace detail {

inline ScalarRelation scalar_operand(const RExpr& node, SolveContext& ctx, int depth) {
  NodeValue v = solve_node(node, ctx, depth);
  if (!std::holds_alternative<ScalarRelation>(v))
    throw EvalError(EvalError::Kind::TypeMismatch,
                    "'" + node.display + "' is not a scalar expression");
  return std::get<ScalarRelation>(std::move(v));
}

inline SolutionSet set_operand(const RExpr& node, SolveContext& ctx, int depth) {
  NodeValue v = solve_node(node, ctx, depth);
  if (!std::holds_alternative<SolutionSet>(v))
    throw EvalError(EvalError::Kind::TypeMismatch,
                    "'" + node.display + "' is not a solution-set expression");
  return std::get<SolutionSet>(std::move(v));
}

inline bool compare_values(BinOp op, const PropertyValue& l, const PropertyValue& r) {
  if (std::holds_alternative<std::string>(l)) {
    const std::string& a = std::get<std::string>(l);
    const std::string& b = std::get<std::string>(r);
    switch (op) {
      case BinOp::Eq:
      case BinOp::StrEquals: return a == b;
      case BinOp::Ne: return a != b;
      default:
        throw EvalError(EvalError::Kind::TypeMismatch,
                        std::string("'") + binop_token(op) + "' cannot compare strings");
    }
  }
  std::int64_t a = std::get<std::int64_t>(l);
  std::int64_t b = std::get<std::int64_t>(r);
  switch (op) {
    case BinOp::Eq: return a == b;
    case BinOp::Ne: return a != b;
    case BinOp::Lt: return a < b;
    case BinOp::Gt: return a > b;
    default:
      throw EvalError(EvalError::Kind::TypeMismatch,
                      std::string("'") + binop_token(op) + "' cannot compare integers");
  }
}

}  // namespace detail

inline NodeValue solve_node(const RExpr& node, SolveContext& ctx, int depth) {
  switch (node.kind) {
    case RExpr::Kind::Scope: return detail::scope_universe(node, ctx, depth);

    case RExpr::Kind::Bool: {
      ctx.emit(depth, node.display, "Starting match. {");
      SolutionSet out;
      if (node.bool_value) out = universe_set(ctx);
      ctx.emit_result(depth, node.display,
                      "}. End match. Found " + std::to_string(out.size()) + " objects.",
                      out);
      return out;
    }

    case RExpr::Kind::Int: {
      ctx.emit(depth, node.display, "Starting match. {");
      ScalarRelation rel;
      rel.insert(ScalarRow{CandidateTuple(ctx.spec.slots.size()), node.int_value});
      ctx.emit(depth, node.display, "}. End match. Found 1 objects.");
      return rel;
    }
    case RExpr::Kind::Str: {
      ctx.emit(depth, node.display, "Starting match. {");
      ScalarRelation rel;
      rel.insert(ScalarRow{CandidateTuple(ctx.spec.slots.size()), node.str_value});
      ctx.emit(depth, node.display, "}. End match. Found 1 objects.");
      return rel;
    }

    case RExpr::Kind::Member: {
      ctx.emit(depth, node.display, "Starting match. {");
      const SolutionSet& base = detail::slot_base(node.slot, ctx, depth + 1);
      ScalarRelation rel;
      std::size_t i = 0;
      for (const CandidateTuple& t : base.tuples()) {
        PropertyValue v = shape_property(ctx.trace.shapes[t.values[node.slot]], node.prop);
        if (ctx.log)
          ctx.emit(depth, node.display,
                   "i:" + std::to_string(i) + " v:" + detail::value_to_string(v));
        rel.insert(ScalarRow{t, std::move(v)});
        ++i;
      }
      ctx.emit(depth, node.display,
               "}. End match. Found " + std::to_string(rel.size()) + " objects.");
      return rel;
    }

    case RExpr::Kind::DefaultProp: {
      ctx.emit(depth, node.display, "Starting match. {");
      const SolutionSet& combos = detail::scope_universe(node, ctx, depth + 1);
      ScalarRelation rel;
      for (const CandidateTuple& t : combos.tuples()) {
        Rect box = *tuple_bbox(t, ctx.trace);
        std::int64_t v = 0;
        switch (node.box_prop) {
          case BoxProp::X: v = box.left; break;
          case BoxProp::Y: v = box.top; break;
          case BoxProp::Width: v = box.width(); break;
          case BoxProp::Height: v = box.height(); break;
        }
        rel.insert(ScalarRow{t, v});
      }
      ctx.emit(depth, node.display,
               "}. End match. Found " + std::to_string(rel.size()) + " objects.");
      return rel;
    }

    case RExpr::Kind::Not: {
      ctx.emit(depth, node.display, "Starting match. {");
      SolutionSet child = detail::set_operand(*node.lhs, ctx, depth + 1);
      SolutionSet out = complement(child, ctx);
      ctx.emit_result(depth, node.display,
                      "}. End match. Found " + std::to_string(out.size()) + " objects.",
                      out);
      return out;
    }

    case RExpr::Kind::Binary: break;
  }

  // Binary operators. In-order DFS: left first, then the and/implies
  // short-circuits, then right.
  const std::string label = detail::binary_display(node);
  ctx.emit(depth, label, "Starting match. {");
  ctx.emit(depth, label, "matchExecute");

  if (is_positional_op(node.op) || is_logic_op(node.op)) {
    SolutionSet left = detail::set_operand(*node.lhs, ctx, depth + 1);
    SolutionSet out;
    if (node.op == BinOp::And && left.empty()) {
      ctx.emit(depth, label, "left operand empty. short-circuit.");
    } else if (node.op == BinOp::Implies && left.empty()) {
      ctx.emit(depth, label, "antecedent empty. return universe.");
      out = universe_set(ctx);
    } else {
      SolutionSet right = detail::set_operand(*node.rhs, ctx, depth + 1);
      if (is_positional_op(node.op))
        out = eval_positional(node.op, left, right, ctx);
      else
        out = eval_logical(node.op, left, right, universe_set(ctx), ctx);
    }
    ctx.emit(depth, label, "done matchExecute. " + detail::count_phrase(out.size()));
    ctx.emit_result(depth, label,
                    "}. End match. Found " + std::to_string(out.size()) + " objects.", out);
    return out;
  }

  if (is_arith_op(node.op)) {
    ScalarRelation left = detail::scalar_operand(*node.lhs, ctx, depth + 1);
    ScalarRelation right = detail::scalar_operand(*node.rhs, ctx, depth + 1);
    ScalarRelation out;
    for (const ScalarRow& a : left.rows()) {
      for (const ScalarRow& b : right.rows()) {
        ctx.steps++;
        auto merged = merge_tuples(a.tuple, b.tuple, ctx.spec);
        if (!merged) continue;
        if (node.op == BinOp::Concat) {
          out.insert(ScalarRow{std::move(*merged), std::get<std::string>(a.value) +
                                                       std::get<std::string>(b.value)});
          continue;
        }
        std::int64_t x = std::get<std::int64_t>(a.value);
        std::int64_t y = std::get<std::int64_t>(b.value);
        std::int64_t v = 0;
        switch (node.op) {
          case BinOp::Add: v = x + y; break;
          case BinOp::Sub: v = x - y; break;
          case BinOp::Mul: v = x * y; break;
          case BinOp::Div:
            if (y == 0) {
              ctx.emit(depth, label, "division by zero. dropping row.");
              continue;
            }
            v = x / y;
            break;
          default: break;
        }
        out.insert(ScalarRow{std::move(*merged), v});
      }
    }
    ctx.emit(depth, label, "done matchExecute. " + detail::count_phrase(out.size()));
    ctx.emit(depth, label,
             "}. End match. Found " + std::to_string(out.size()) + " objects.");
    return out;
  }

  // relational / string comparison
  ScalarRelation left = detail::scalar_operand(*node.lhs, ctx, depth + 1);
  ScalarRelation right = detail::scalar_operand(*node.rhs, ctx, depth + 1);
  const bool string_compare = detail::is_string_compare(node);
  SolutionSet out;
  for (const ScalarRow& a : left.rows()) {
    for (const ScalarRow& b : right.rows()) {
      ctx.steps++;
      if (ctx.log && string_compare)
        ctx.emit(depth, label,
                 detail::value_to_string(a.value) + " str equals " +
                     detail::value_to_string(b.value));
      if (!detail::compare_values(node.op, a.value, b.value)) continue;
      if (auto merged = merge_tuples(a.tuple, b.tuple, ctx.spec))
        out.insert(std::move(*merged));
    }
  }
  ctx.emit(depth, label, "done matchExecute. " + detail::count_phrase(out.size()));
  ctx.emit_result(depth, label,
                  "}. End match. Found " + std::to_string(out.size()) + " objects.", out);
  return out;
}

// --- properties under a solution tuple ---------------------------------------

inline PropertyValue eval_scalar_under(const RExpr& e, const CandidateTuple& t,
                                       const FlattenedSpec& spec, const TraceDoc& trace) {
  switch (e.kind) {
    case RExpr::Kind::Member: {
      if (!t.bound(e.slot))
        throw EvalError(EvalError::Kind::UnboundSlot,
                        "property references unbound variable '" +
                            spec.slots[e.slot].path + "'");
      return shape_property(trace.shapes[t.values[e.slot]], e.prop);
    }
    case RExpr::Kind::DefaultProp: {
      std::optional<Rect> box;
      for (int i = e.lo; i < e.hi; ++i) {
        if (!t.bound(i)) continue;
        Rect b = bounding_box(trace.shapes[t.values[i]]);
        box = box ? rect_union(*box, b) : b;
      }
      if (!box)
        throw EvalError(EvalError::Kind::UnboundSlot,
                        "default property '" + e.display + "' has no bound shapes");
      switch (e.box_prop) {
        case BoxProp::X: return box->left;
        case BoxProp::Y: return box->top;
        case BoxProp::Width: return box->width();
        case BoxProp::Height: return box->height();
      }
      return std::int64_t{0};
    }
    case RExpr::Kind::Int: return e.int_value;
    case RExpr::Kind::Str: return e.str_value;
    case RExpr::Kind::Binary: {
      PropertyValue l = eval_scalar_under(*e.lhs, t, spec, trace);
      PropertyValue r = eval_scalar_under(*e.rhs, t, spec, trace);
      if (e.op == BinOp::Concat)
        return std::get<std::string>(l) + std::get<std::string>(r);
      std::int64_t x = std::get<std::int64_t>(l);
      std::int64_t y = std::get<std::int64_t>(r);
      switch (e.op) {
        case BinOp::Add: return x + y;
        case BinOp::Sub: return x - y;
        case BinOp::Mul: return x * y;
        case BinOp::Div:
          if (y == 0)
            throw EvalError(EvalError::Kind::DivisionByZero, "division by zero in property");
          return x / y;
        default: break;
      }
      break;
    }
    default: break;
  }
  throw EvalError(EvalError::Kind::TypeMismatch,
                  "'" + e.display + "' is not a scalar property expression");
}

// User-defined properties of the root spec evaluated under a solution tuple,
// plus the default bounding-box properties where not user-defined.
inline std::map<std::string, PropertyValue> spec_properties(const FlattenedSpec& spec,
                                                            const CandidateTuple& tuple,
                                                            const TraceDoc& trace) {
  std::map<std::string, PropertyValue> out;
  for (const auto& [key, expr] : spec.property_defs) {
    if (!key.first.empty()) continue;  // root properties only
    out[key.second] = eval_scalar_under(*expr, tuple, spec, trace);
  }
  if (auto box = tuple_bbox(tuple, trace)) {
    if (!out.count("X")) out["X"] = box->left;
    if (!out.count("Y")) out["Y"] = box->top;
    if (!out.count("WIDTH")) out["WIDTH"] = box->width();
    if (!out.count("HEIGHT")) out["HEIGHT"] = box->height();
  }
  return out;
}

inline std::string tuple_to_string(const CandidateTuple& t, const FlattenedSpec& spec,
                                   const TraceDoc& trace) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out << " ";
    out << spec.slots[i].path << "=";
    if (t.bound(i))
      out << trace.shapes[t.values[i]].display_label();
    else
      out << "*";
  }
  return out.str();
}

// --- whole-spec check ---------------------------------------------------------

inline Verdict check_spec(const FlattenedSpec& spec, const TraceDoc& trace,
                          SolveOptions options = {}) {
  Verdict verdict;
  SolveContext ctx(spec, trace, options, &verdict.log);
  const std::string& name = spec.name;

  validate_flattened(spec);

  for (const RExprPtr& stmt : spec.statements)
    ctx.emit(0, name, ".... " + to_string(*stmt));
  ctx.emit(0, name,
           "all shapes = " + std::to_string(trace.shapes.size()) + " captured");
  ctx.emit(0, name, "Solving ... {");
  ctx.emit(1, name, "Starting match. {");
  ctx.emit(1, name, "matching variables {");
  for (std::size_t i = 0; i < spec.slots.size(); ++i)
    detail::slot_base(static_cast<int>(i), ctx, 2);
  ctx.emit(1, name, "}. done matching variables.");

  ctx.emit(1, name, "matching constraints {");
  SolutionSet running;
  for (std::size_t k = 0; k < spec.statements.size(); ++k) {
    ctx.emit(1, name, "Constraint " + std::to_string(k) + " {");
    SolutionSet stmt = detail::set_operand(*spec.statements[k], ctx, 2);
    running = (k == 0) ? std::move(stmt)
                       : eval_logical(BinOp::And, running, stmt, universe_set(ctx), ctx);
    ctx.emit(1, name,
             "}. Found " + std::to_string(running.size()) + " objects matching constraint " +
                 std::to_string(k) + ".");
    if (running.empty() && k + 1 < spec.statements.size()) {
      ctx.emit(1, name, "skipping remaining constraints. empty intersection.");
      break;
    }
  }
  ctx.emit(1, name,
           "}. done matching constraints. " + detail::count_phrase(running.size()) + ".");

  if (!running.empty() && !universe_inhabited(spec, trace)) {
    ctx.emit(1, name,
             "trace cannot bind every variable. dropping " +
                 std::to_string(running.size()) + " candidate solutions.");
    running = SolutionSet{};
  }

  ctx.emit(1, name, "computing properties. {");
  std::size_t index = 0;
  for (const CandidateTuple& t : running.tuples()) {
    ctx.emit(2, name,
             "solution " + std::to_string(index) + ": " + tuple_to_string(t, spec, trace));
    try {
      for (const auto& [prop, value] : spec_properties(spec, t, trace))
        ctx.emit(2, name, prop + " = " + detail::value_to_string(value));
    } catch (const EvalError& e) {
      ctx.emit(2, name, std::string("property not computable: ") + e.what());
    }
    ++index;
  }
  ctx.emit(1, name, "} done computing properties.");
  ctx.emit(1, name, "}. End match. Found " + std::to_string(running.size()) + " objects.");
  ctx.emit(0, name, "}. Done solving.");

  verdict.satisfied = !running.empty();
  ctx.emit(0, name,
           verdict.satisfied ? "Testing passed: specification satisfied."
                             : "Testing failed: specification not met!");
  verdict.solutions = std::move(running);
  verdict.step_count = ctx.steps;
  return verdict;
}

}  // namespace guicheck
