#pragma once

// Brute-force satisfiability oracle. Enumerates every complete assignment of
// trace shapes to slots and evaluates the constraint tree directly per
// assignment, with the set rules for implies/not/xor applied at assignment
// granularity via a two-pass evaluation. Kept independent of the tuple-set
// machinery so disagreements point at solver bugs.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "guicheck/errors.hpp"
#include "guicheck/resolve.hpp"
#include "guicheck/solver.hpp"
#include "guicheck/trace.hpp"

namespace guicheck {

struct OracleResult {
  bool satisfied = false;
  std::vector<Assignment> assignments;  // lexicographically ordered
};

namespace detail {

class OracleEngine {
 public:
  OracleEngine(const FlattenedSpec& spec, const TraceDoc& trace, std::uint64_t budget)
      : spec_(spec), trace_(trace), budget_(budget) {
    candidates_.resize(spec.slots.size());
    for (std::size_t i = 0; i < spec.slots.size(); ++i)
      for (const Shape& s : trace.shapes)
        if (s.kind == spec.slots[i].type)
          candidates_[i].push_back(static_cast<std::int32_t>(s.seq));
  }

  OracleResult run() {
    validate_flattened(spec_);
    enumerate_assignments();
    OracleResult result;
    for (std::size_t ai = 0; ai < assignments_.size(); ++ai)
      if (!ways(*spec_.constraint_tree, ai).empty())
        result.assignments.push_back(assignments_[ai]);
    result.satisfied = !result.assignments.empty();
    return result;
  }

 private:
  using Mask = std::uint64_t;

  void enumerate_assignments() {
    if (spec_.slots.size() > 63)
      throw EvalError(EvalError::Kind::BudgetExceeded, "oracle supports at most 63 slots");
    Assignment current(spec_.slots.size());
    std::vector<bool> used(trace_.shapes.size(), false);
    enumerate_rec(0, current, used);
  }

  void enumerate_rec(std::size_t slot, Assignment& current, std::vector<bool>& used) {
    if (slot == spec_.slots.size()) {
      if (assignments_.size() >= budget_)
        throw EvalError(EvalError::Kind::BudgetExceeded,
                        "assignment universe exceeds oracle budget");
      assignments_.push_back(current);
      return;
    }
    bool flexible = spec_.slots[slot].flexible;
    for (std::int32_t cand : candidates_[slot]) {
      if (!flexible && used[cand]) continue;
      current[slot] = cand;
      if (!flexible) used[cand] = true;
      enumerate_rec(slot + 1, current, used);
      if (!flexible) used[cand] = false;
    }
  }

  static Mask range_mask(int lo, int hi) {
    Mask m = 0;
    for (int i = lo; i < hi; ++i) m |= (Mask{1} << i);
    return m;
  }

  Rect mask_bbox(std::size_t ai, Mask mask) const {
    const Assignment& a = assignments_[ai];
    std::optional<Rect> box;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!(mask & (Mask{1} << i))) continue;
      Rect b = bounding_box(trace_.shapes[a[i]]);
      box = box ? rect_union(*box, b) : b;
    }
    return *box;
  }

  std::int64_t mask_size_measure(std::size_t ai, Mask mask) const {
    if (std::popcount(mask) == 1) {
      int slot = std::countr_zero(mask);
      const Shape& s = trace_.shapes[assignments_[ai][slot]];
      if (s.kind == ShapeKind::Line) {
        std::int64_t dx = s.coords[2] - s.coords[0];
        std::int64_t dy = s.coords[3] - s.coords[1];
        return dx * dx + dy * dy;
      }
    }
    return mask_bbox(ai, mask).area();
  }

  bool positional_mask_holds(BinOp op, std::size_t ai, Mask l, Mask r) const {
    if (l == 0 || r == 0) return false;  // an operand binding nothing has no box
    Rect a = mask_bbox(ai, l);
    Rect b = mask_bbox(ai, r);
    switch (op) {
      case BinOp::Above: return a.bottom <= b.top;
      case BinOp::Below: return a.top >= b.bottom;
      case BinOp::LeftTo: return a.right <= b.left;
      case BinOp::RightTo: return a.left >= b.right;
      case BinOp::Contains:
        return a.left <= b.left && a.top <= b.top && a.right >= b.right &&
               a.bottom >= b.bottom;
      case BinOp::Over:
        return a.left <= b.right && b.left <= a.right && a.top <= b.bottom &&
               b.top <= a.bottom;
      case BinOp::LeftAligned: return a.left == b.left;
      case BinOp::RightAligned: return a.right == b.right;
      case BinOp::TopAligned: return a.top == b.top;
      case BinOp::BottomAligned: return a.bottom == b.bottom;
      case BinOp::Smaller:
        return mask_size_measure(ai, l) < mask_size_measure(ai, r);
      default: return false;
    }
  }

  struct ScalarResult {
    PropertyValue value;
    Mask mask = 0;
  };

  std::optional<ScalarResult> scalar(const RExpr& e, std::size_t ai) const {
    switch (e.kind) {
      case RExpr::Kind::Member:
        return ScalarResult{
            shape_property(trace_.shapes[assignments_[ai][e.slot]], e.prop),
            Mask{1} << e.slot};
      case RExpr::Kind::DefaultProp: {
        Mask mask = range_mask(e.lo, e.hi);
        Rect box = mask_bbox(ai, mask);
        std::int64_t v = 0;
        switch (e.box_prop) {
          case BoxProp::X: v = box.left; break;
          case BoxProp::Y: v = box.top; break;
          case BoxProp::Width: v = box.width(); break;
          case BoxProp::Height: v = box.height(); break;
        }
        return ScalarResult{v, mask};
      }
      case RExpr::Kind::Int: return ScalarResult{e.int_value, 0};
      case RExpr::Kind::Str: return ScalarResult{e.str_value, 0};
      case RExpr::Kind::Binary: {
        auto l = scalar(*e.lhs, ai);
        auto r = scalar(*e.rhs, ai);
        if (!l || !r) return std::nullopt;
        if (e.op == BinOp::Concat)
          return ScalarResult{std::get<std::string>(l->value) +
                                  std::get<std::string>(r->value),
                              l->mask | r->mask};
        std::int64_t x = std::get<std::int64_t>(l->value);
        std::int64_t y = std::get<std::int64_t>(r->value);
        std::int64_t v = 0;
        switch (e.op) {
          case BinOp::Add: v = x + y; break;
          case BinOp::Sub: v = x - y; break;
          case BinOp::Mul: v = x * y; break;
          case BinOp::Div:
            if (y == 0) return std::nullopt;
            v = x / y;
            break;
          default:
            throw EvalError(EvalError::Kind::TypeMismatch, "non-scalar operator");
        }
        return ScalarResult{v, l->mask | r->mask};
      }
      default:
        throw EvalError(EvalError::Kind::TypeMismatch, "non-scalar expression");
    }
  }

  // The slot sets under which the node holds at assignment `ai`; each mask is
  // one way of satisfying it (mirrors which slots a solver tuple would bind).
  std::vector<Mask> ways(const RExpr& e, std::size_t ai) {
    switch (e.kind) {
      case RExpr::Kind::Scope: return {range_mask(e.lo, e.hi)};
      case RExpr::Kind::Bool:
        if (e.bool_value) return {Mask{0}};
        return {};
      case RExpr::Kind::Not: {
        const std::vector<char>& s = sat(*e.lhs);
        if (s[ai]) return {};
        return {full_mask()};
      }
      case RExpr::Kind::Binary: break;
      default:
        throw EvalError(EvalError::Kind::TypeMismatch,
                        "scalar expression used as a constraint");
    }

    if (is_positional_op(e.op)) {
      std::vector<Mask> out;
      for (Mask l : ways(*e.lhs, ai))
        for (Mask r : ways(*e.rhs, ai))
          if (positional_mask_holds(e.op, ai, l, r)) push_unique(out, l | r);
      return out;
    }
    switch (e.op) {
      case BinOp::And: {
        std::vector<Mask> out;
        for (Mask l : ways(*e.lhs, ai))
          for (Mask r : ways(*e.rhs, ai)) push_unique(out, l | r);
        return out;
      }
      case BinOp::Or: {
        std::vector<Mask> out = ways(*e.lhs, ai);
        for (Mask r : ways(*e.rhs, ai)) push_unique(out, r);
        return out;
      }
      case BinOp::Implies: {
        const std::vector<char>& s = sat(*e.lhs);
        bool antecedent_empty = std::find(s.begin(), s.end(), char{1}) == s.end();
        if (antecedent_empty) return {Mask{0}};  // the universe
        std::vector<Mask> out;
        for (Mask l : ways(*e.lhs, ai))
          for (Mask r : ways(*e.rhs, ai)) push_unique(out, l | r);
        return out;
      }
      case BinOp::Xor: {
        bool l = sat(*e.lhs)[ai];
        bool r = sat(*e.rhs)[ai];
        if (l != r) return {full_mask()};
        return {};
      }
      default: break;
    }
    // relational / string comparison
    auto l = scalar(*e.lhs, ai);
    auto r = scalar(*e.rhs, ai);
    if (!l || !r) return {};
    bool holds = false;
    if (std::holds_alternative<std::string>(l->value)) {
      const std::string& a = std::get<std::string>(l->value);
      const std::string& b = std::get<std::string>(r->value);
      holds = (e.op == BinOp::Ne) ? a != b : a == b;
    } else {
      std::int64_t a = std::get<std::int64_t>(l->value);
      std::int64_t b = std::get<std::int64_t>(r->value);
      switch (e.op) {
        case BinOp::Eq: holds = a == b; break;
        case BinOp::Ne: holds = a != b; break;
        case BinOp::Lt: holds = a < b; break;
        case BinOp::Gt: holds = a > b; break;
        default:
          throw EvalError(EvalError::Kind::TypeMismatch, "bad comparison operator");
      }
    }
    if (!holds) return {};
    return {l->mask | r->mask};
  }

  const std::vector<char>& sat(const RExpr& e) {
    auto it = sat_memo_.find(&e);
    if (it != sat_memo_.end()) return it->second;
    std::vector<char> v(assignments_.size(), 0);
    for (std::size_t ai = 0; ai < assignments_.size(); ++ai)
      v[ai] = ways(e, ai).empty() ? 0 : 1;
    return sat_memo_.emplace(&e, std::move(v)).first->second;
  }

  Mask full_mask() const { return range_mask(0, static_cast<int>(spec_.slots.size())); }

  static void push_unique(std::vector<Mask>& v, Mask m) {
    if (std::find(v.begin(), v.end(), m) == v.end()) v.push_back(m);
  }

  const FlattenedSpec& spec_;
  const TraceDoc& trace_;
  std::uint64_t budget_;
  std::vector<std::vector<std::int32_t>> candidates_;
  std::vector<Assignment> assignments_;
  std::unordered_map<const RExpr*, std::vector<char>> sat_memo_;
};

}  // namespace detail

inline OracleResult brute_force_check(const FlattenedSpec& spec, const TraceDoc& trace,
                                      std::uint64_t budget = 1'000'000) {
  detail::OracleEngine engine(spec, trace, budget);
  return engine.run();
}

}  // namespace guicheck
