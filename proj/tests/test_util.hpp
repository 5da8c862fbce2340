#pragma once

// Shared fixtures and helpers for the test suites.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "guicheck/guicheck.hpp"

namespace testutil {

// Six-shape scrollbar trace used across solver tests: four rectangles (the
// scrollbar body, both arrow boxes and a tall unrelated box) and the two
// arrow triangles.
inline constexpr std::string_view kScrollbarTrace = R"(
o1: rectangle(10, 30, 10, 60);
o2: rectangle(10, 10, 10, 10);
o3: rectangle(80, 10, 10, 10);
o4: rectangle(20, 10, 60, 10);
o5: triangle(88, 15, 80, 18, 80, 12);
o6: triangle(12, 15, 20, 18, 20, 12);
)";

inline guicheck::TraceDoc scrollbar_trace() {
  return guicheck::parse_trace(kScrollbarTrace);
}

inline const guicheck::Library& builtin() {
  static const guicheck::Library lib = guicheck::builtin_library();
  return lib;
}

inline guicheck::FlattenedSpec resolve_builtin(const std::string& name) {
  return guicheck::resolve_spec(name, guicheck::SpecDoc{}, builtin());
}

inline guicheck::FlattenedSpec resolve_source(std::string_view source,
                                              const std::string& name) {
  guicheck::SpecDoc doc = guicheck::parse_specs(source);
  return guicheck::resolve_spec(name, doc, builtin());
}

inline int seq_of(const guicheck::TraceDoc& trace, std::string_view label) {
  for (const guicheck::Shape& s : trace.shapes)
    if (s.label && *s.label == label) return s.seq;
  return -1;
}

// Tuple literal; -1 is the Joker.
inline guicheck::CandidateTuple tup(std::initializer_list<int> values) {
  guicheck::CandidateTuple t;
  for (int v : values) t.values.push_back(v);
  return t;
}

inline std::set<std::vector<std::int32_t>> tuple_values(const guicheck::SolutionSet& s) {
  std::set<std::vector<std::int32_t>> out;
  for (const guicheck::CandidateTuple& t : s.tuples()) out.insert(t.values);
  return out;
}

inline std::set<guicheck::Assignment> expand(const guicheck::FlattenedSpec& spec,
                                             const guicheck::TraceDoc& trace,
                                             const guicheck::SolutionSet& s) {
  guicheck::SolveContext ctx(spec, trace);
  return guicheck::expand_solutions(s, ctx);
}

inline std::set<guicheck::Assignment> to_set(const std::vector<guicheck::Assignment>& v) {
  return std::set<guicheck::Assignment>(v.begin(), v.end());
}

// Random conflict-free tuple over the spec's slot typing.
inline guicheck::CandidateTuple random_valid_tuple(std::mt19937_64& rng,
                                                   const guicheck::FlattenedSpec& spec,
                                                   const guicheck::TraceDoc& trace) {
  std::vector<std::vector<std::int32_t>> cands(spec.slots.size());
  for (std::size_t i = 0; i < spec.slots.size(); ++i)
    for (const guicheck::Shape& s : trace.shapes)
      if (s.kind == spec.slots[i].type) cands[i].push_back(s.seq);
  for (int attempt = 0; attempt < 100; ++attempt) {
    guicheck::CandidateTuple t(spec.slots.size());
    for (std::size_t i = 0; i < spec.slots.size(); ++i) {
      if (cands[i].empty() || rng() % 2) continue;
      t.values[i] = cands[i][rng() % cands[i].size()];
    }
    bool ok = true;
    for (std::size_t i = 0; i < t.size() && ok; ++i)
      for (std::size_t j = i + 1; j < t.size() && ok; ++j)
        if (t.bound(i) && t.bound(j) && !spec.slots[i].flexible &&
            !spec.slots[j].flexible && t.values[i] == t.values[j])
          ok = false;
    if (ok) return t;
  }
  return guicheck::CandidateTuple(spec.slots.size());
}

// --- differential-test instance generator ------------------------------------
//
// Small template grammar over at most 5 slots. Heavy templates (not / xor,
// whose evaluation expands to concrete tuples) are kept to single-statement
// instances so the instrumented step count stays within the n * m_max^v bound
// asserted by the acceptance suite.

struct DiffInstance {
  std::string source;
  guicheck::TraceDoc trace;
};

namespace diff_detail {

inline const std::vector<guicheck::ShapeKind>& var_kinds() {
  static const std::vector<guicheck::ShapeKind> kKinds = {
      guicheck::ShapeKind::Rectangle, guicheck::ShapeKind::Triangle,
      guicheck::ShapeKind::Ellipse, guicheck::ShapeKind::Textrect,
      guicheck::ShapeKind::Line};
  return kKinds;
}

inline const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> kWords = {"Track2", "OK", "Menu", "w"};
  return kWords;
}

}  // namespace diff_detail

inline DiffInstance make_diff_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

  struct Var {
    std::string name;
    guicheck::ShapeKind kind;
    bool complex = false;
    bool flexible = false;
  };

  int nvars = 3 + pick(2);
  bool use_complex = pick(5) == 0;
  std::vector<Var> vars;
  for (int i = 0; i < nvars; ++i) {
    Var v;
    v.name = "v" + std::to_string(i);
    if (use_complex && i == 0) {
      v.complex = true;
      v.kind = guicheck::ShapeKind::Rectangle;  // helper holds two rectangles
    } else {
      v.kind = diff_detail::var_kinds()[pick(5)];
      v.flexible = pick(7) == 0;
    }
    vars.push_back(v);
  }

  auto positional = [&]() {
    static const char* kOps[] = {"leftto",      "rightto",     "above",
                                 "below",       "contains",    "over",
                                 "smaller",     "leftaligned", "rightaligned",
                                 "topaligned",  "bottomaligned"};
    return std::string(kOps[pick(11)]);
  };
  auto relational = [&]() {
    static const char* kOps[] = {"==", "!=", "<", ">"};
    return std::string(kOps[pick(4)]);
  };
  auto any_var = [&]() -> const Var& { return vars[pick(nvars)]; };
  auto prop_of = [&](const Var& v) -> std::string {
    if (!v.complex && v.kind == guicheck::ShapeKind::Line && pick(2) == 0) {
      static const char* kLineProps[] = {"x1", "y1", "x2", "y2"};
      return kLineProps[pick(4)];
    }
    static const char* kBoxProps[] = {"x", "y", "width", "height"};
    return kBoxProps[pick(4)];
  };
  auto literal = [&]() { return std::to_string(pick(41)); };
  auto scalar_atom = [&]() {
    const Var& v = any_var();
    return "(" + v.name + "." + prop_of(v) + " " + relational() + " " + literal() + ")";
  };
  auto pos_atom = [&]() {
    return "(" + any_var().name + " " + positional() + " " + any_var().name + ")";
  };

  int tmpl = pick(12);
  bool heavy = tmpl == 7 || tmpl == 8;
  auto make_stmt = [&](int t) -> std::string {
    switch (t) {
      case 0: return pos_atom();
      case 1: return "(" + pos_atom() + " " + positional() + " " + any_var().name + ")";
      case 2: return scalar_atom();
      case 3: {
        const Var& x = any_var();
        const Var& y = any_var();
        return "(" + x.name + "." + prop_of(x) + " " + relational() + " " + y.name + "." +
               prop_of(y) + ")";
      }
      case 4: return "(" + scalar_atom() + " and " + pos_atom() + ")";
      case 5: return "(" + scalar_atom() + " or " + scalar_atom() + ")";
      case 6: return "(" + scalar_atom() + " implies " + pos_atom() + ")";
      case 7: return "(not " + pos_atom() + ")";
      case 8: return "(" + scalar_atom() + " xor " + scalar_atom() + ")";
      case 9: {
        for (const Var& v : vars)
          if (!v.complex && v.kind == guicheck::ShapeKind::Textrect)
            return "(" + v.name + ".text == '" +
                   diff_detail::word_pool()[pick(4)] + "')";
        return scalar_atom();
      }
      case 10: {
        const Var& x = any_var();
        const Var& y = any_var();
        return "((" + x.name + "." + prop_of(x) + " + " + literal() + ") " + relational() +
               " " + y.name + "." + prop_of(y) + ")";
      }
      default: return any_var().name;
    }
  };

  std::string body = "    " + make_stmt(tmpl) + ";\n";
  if (!heavy && pick(2) == 0) {
    int t2 = pick(12);
    while (t2 == 7 || t2 == 8 || t2 == 1) t2 = pick(12);
    body += "    " + make_stmt(t2) + ";\n";
  }

  std::string source;
  if (use_complex) {
    static const char* kHelperBodies[] = {
        "true;", "(ha topaligned hb);", "(ha.x < hb.x);"};
    source += std::string("Helper = { variables { Rectangle ha; Rectangle hb; } "
                          "constraints { ") +
              kHelperBodies[pick(3)] + " } }\n";
  }
  source += "T = {\n  variables {\n";
  for (const Var& v : vars) {
    source += "    ";
    if (v.flexible) source += "flexible ";
    source += v.complex ? "Helper" : guicheck::shape_kind_type_name(v.kind);
    source += " " + v.name + ";\n";
  }
  source += "  }\n  constraints {\n" + body + "  }\n}\n";

  // Trace of at most 8 shapes: two per used kind, the remainder handed out
  // at random (keeps every slot's candidate count at 2 or more).
  guicheck::TraceGenParams params;
  std::vector<guicheck::ShapeKind> used;
  for (const Var& v : vars)
    if (!params.counts.count(v.kind)) {
      params.counts[v.kind] = 2;
      used.push_back(v.kind);
    }
  int total = 2 * static_cast<int>(used.size());
  if (total + 1 <= 8 && pick(3) == 0) {
    guicheck::ShapeKind extra = diff_detail::var_kinds()[pick(5)];
    if (!params.counts.count(extra)) {
      params.counts[extra] = 1;
      ++total;
    }
  }
  while (total < 8 && pick(3) != 0) {
    params.counts[used[pick(static_cast<int>(used.size()))]]++;
    ++total;
  }
  params.coord_min = 0;
  params.coord_max = 30;
  params.max_extent = 12;
  params.text_pool = diff_detail::word_pool();

  DiffInstance instance;
  instance.source = std::move(source);
  instance.trace = guicheck::random_trace(seed ^ 0x9e3779b97f4a7c15ull, params);
  return instance;
}

// Runs solver and oracle on one generated instance and checks full agreement
// plus the complexity bound. Returns the instrumented step count.
inline std::uint64_t check_diff_instance(std::uint64_t seed) {
  DiffInstance instance = make_diff_instance(seed);
  guicheck::SpecDoc doc = guicheck::parse_specs(instance.source);
  guicheck::FlattenedSpec spec = guicheck::resolve_spec("T", doc, builtin());

  guicheck::Verdict verdict = guicheck::check_spec(spec, instance.trace);
  guicheck::OracleResult oracle = guicheck::brute_force_check(spec, instance.trace);

  if (verdict.satisfied != oracle.satisfied)
    throw std::runtime_error("verdict disagreement at seed " + std::to_string(seed) +
                             "\n" + instance.source);
  std::set<guicheck::Assignment> solver_set =
      expand(spec, instance.trace, verdict.solutions);
  if (solver_set != to_set(oracle.assignments))
    throw std::runtime_error("solution-set disagreement at seed " + std::to_string(seed) +
                             "\n" + instance.source);

  std::uint64_t m_max = 0;
  for (const guicheck::SlotInfo& slot : spec.slots) {
    std::uint64_t m = 0;
    for (const guicheck::Shape& s : instance.trace.shapes) m += (s.kind == slot.type);
    m_max = std::max(m_max, m);
  }
  std::uint64_t bound = static_cast<std::uint64_t>(spec.node_count);
  for (std::size_t i = 0; i < spec.slots.size(); ++i) bound *= m_max;
  if (verdict.step_count > bound)
    throw std::runtime_error("step bound exceeded at seed " + std::to_string(seed) +
                             ": " + std::to_string(verdict.step_count) + " > " +
                             std::to_string(bound) + "\n" + instance.source);
  return verdict.step_count;
}

}  // namespace testutil
