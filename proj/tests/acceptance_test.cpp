// Acceptance suite. Each test prints one [criterion] PASS/FAIL line; the
// whole binary runs under ctest with everything else.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "guicheck/guicheck.hpp"
#include "test_util.hpp"

using namespace guicheck;
using testutil::resolve_builtin;
using testutil::scrollbar_trace;
using testutil::tuple_values;

namespace {

void report_criterion(const char* label) {
  std::printf("[criterion] %s: %s\n", label,
              ::testing::Test::HasFailure() ? "FAIL" : "PASS");
}

// Result snapshots attached to node-exit events, in evaluation order.
std::vector<std::set<std::vector<std::int32_t>>> exit_results(
    const std::vector<LogEvent>& log, const std::string& scope) {
  std::vector<std::set<std::vector<std::int32_t>>> out;
  for (const LogEvent& e : log) {
    if (e.scope != scope || !e.result) continue;
    std::set<std::vector<std::int32_t>> tuples;
    for (const CandidateTuple& t : *e.result) tuples.insert(t.values);
    out.push_back(std::move(tuples));
  }
  return out;
}

TraceDoc cropped_labels_trace() {
  return parse_trace(
      "textrect(1,1,100,100,'Coo...'); textrect(1,1,100,100,'Met...');"
      "textrect(1,1,100,100,'Post param...'); textrect(1,1,100,100,'SQL...');");
}

TraceDoc uncropped_labels_trace() {
  return parse_trace(
      "textrect(1,1,100,20,'Cookie'); textrect(1,30,100,20,'Method');"
      "textrect(1,60,100,20,'Post parameter'); textrect(1,90,100,20,'SQLMap');");
}

struct CaseStudy {
  std::string name;
  TraceDoc pass;
  TraceDoc fail;
};

// Passing fixtures plus failing mutants built with the mutate_trace building
// blocks, mirroring the studied defects: reordered rows, removed separator,
// removed hotkey, missing canvas, altered tooltip text, stacked buttons,
// left-justified text.
std::vector<CaseStudy> case_studies() {
  std::vector<CaseStudy> out;

  TraceDoc tracks = parse_trace(
      "textrect(10,10,60,12,'Track1'); textrect(10,30,60,12,'Track2');"
      "textrect(10,50,60,12,'Track10');");
  out.push_back({"OrderedTracks", tracks, translate_shape(tracks, 1, 0, 40)});

  TraceDoc menu = parse_trace(
      "textrect(10,10,80,12,'Properties'); line(10,26,90,26);"
      "textrect(10,30,80,12,'Parent Directory');");
  out.push_back({"MenuWithSeparator", menu, delete_shape(menu, 1)});

  TraceDoc label = parse_trace(
      "textrect(20,10,60,14,'Markers'); rectangle(30,26,20,2);");
  out.push_back({"MainMenuLabel", label, delete_shape(label, 1)});

  TraceDoc canvas = parse_trace(
      "rectangle(0,0,100,100); rectangle(10,10,60,60); rectangle(20,20,20,20);");
  out.push_back({"ResizedCanvas", canvas, delete_shape(canvas, 2)});

  std::string tips;
  const char* names[] = {"Line",       "Curve",        "Rounded Rectangle",
                         "Rectangle",  "Polygon",      "Ellipse",
                         "Select",     "Eraser",       "Fill With Color",
                         "Pick Color", "Magnifier",    "Pencil",
                         "Brush",      "Airbrush",     "Text",
                         "Free-Form Select", "Magic Wand Select"};
  int y = 0;
  for (const char* n : names) {
    tips += "textrect(5," + std::to_string(y) + ",60,12,'" + std::string(n) + "');";
    y += 20;
  }
  TraceDoc tooltips = parse_trace(tips);
  out.push_back({"CheckToolTips", tooltips, replace_text(tooltips, 11, "Pancil")});

  TraceDoc buttons = parse_trace(
      "textrect(10,50,30,14,'OK'); textrect(60,50,40,14,'CANCEL');");
  out.push_back({"CheckOKCancel", buttons, translate_shape(buttons, 1, -50, 20)});

  TraceDoc rtl = parse_trace(
      "rectangle(0,0,200,100);"
      "textrect(130,10,60,10,'aaaa'); textrect(130,30,60,10,'bbbb');");
  out.push_back({"RightToLeft", rtl, translate_shape(rtl, 2, 10, 0)});

  return out;
}

}  // namespace

TEST(Acceptance, Criterion1_ScrollbarGolden) {
  auto start = std::chrono::steady_clock::now();
  SpecDoc doc = parse_specs(stdlib_sources::kHScrollbar);
  TraceDoc trace = scrollbar_trace();
  FlattenedSpec spec = resolve_spec("HScrollbar", doc, testutil::builtin());
  Verdict verdict = check_spec(spec, trace);
  auto elapsed = std::chrono::steady_clock::now() - start;

  EXPECT_TRUE(verdict.satisfied);
  ASSERT_EQ(verdict.solutions.size(), 1u);
  EXPECT_EQ(tuple_to_string(verdict.solutions.tuples()[0], spec, trace),
            "t1=o6 t2=o5 r1=o2 r2=o4 r3=o3");
  int o1 = testutil::seq_of(trace, "o1");
  for (const CandidateTuple& t : verdict.solutions.tuples())
    for (std::int32_t v : t.values) EXPECT_NE(v, o1);
  EXPECT_LT(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count(), 10);

  report_criterion("1 scrollbar golden check (unique solution, o1 excluded, <10ms)");
}

TEST(Acceptance, Criterion2_IntermediateSteps) {
  FlattenedSpec spec = resolve_builtin("HScrollbar");
  TraceDoc trace = scrollbar_trace();
  Verdict verdict = check_spec(spec, trace);

  int o2 = testutil::seq_of(trace, "o2"), o3 = testutil::seq_of(trace, "o3");
  int o4 = testutil::seq_of(trace, "o4"), o5 = testutil::seq_of(trace, "o5");
  int o6 = testutil::seq_of(trace, "o6");

  auto contains_results = exit_results(verdict.log, "contains");
  ASSERT_EQ(contains_results.size(), 2u);
  EXPECT_EQ(contains_results[0],
            (std::set<std::vector<std::int32_t>>{{o5, -1, o3, -1, -1},
                                                 {o6, -1, o2, -1, -1}}));
  EXPECT_EQ(contains_results[1],
            (std::set<std::vector<std::int32_t>>{{-1, o5, -1, -1, o3},
                                                 {-1, o6, -1, -1, o2}}));

  auto leftto_results = exit_results(verdict.log, "leftto");
  ASSERT_EQ(leftto_results.size(), 2u);
  EXPECT_EQ(leftto_results[0],
            (std::set<std::vector<std::int32_t>>{{o6, -1, o2, o4, -1},
                                                 {o6, -1, o2, o3, -1}}));
  EXPECT_EQ(leftto_results[1],
            (std::set<std::vector<std::int32_t>>{{o6, o5, o2, o4, o3}}));

  report_criterion("2 intermediate steps (contains pairs, leftto tuples)");
}

TEST(Acceptance, Criterion3_CroppedLabelsReproduction) {
  FlattenedSpec spec = resolve_builtin("CroppedLabels");

  Verdict cropped = check_spec(spec, cropped_labels_trace());
  EXPECT_FALSE(cropped.satisfied);
  bool str_eq_zero = false;
  for (const LogEvent& e : cropped.log)
    if (e.scope == "strEq" && e.message == "done matchExecute. found 0 objects")
      str_eq_zero = true;
  EXPECT_TRUE(str_eq_zero);

  Verdict full = check_spec(spec, uncropped_labels_trace());
  EXPECT_TRUE(full.satisfied);

  report_criterion("3 cropped-labels reproduction (violated/satisfied, strEq 0 objects)");
}

TEST(Acceptance, Criterion4_CaseStudySuite) {
  int correct = 0, total = 0;
  for (const CaseStudy& cs : case_studies()) {
    FlattenedSpec spec = resolve_builtin(cs.name);
    bool pass_ok = check_spec(spec, cs.pass).satisfied;
    bool fail_ok = !check_spec(spec, cs.fail).satisfied;
    EXPECT_TRUE(pass_ok) << cs.name << " passing fixture";
    EXPECT_TRUE(fail_ok) << cs.name << " failing fixture";
    correct += pass_ok + fail_ok;
    total += 2;
  }
  EXPECT_EQ(total, 14);
  EXPECT_EQ(correct, 14);

  report_criterion("4 case-study suite (14/14 outcomes)");
}

TEST(Acceptance, Criterion5_DifferentialOracleEquivalence) {
  auto start = std::chrono::steady_clock::now();
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    try {
      testutil::check_diff_instance(seed);
      ++runs;
    } catch (const std::exception& e) {
      ADD_FAILURE() << e.what();
      break;
    }
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
      std::chrono::steady_clock::now() - start);
  EXPECT_EQ(runs, 1000);
  EXPECT_LT(elapsed.count(), 60);

  report_criterion("5 differential oracle equivalence (1000 runs, <60s)");
}

TEST(Acceptance, Criterion6_MergeAlgebra) {
  FlattenedSpec spec = resolve_builtin("HScrollbar");
  TraceDoc trace = scrollbar_trace();
  std::mt19937_64 rng(20250808);
  CandidateTuple universe(5);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    CandidateTuple a = testutil::random_valid_tuple(rng, spec, trace);
    CandidateTuple b = testutil::random_valid_tuple(rng, spec, trace);
    CandidateTuple c = testutil::random_valid_tuple(rng, spec, trace);

    auto ua = merge_tuples(universe, a, spec);
    if (!ua || ua->values != a.values) ++failures;  // identity
    auto aa = merge_tuples(a, a, spec);
    if (!aa || aa->values != a.values) ++failures;  // idempotence

    auto ab = merge_tuples(a, b, spec);
    auto ba = merge_tuples(b, a, spec);
    bool commutative =
        ab.has_value() == ba.has_value() && (!ab || ab->values == ba->values);
    if (!commutative) ++failures;

    std::optional<CandidateTuple> ab_c, a_bc;
    if (ab) ab_c = merge_tuples(*ab, c, spec);
    auto bc = merge_tuples(b, c, spec);
    if (bc) a_bc = merge_tuples(a, *bc, spec);
    bool associative = ab_c.has_value() == a_bc.has_value() &&
                       (!ab_c || ab_c->values == a_bc->values);
    if (!associative) ++failures;

    if (ab) {
      for (std::size_t k = 0; k < 5; ++k) {
        if (a.bound(k) && ab->values[k] != a.values[k]) ++failures;
        if (b.bound(k) && ab->values[k] != b.values[k]) ++failures;
      }
    }
  }
  EXPECT_EQ(failures, 0);

  report_criterion("6 merge algebra (identity/idempotence/commutativity/associativity)");
}

TEST(Acceptance, Criterion7_ComplexityBound) {
  // check_diff_instance asserts step_count <= n * m_max^v per instance and
  // throws otherwise; rerun the full differential corpus counting violations.
  int violations = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    try {
      testutil::check_diff_instance(seed);
    } catch (const std::exception& e) {
      ++violations;
      ADD_FAILURE() << e.what();
      break;
    }
  }
  EXPECT_EQ(violations, 0);

  report_criterion("7 complexity bound (step count <= n*m_max^v on all instances)");
}

TEST(Acceptance, Criterion8_ImpliesEmptyAntecedent) {
  FlattenedSpec spec = resolve_builtin("OrderedTracks");
  TraceDoc trace = parse_trace(
      "textrect(10,10,60,12,'Track1'); textrect(10,30,60,12,'Track3');"
      "textrect(10,50,60,12,'Track11');");
  Verdict verdict = check_spec(spec, trace);
  EXPECT_TRUE(verdict.satisfied);

  report_criterion("8 implies semantics (no Track2/Track10: satisfied via universe)");
}
