#include "guicheck/trace.hpp"

#include <gtest/gtest.h>

#include <random>

#include "guicheck/generate.hpp"
#include "test_util.hpp"

using namespace guicheck;

TEST(ParseTrace, TwoStatements) {
  TraceDoc doc = parse_trace("rectangle(10, 15, 10, 20); line(2, 5, 8, 12);");
  ASSERT_EQ(doc.shapes.size(), 2u);
  EXPECT_EQ(doc.shapes[0].kind, ShapeKind::Rectangle);
  EXPECT_EQ(doc.shapes[0].seq, 0);
  EXPECT_EQ(doc.shapes[0].coords, (std::vector<std::int64_t>{10, 15, 10, 20}));
  EXPECT_EQ(doc.shapes[1].kind, ShapeKind::Line);
  EXPECT_EQ(doc.shapes[1].seq, 1);
}

TEST(ParseTrace, Empty) {
  EXPECT_EQ(parse_trace("").shapes.size(), 0u);
  EXPECT_EQ(parse_trace("  \n // just a comment\n").shapes.size(), 0u);
}

TEST(ParseTrace, LabeledTriangle) {
  TraceDoc doc = parse_trace("o5: triangle(88,15,80,18,80,12);");
  ASSERT_EQ(doc.shapes.size(), 1u);
  EXPECT_EQ(doc.shapes[0].label, "o5");
  EXPECT_EQ(doc.shapes[0].coords, (std::vector<std::int64_t>{88, 15, 80, 18, 80, 12}));
}

TEST(ParseTrace, CommentsWhitespaceAndCrlf) {
  TraceDoc doc = parse_trace(
      "// header comment\r\n"
      "o1 : rectangle ( 10 , 30, 10, 60 ) ; // trailing\r\n"
      "textrect(1,1,100,100,'Coo...');\r\n");
  ASSERT_EQ(doc.shapes.size(), 2u);
  EXPECT_EQ(doc.shapes[0].label, "o1");
  EXPECT_EQ(doc.shapes[1].text, "Coo...");
  EXPECT_FALSE(doc.shapes[1].label.has_value());
}

TEST(ParseTrace, TextAndTextrectStrings) {
  TraceDoc doc = parse_trace("text(5, 7, 'hi'); textrect(1, 2, 3, 4, 'a b, c');");
  EXPECT_EQ(doc.shapes[0].text, "hi");
  EXPECT_EQ(doc.shapes[1].text, "a b, c");
}

TEST(ParseTrace, PolygonArity) {
  TraceDoc doc = parse_trace("polygon(0,0, 10,0, 10,10, 0,10);");
  EXPECT_EQ(doc.shapes[0].coords.size(), 8u);
  EXPECT_THROW(parse_trace("polygon(0,0, 10,0);"), ParseError);
  EXPECT_THROW(parse_trace("polygon(0,0, 10,0, 10,10, 5);"), ParseError);
}

TEST(ParseTrace, Errors) {
  EXPECT_THROW(parse_trace("rectangle(1, 2, 3);"), ParseError);          // arity
  EXPECT_THROW(parse_trace("rectangle(1, 2, 3, 4, 5);"), ParseError);    // arity
  EXPECT_THROW(parse_trace("circle(1, 2, 3, 4);"), ParseError);          // kind
  EXPECT_THROW(parse_trace("rectangle(a, 2, 3, 4);"), ParseError);       // non-integer
  EXPECT_THROW(parse_trace("rectangle(1, 2, 3, 4)"), ParseError);        // missing ';'
  EXPECT_THROW(parse_trace("text(1, 2, 'abc);"), ParseError);            // unterminated
  EXPECT_THROW(parse_trace("text(1, 2);"), ParseError);                  // missing string
  EXPECT_THROW(parse_trace("line(1, 2, 3, 4, 'x');"), ParseError);       // stray string
  EXPECT_THROW(parse_trace("rectangle(1, 2, -3, 4);"), ParseError);      // negative extent
  EXPECT_THROW(parse_trace("ellipse(1, 2, 3, -4);"), ParseError);        // negative extent
  EXPECT_THROW(parse_trace("rectangle(1, 2, 3, 99999999999);"), ParseError);  // range
}

TEST(ParseTrace, ErrorPositions) {
  try {
    parse_trace("line(0, 0, 1, 1);\n\n  rectangle(1, 2, 3;\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.loc().line, 3);
    EXPECT_GT(e.loc().column, 1);
  }
}

TEST(ParseTrace, NegativeCoordinatesAllowed) {
  TraceDoc doc = parse_trace("line(-5, -3, 4, 2); rectangle(-10, -20, 5, 5);");
  EXPECT_EQ(doc.shapes[0].coords[0], -5);
  EXPECT_EQ(doc.shapes[1].coords[1], -20);
}

TEST(BoundingBox, PerKind) {
  TraceDoc doc = parse_trace(
      "rectangle(80, 10, 10, 10);"
      "triangle(88, 15, 80, 18, 80, 12);"
      "text(5, 7, 'hi');"
      "line(9, 4, 2, 11);"
      "ellipse(1, 2, 8, 6);"
      "polygon(0, 5, 10, 0, 20, 5, 10, 9);"
      "textrect(1, 1, 100, 100, 'Coo...');");
  EXPECT_EQ(bounding_box(doc.shapes[0]), (Rect{80, 10, 90, 20}));
  EXPECT_EQ(bounding_box(doc.shapes[1]), (Rect{80, 12, 88, 18}));
  EXPECT_EQ(bounding_box(doc.shapes[2]), (Rect{5, 7, 5, 7}));
  EXPECT_EQ(bounding_box(doc.shapes[3]), (Rect{2, 4, 9, 11}));
  EXPECT_EQ(bounding_box(doc.shapes[4]), (Rect{1, 2, 9, 8}));
  EXPECT_EQ(bounding_box(doc.shapes[5]), (Rect{0, 0, 20, 9}));
  EXPECT_EQ(bounding_box(doc.shapes[6]), (Rect{1, 1, 101, 101}));
}

TEST(ShapeProperty, BoundingBoxProperties) {
  Shape r = parse_trace("rectangle(10, 30, 10, 60);").shapes[0];
  EXPECT_EQ(shape_property(r, "width"), PropertyValue{std::int64_t{10}});
  EXPECT_EQ(shape_property(r, "WIDTH"), PropertyValue{std::int64_t{10}});
  EXPECT_EQ(shape_property(r, "Width"), PropertyValue{std::int64_t{10}});
  EXPECT_EQ(shape_property(r, "x"), PropertyValue{std::int64_t{10}});
  EXPECT_EQ(shape_property(r, "y"), PropertyValue{std::int64_t{30}});
  EXPECT_EQ(shape_property(r, "height"), PropertyValue{std::int64_t{60}});
}

TEST(ShapeProperty, LineEndpoints) {
  Shape ln = parse_trace("line(2, 5, 8, 12);").shapes[0];
  EXPECT_EQ(shape_property(ln, "x1"), PropertyValue{std::int64_t{2}});
  EXPECT_EQ(shape_property(ln, "y1"), PropertyValue{std::int64_t{5}});
  EXPECT_EQ(shape_property(ln, "x2"), PropertyValue{std::int64_t{8}});
  EXPECT_EQ(shape_property(ln, "y2"), PropertyValue{std::int64_t{12}});
  EXPECT_EQ(shape_property(ln, "width"), PropertyValue{std::int64_t{6}});
}

TEST(ShapeProperty, Text) {
  Shape t = parse_trace("textrect(1, 1, 100, 100, 'Coo...');").shapes[0];
  EXPECT_EQ(shape_property(t, "text"), PropertyValue{std::string("Coo...")});
}

TEST(ShapeProperty, UnknownPropertyThrows) {
  Shape r = parse_trace("rectangle(1, 2, 3, 4);").shapes[0];
  try {
    shape_property(r, "text");
    FAIL() << "expected EvalError";
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalError::Kind::UnknownShapeProperty);
  }
  EXPECT_THROW(shape_property(r, "x1"), EvalError);
}

TEST(TraceInvariants, BoxesOrderedAndExtentExact) {
  TraceGenParams params;
  params.counts = {{ShapeKind::Rectangle, 3}, {ShapeKind::Line, 3},
                   {ShapeKind::Ellipse, 3},   {ShapeKind::Triangle, 3},
                   {ShapeKind::Polygon, 2},   {ShapeKind::Text, 2},
                   {ShapeKind::Textrect, 3}};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    TraceDoc doc = random_trace(seed, params);
    for (const Shape& s : doc.shapes) {
      Rect box = bounding_box(s);
      EXPECT_LE(box.left, box.right);
      EXPECT_LE(box.top, box.bottom);
      if (s.kind == ShapeKind::Rectangle || s.kind == ShapeKind::Ellipse ||
          s.kind == ShapeKind::Textrect) {
        EXPECT_EQ(s.coords[0] + s.coords[2], box.right);
        EXPECT_EQ(s.coords[1] + s.coords[3], box.bottom);
      }
    }
  }
}

TEST(TraceInvariants, SeqDenseAndMonotone) {
  TraceDoc doc = testutil::scrollbar_trace();
  for (std::size_t i = 0; i < doc.shapes.size(); ++i)
    EXPECT_EQ(doc.shapes[i].seq, static_cast<int>(i));
}

TEST(TraceInvariants, WriteParseRoundTrip) {
  TraceGenParams params;
  params.counts = {{ShapeKind::Rectangle, 2}, {ShapeKind::Line, 2},
                   {ShapeKind::Triangle, 2},  {ShapeKind::Textrect, 2},
                   {ShapeKind::Polygon, 1},   {ShapeKind::Text, 1},
                   {ShapeKind::Ellipse, 1}};
  params.coord_min = -30;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    TraceDoc doc = random_trace(seed, params);
    // labels on every other shape
    for (std::size_t i = 0; i < doc.shapes.size(); i += 2)
      doc.shapes[i].label = "s" + std::to_string(i);
    TraceDoc again = parse_trace(write_trace(doc));
    ASSERT_EQ(again.shapes.size(), doc.shapes.size());
    for (std::size_t i = 0; i < doc.shapes.size(); ++i) {
      EXPECT_EQ(again.shapes[i].kind, doc.shapes[i].kind);
      EXPECT_EQ(again.shapes[i].coords, doc.shapes[i].coords);
      EXPECT_EQ(again.shapes[i].text, doc.shapes[i].text);
      EXPECT_EQ(again.shapes[i].label, doc.shapes[i].label);
      EXPECT_EQ(again.shapes[i].seq, doc.shapes[i].seq);
    }
  }
}

TEST(ParseTrace, MalformedInputAlwaysRaisesParseError) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "rectangle(),;:'0123456789 abc\n\t-/";
  for (int round = 0; round < 500; ++round) {
    std::string input;
    std::size_t len = rng() % 60;
    for (std::size_t i = 0; i < len; ++i) input.push_back(alphabet[rng() % alphabet.size()]);
    try {
      parse_trace(input);
    } catch (const ParseError&) {
      // fine: rejected with a diagnostic
    }
  }
}

TEST(DisplayLabel, LabelOrSeq) {
  TraceDoc doc = parse_trace("o9: rectangle(0,0,1,1); rectangle(0,0,1,1);");
  EXPECT_EQ(doc.shapes[0].display_label(), "o9");
  EXPECT_EQ(doc.shapes[1].display_label(), "#1");
}
