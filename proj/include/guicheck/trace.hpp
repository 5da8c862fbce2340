#pragma once

// Rendered-shape traces: the ordered list of primitive draw statements a GUI
// run produced, plus the geometry queries the solver needs.

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "guicheck/errors.hpp"

namespace guicheck {

enum class ShapeKind { Rectangle, Line, Ellipse, Polygon, Triangle, Text, Textrect };

inline constexpr std::array<ShapeKind, 7> kAllShapeKinds = {
    ShapeKind::Rectangle, ShapeKind::Line,     ShapeKind::Ellipse, ShapeKind::Polygon,
    ShapeKind::Triangle,  ShapeKind::Text,     ShapeKind::Textrect};

inline const char* shape_kind_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::Rectangle: return "rectangle";
    case ShapeKind::Line: return "line";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::Polygon: return "polygon";
    case ShapeKind::Triangle: return "triangle";
    case ShapeKind::Text: return "text";
    case ShapeKind::Textrect: return "textrect";
  }
  return "?";
}

// Capitalized form used by variable declarations in the spec language.
inline const char* shape_kind_type_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::Rectangle: return "Rectangle";
    case ShapeKind::Line: return "Line";
    case ShapeKind::Ellipse: return "Ellipse";
    case ShapeKind::Polygon: return "Polygon";
    case ShapeKind::Triangle: return "Triangle";
    case ShapeKind::Text: return "Text";
    case ShapeKind::Textrect: return "Textrect";
  }
  return "?";
}

inline std::optional<ShapeKind> shape_kind_from_trace_word(std::string_view s) {
  for (ShapeKind k : kAllShapeKinds)
    if (s == shape_kind_name(k)) return k;
  return std::nullopt;
}

inline std::optional<ShapeKind> shape_kind_from_type_name(std::string_view s) {
  for (ShapeKind k : kAllShapeKinds)
    if (s == shape_kind_type_name(k)) return k;
  return std::nullopt;
}

// Number of integer coordinates a statement of the given kind carries.
// Polygon is variadic (even, >= 6) and reported as -1.
inline int shape_kind_arity(ShapeKind k) {
  switch (k) {
    case ShapeKind::Rectangle:
    case ShapeKind::Line:
    case ShapeKind::Ellipse:
    case ShapeKind::Textrect: return 4;
    case ShapeKind::Triangle: return 6;
    case ShapeKind::Text: return 2;
    case ShapeKind::Polygon: return -1;
  }
  return -1;
}

inline bool shape_kind_has_text(ShapeKind k) {
  return k == ShapeKind::Text || k == ShapeKind::Textrect;
}

// One rendered primitive. Coordinates are pixels in screen space: y grows
// downward. `seq` is the zero-based position in the trace file.
struct Shape {
  ShapeKind kind = ShapeKind::Rectangle;
  std::vector<std::int64_t> coords;
  std::optional<std::string> text;
  int seq = 0;
  std::optional<std::string> label;

  // Label from the trace when present, "#seq" otherwise.
  std::string display_label() const {
    return label ? *label : "#" + std::to_string(seq);
  }
};

// Axis-aligned bounding box; top < bottom means top is visually higher.
struct Rect {
  std::int64_t left = 0;
  std::int64_t top = 0;
  std::int64_t right = 0;
  std::int64_t bottom = 0;

  std::int64_t width() const { return right - left; }
  std::int64_t height() const { return bottom - top; }
  std::int64_t area() const { return width() * height(); }

  friend bool operator==(const Rect&, const Rect&) = default;
};

inline Rect rect_union(const Rect& a, const Rect& b) {
  return Rect{std::min(a.left, b.left), std::min(a.top, b.top), std::max(a.right, b.right),
              std::max(a.bottom, b.bottom)};
}

struct TraceDoc {
  std::vector<Shape> shapes;
};

inline Rect bounding_box(const Shape& s) {
  switch (s.kind) {
    case ShapeKind::Rectangle:
    case ShapeKind::Ellipse:
    case ShapeKind::Textrect:
      return Rect{s.coords[0], s.coords[1], s.coords[0] + s.coords[2], s.coords[1] + s.coords[3]};
    case ShapeKind::Text:
      return Rect{s.coords[0], s.coords[1], s.coords[0], s.coords[1]};
    case ShapeKind::Line:
    case ShapeKind::Triangle:
    case ShapeKind::Polygon: {
      Rect r{s.coords[0], s.coords[1], s.coords[0], s.coords[1]};
      for (std::size_t i = 2; i + 1 < s.coords.size(); i += 2) {
        r.left = std::min(r.left, s.coords[i]);
        r.right = std::max(r.right, s.coords[i]);
        r.top = std::min(r.top, s.coords[i + 1]);
        r.bottom = std::max(r.bottom, s.coords[i + 1]);
      }
      return r;
    }
  }
  return Rect{};
}

using PropertyValue = std::variant<std::int64_t, std::string>;

// True when `name` is a valid property for the kind. x/y/width/height are
// case-insensitive; line endpoints and text are lowercase identifiers.
inline bool shape_has_property(ShapeKind kind, std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "x" || lower == "y" || lower == "width" || lower == "height") return true;
  if (kind == ShapeKind::Line)
    return name == "x1" || name == "y1" || name == "x2" || name == "y2";
  if (shape_kind_has_text(kind)) return name == "text";
  return false;
}

inline PropertyValue shape_property(const Shape& s, std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  Rect box = bounding_box(s);
  if (lower == "x") return box.left;
  if (lower == "y") return box.top;
  if (lower == "width") return box.width();
  if (lower == "height") return box.height();
  if (s.kind == ShapeKind::Line) {
    if (name == "x1") return s.coords[0];
    if (name == "y1") return s.coords[1];
    if (name == "x2") return s.coords[2];
    if (name == "y2") return s.coords[3];
  }
  if (shape_kind_has_text(s.kind) && name == "text") return *s.text;
  throw EvalError(EvalError::Kind::UnknownShapeProperty,
                  std::string(shape_kind_name(s.kind)) + " has no property '" +
                      std::string(name) + "'");
}

namespace detail {

class TraceLexer {
 public:
  explicit TraceLexer(std::string_view text) : text_(text) {}

  void skip_space_and_comments() {
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

  bool eof() {
    skip_space_and_comments();
    return pos_ >= text_.size();
  }

  SourceLoc loc() const { return SourceLoc{line_, col_}; }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c, const char* what) {
    skip_space_and_comments();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(ParseError::Kind::Syntax,
                       std::string("expected '") + c + "' " + what, loc());
    advance();
  }

  bool accept(char c) {
    skip_space_and_comments();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_space_and_comments();
    SourceLoc at = loc();
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                  text_[pos_] == '_'))
      throw ParseError(ParseError::Kind::Syntax, "expected identifier", at);
    std::string out;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_')) {
      out.push_back(text_[pos_]);
      advance();
    }
    return out;
  }

  std::int64_t integer() {
    skip_space_and_comments();
    SourceLoc at = loc();
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      advance();
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError(ParseError::Kind::Syntax, "expected integer", at);
    std::int64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 2147483647LL)
        throw ParseError(ParseError::Kind::Syntax, "coordinate out of range", at);
      advance();
    }
    return neg ? -value : value;
  }

  // Single-quoted, no escapes, no embedded quote, must close on the same line.
  std::string string_literal() {
    skip_space_and_comments();
    SourceLoc at = loc();
    if (pos_ >= text_.size() || text_[pos_] != '\'')
      throw ParseError(ParseError::Kind::Syntax, "expected string literal", at);
    advance();
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '\'' && text_[pos_] != '\n') {
      out.push_back(text_[pos_]);
      advance();
    }
    if (pos_ >= text_.size() || text_[pos_] != '\'')
      throw ParseError(ParseError::Kind::Syntax, "unterminated string literal", at);
    advance();
    return out;
  }

 private:
  void advance() {
    ++pos_;
    ++col_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace detail

// Parses the trace format:
//   stmt := [IDENT ":"] KIND "(" INT ("," INT)* ["," STRING] ")" ";"
// with "//" line comments and free whitespace between tokens.
inline TraceDoc parse_trace(std::string_view text) {
  detail::TraceLexer lex(text);
  TraceDoc doc;
  while (!lex.eof()) {
    SourceLoc stmt_at = lex.loc();
    std::string word = lex.ident();
    std::optional<std::string> label;
    if (lex.accept(':')) {
      label = word;
      stmt_at = lex.loc();
      word = lex.ident();
    }
    auto kind = shape_kind_from_trace_word(word);
    if (!kind)
      throw ParseError(ParseError::Kind::Syntax, "unknown shape kind '" + word + "'", stmt_at);

    Shape shape;
    shape.kind = *kind;
    shape.label = std::move(label);
    shape.seq = static_cast<int>(doc.shapes.size());

    lex.expect('(', "after shape kind");
    shape.coords.push_back(lex.integer());
    bool saw_text = false;
    while (lex.accept(',')) {
      lex.skip_space_and_comments();
      if (lex.peek() == '\'') {
        shape.text = lex.string_literal();
        saw_text = true;
        break;
      }
      shape.coords.push_back(lex.integer());
    }
    lex.expect(')', "after arguments");
    lex.expect(';', "after statement");

    int arity = shape_kind_arity(shape.kind);
    bool arity_ok =
        arity >= 0 ? static_cast<int>(shape.coords.size()) == arity
                   : (shape.coords.size() >= 6 && shape.coords.size() % 2 == 0);
    if (!arity_ok)
      throw ParseError(ParseError::Kind::Syntax,
                       std::string("wrong number of coordinates for ") +
                           shape_kind_name(shape.kind),
                       stmt_at);
    if (shape_kind_has_text(shape.kind) != saw_text)
      throw ParseError(ParseError::Kind::Syntax,
                       saw_text ? std::string("unexpected string argument for ") +
                                      shape_kind_name(shape.kind)
                                : std::string("missing string argument for ") +
                                      shape_kind_name(shape.kind),
                       stmt_at);
    if (shape.kind == ShapeKind::Rectangle || shape.kind == ShapeKind::Ellipse ||
        shape.kind == ShapeKind::Textrect) {
      if (shape.coords[2] < 0 || shape.coords[3] < 0)
        throw ParseError(ParseError::Kind::Syntax,
                         std::string("negative extent for ") + shape_kind_name(shape.kind),
                         stmt_at);
    }
    doc.shapes.push_back(std::move(shape));
  }
  return doc;
}

inline std::string write_trace(const TraceDoc& doc) {
  std::ostringstream out;
  for (const Shape& s : doc.shapes) {
    if (s.label) out << *s.label << ": ";
    out << shape_kind_name(s.kind) << "(";
    for (std::size_t i = 0; i < s.coords.size(); ++i) {
      if (i) out << ", ";
      out << s.coords[i];
    }
    if (s.text) out << ", '" << *s.text << "'";
    out << ");\n";
  }
  return out.str();
}

}  // namespace guicheck
