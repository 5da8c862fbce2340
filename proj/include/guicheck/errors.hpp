#pragma once

#include <stdexcept>
#include <string>

namespace guicheck {

// 1-based position inside a source buffer.
struct SourceLoc {
  int line = 0;
  int column = 0;
};

inline std::string to_string(const SourceLoc& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

// Malformed .gspec / .gtrace input.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, DuplicateSpec, DuplicateVariable, DuplicateProperty };

  ParseError(Kind kind, const std::string& message, SourceLoc loc)
      : std::runtime_error(to_string(loc) + ": " + message), kind_(kind), loc_(loc) {}

  Kind kind() const { return kind_; }
  SourceLoc loc() const { return loc_; }

 private:
  Kind kind_;
  SourceLoc loc_;
};

// Name or type errors while flattening a specification.
class ResolveError : public std::runtime_error {
 public:
  enum class Kind { UnknownType, CyclicType, UnknownVariable, UnknownProperty, UnknownSpec };

  ResolveError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Errors raised while evaluating a constraint tree or property expression.
class EvalError : public std::runtime_error {
 public:
  enum class Kind {
    TypeMismatch,
    BudgetExceeded,
    UnknownShapeProperty,
    UnboundSlot,
    DivisionByZero
  };

  EvalError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Errors raised while loading specification libraries from disk.
class LoadError : public std::runtime_error {
 public:
  enum class Kind { Io, DuplicateName, BuiltinOverride, Parse };

  LoadError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace guicheck
