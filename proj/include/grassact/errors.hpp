#pragma once

#include <stdexcept>
#include <string>

namespace grassact {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (class expressions, words, letters, group specs).
/// Messages include the offending token and, where available, its position.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Structurally well-formed input that violates a constraint of the
/// requested context (index out of range, wrong rank, bad degree).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Input that parses and validates but cannot be acted on: a substitution
/// that is not an automorphism, mismatched contexts, or a computation
/// whose size exceeds a hard limit.
class SemanticError : public Error {
 public:
  explicit SemanticError(const std::string& what) : Error(what) {}
};

}  // namespace grassact
