#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scmlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed grammar, trace, or manifest text. Carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A file that cannot be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A structurally invalid grammar (bad alphabet, undeclared symbol, ...).
class GrammarError : public Error {
 public:
  using Error::Error;
};

/// Input grammar does not have the normal form a transformer requires.
class KindMismatch : public Error {
 public:
  using Error::Error;
};

/// A derivation trace that does not replay.
class TraceError : public Error {
 public:
  TraceError(std::size_t step, const std::string& what)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace scmlab
