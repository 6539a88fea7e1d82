#ifndef POCHETTE_ERRORS_HPP
#define POCHETTE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pochette {

/// Base class of every error raised by the library. All of them are input
/// errors: a caller handed us something outside an operation's contract.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
  UnknownGenerator,
  MalformedFactor,
  ZeroExponent,
  MissingSection,
  InvalidGeneratorName,
  DuplicateGenerator,
  MalformedLine,
};

inline const char *to_string(ParseErrorKind kind) {
  switch (kind) {
  case ParseErrorKind::UnknownGenerator: return "UnknownGenerator";
  case ParseErrorKind::MalformedFactor: return "MalformedFactor";
  case ParseErrorKind::ZeroExponent: return "ZeroExponent";
  case ParseErrorKind::MissingSection: return "MissingSection";
  case ParseErrorKind::InvalidGeneratorName: return "InvalidGeneratorName";
  case ParseErrorKind::DuplicateGenerator: return "DuplicateGenerator";
  case ParseErrorKind::MalformedLine: return "MalformedLine";
  }
  return "ParseError";
}

/// Text-format error. `line` is 1-based and 0 when the input was a single
/// word rather than a file; `column` is the 1-based character offset.
class ParseError : public Error {
public:
  ParseError(ParseErrorKind kind, std::string detail, std::size_t line,
             std::size_t column)
      : Error(format(kind, detail, line, column)), kind_(kind),
        detail_(std::move(detail)), line_(line), column_(column) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  const std::string &detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  /// Same error relocated into a file: word-level offsets become columns of
  /// `line`, shifted by where the word started on that line.
  ParseError at_line(std::size_t line, std::size_t column_offset) const {
    return ParseError(kind_, detail_, line, column_ + column_offset);
  }

private:
  static std::string format(ParseErrorKind kind, const std::string &detail,
                            std::size_t line, std::size_t column) {
    std::string out = to_string(kind);
    if (line > 0)
      out += " at line " + std::to_string(line) + ", column " +
             std::to_string(column);
    else
      out += " at position " + std::to_string(column);
    if (!detail.empty())
      out += ": " + detail;
    return out;
  }

  ParseErrorKind kind_;
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

class AlphabetMismatch : public Error {
public:
  using Error::Error;
};

class MissingImage : public Error {
public:
  using Error::Error;
};

/// Integer arithmetic left the configured magnitude bound.
class OverflowGuard : public Error {
public:
  using Error::Error;
};

class NotCoprime : public Error {
public:
  using Error::Error;
};

class InvalidSlope : public Error {
public:
  using Error::Error;
};

class UndefinedForSlopeZero : public Error {
public:
  using Error::Error;
};

class MeridianNotGenerator : public Error {
public:
  using Error::Error;
};

class NotKnotGroup : public Error {
public:
  using Error::Error;
};

class InvalidFusionGraph : public Error {
public:
  using Error::Error;
};

} // namespace pochette

#endif
