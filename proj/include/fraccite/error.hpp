#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fraccite {

enum class ErrorCode {
  parse,             // malformed input line
  invalid_corpus,    // corpus failed validation
  zero_references,   // citing paper with n_refs = 0
  missing_rate,      // rate table lookup failed
  empty_input,       // empty sample / set where one is required
  length_mismatch,
  nonpositive_value,
  degenerate,        // constant data, zero variance, too few groups
  invalid_argument,
  not_found,
  io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return "parse";
    case ErrorCode::invalid_corpus: return "invalid-corpus";
    case ErrorCode::zero_references: return "zero-references";
    case ErrorCode::missing_rate: return "missing-rate";
    case ErrorCode::empty_input: return "empty-input";
    case ErrorCode::length_mismatch: return "length-mismatch";
    case ErrorCode::nonpositive_value: return "nonpositive-value";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

// Every library failure is reported through this type; `code()` lets callers
// branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& reason)
      : Error(ErrorCode::parse, file + ":" + std::to_string(line) + ": " + reason),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace fraccite
