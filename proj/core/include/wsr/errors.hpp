#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsr {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A resolution was requested on a literal that is not a valid pivot.
class PivotError : public Error {
public:
  using Error::Error;
};

// A model was queried on a variable outside its universe.
class UniverseError : public Error {
public:
  using Error::Error;
};

// Brute-force enumeration would exceed the configured variable cap.
class OracleCapError : public Error {
public:
  using Error::Error;
};

// Malformed input text. Carries the 1-based line number of the offending token.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Proof-level misuse, e.g. translating a proof without retained certificates.
class ProofError : public Error {
public:
  using Error::Error;
};

} // namespace wsr
