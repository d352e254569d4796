#pragma once

#include <stdexcept>
#include <string>

namespace subdyn {

enum class ErrorKind {
  argument,      // caller passed a value outside the operation's domain
  parse,         // malformed text input
  precondition,  // structural hypothesis not met (non-prolongable seed, eigenvalue mismatch, ...)
  unsupported,   // input outside what the library handles (non-primitive language, ...)
  domain,        // window missing from a table
  coverage,      // empirical construction did not see enough of the language
  budget,        // search or iteration budget exhausted
  undecided,     // exact test could not decide at the requested resolution
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace subdyn
