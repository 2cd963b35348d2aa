#pragma once

#include <stdexcept>
#include <string>

namespace mifkit {

enum class ErrorKind {
  Parse,     // malformed input text / files
  Domain,    // precondition or invariant violated by the caller
  Budget,    // cap, window or retry budget exhausted
  Internal,  // contract the library itself guarantees was broken
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_parse(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }
[[noreturn]] inline void fail_domain(const std::string& msg) { throw Error(ErrorKind::Domain, msg); }
[[noreturn]] inline void fail_budget(const std::string& msg) { throw Error(ErrorKind::Budget, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(ErrorKind::Internal, msg); }

}  // namespace mifkit
