#pragma once

#include <stdexcept>
#include <string>

namespace cev {

enum class errc {
  domain = 1,             // argument outside its mathematical domain, or a type invariant broken
  degenerate = 2,         // constant / zero-variance sample, estimation cannot proceed
  all_censored = 3,       // no uncensored observation anchors the likelihood
  insufficient_data = 4,  // fewer observations than the operation requires
  parse = 5,              // malformed input document
  config = 6,             // inconsistent request (size mismatch, unknown format, ...)
  io = 7,                 // file could not be read or written
};

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace cev
