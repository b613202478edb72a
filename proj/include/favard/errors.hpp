#pragma once

#include <stdexcept>
#include <string>

namespace favard {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user-supplied data: malformed numbers, lo > hi, unknown preset names.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold (e.g. certificate on an IFS
/// whose ratios do not sum to one).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Merged interval count exceeded the configured resource cap.
class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace favard
