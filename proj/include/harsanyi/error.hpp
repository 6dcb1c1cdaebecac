#pragma once

#include <stdexcept>
#include <string>

namespace harsanyi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument (shape, range, finiteness) was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A file could not be parsed: bad magic, version, length or schema.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A file's content hash disagrees with the manifest that lists it.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// The command line was malformed or a required input is missing.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace harsanyi
