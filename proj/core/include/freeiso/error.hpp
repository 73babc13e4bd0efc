#pragma once

#include <stdexcept>
#include <string>

namespace freeiso {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A word, image tuple or relator refers to a generator outside its alphabet.
class RankMismatch : public Error {
 public:
  using Error::Error;
};

// A caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace freeiso
