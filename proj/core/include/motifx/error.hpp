#pragma once

#include <stdexcept>
#include <string>

namespace motifx {

// Each subclass maps to one CLI exit-code class.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable input files.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Inputs that parse but violate an invariant or a precondition
// (self-loops, asymmetric undirected matrices, arity or directedness
// mismatches, probabilities outside [0,1]).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Work that would exceed a configured enumeration bound.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace motifx
