#pragma once

#include <stdexcept>
#include <string>

namespace pythreg {

// Violated precondition or malformed input.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well formed but names something this library does not build
// (for instance a Dirichlet character of composite modulus by index).
class Unsupported : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// The request would overflow 64-bit arithmetic or exceed a memory cap.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pythreg
