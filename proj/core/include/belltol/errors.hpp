#pragma once

#include <stdexcept>
#include <string>

namespace belltol {

// Malformed input: non-Hermitian matrices, invalid POVMs, shape mismatches.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter outside the domain of a formula or constructor.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Dimension, enumeration or LP size cap exceeded.
class ResourceLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Functional outside the class an algorithm supports (seesaw needs
// dichotomic correlation tables).
class UnsupportedFunctionalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace belltol
