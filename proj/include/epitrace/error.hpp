#pragma once

#include <stdexcept>
#include <string>

namespace epitrace {

/// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The caller handed us data that violates a documented contract
/// (malformed file, misaligned corpora, unlabeled sentences...).
/// The CLI maps this family to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace epitrace
