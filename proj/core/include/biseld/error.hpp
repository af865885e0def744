#pragma once

#include <stdexcept>
#include <string>

namespace biseld {

// Computation on otherwise well-formed input failed or a precondition
// was violated. The CLI reports these with exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing files, unreadable or malformed inputs. The CLI reports these
// with exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace biseld
