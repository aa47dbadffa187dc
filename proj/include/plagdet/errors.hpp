#pragma once

#include <stdexcept>
#include <string>

namespace plagdet {

// Malformed input data: corpus records, reports, index files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or configuration.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An external scoring service failed. Never a semantic rejection.
class ServiceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace plagdet
