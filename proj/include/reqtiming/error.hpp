#pragma once

#include <stdexcept>
#include <string>

namespace reqtiming {

// Bad input data: malformed logs, empty trim windows, missing threads.
// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments or configuration. The CLI maps this to exit code 1.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace reqtiming
