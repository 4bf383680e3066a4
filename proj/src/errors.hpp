#pragma once

#include <stdexcept>
#include <string>

namespace toda {

// Exit-code vocabulary shared by the C API and the CLI.
enum class Status : int {
  Ok = 0,
  ConfigError = 2,
  NumericalError = 3,
  InvariantError = 4,
};

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& msg)
      : std::runtime_error(msg), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

// Bad user input: unsupported algebra, malformed config, non-regular Lambda.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(Status::ConfigError, msg) {}
};

// Numerics gave up: stiff step underflow, unclassifiable limits, budgets.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(Status::NumericalError, msg) {}
};

// A structural claim the code is built around failed to hold.
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& msg) : Error(Status::InvariantError, msg) {}
};

}  // namespace toda
