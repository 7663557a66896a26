#pragma once

#include <stdexcept>
#include <string>

namespace aescap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad invocation (unknown flag, missing argument). CLI exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data. CLI exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage failed; carries the stage name so the CLI can report
// which step halted the run.
class StageError : public DataError {
 public:
  StageError(std::string stage, const std::string& cause)
      : DataError("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace aescap
