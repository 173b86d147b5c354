#pragma once

#include <stdexcept>
#include <string>

namespace evinet {

// Malformed or unusable input (files, records, CLI values). The CLI maps
// this to exit code 2; everything else thrown during an analysis stage
// maps to exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure inside a named pipeline stage.
class StageError : public std::runtime_error {
 public:
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error("stage '" + stage + "': " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace evinet
