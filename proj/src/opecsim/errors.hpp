#pragma once

#include <stdexcept>
#include <string>

namespace opecsim {

// Failure while ingesting a scenario file or emitting results. The kind
// separates unreadable files, malformed syntax and well-formed input that
// violates a model invariant; messages carry file:line where available.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind { Io, Syntax, Invariant };

  ConfigError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace opecsim
