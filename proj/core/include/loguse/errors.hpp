#pragma once

#include <stdexcept>
#include <string>

namespace loguse {

// Invalid signal vocabularies, generator parameters or flag combinations.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A metric evaluated over an empty denominator (no processes, no windows)
// or a degenerate contingency table.
class UndefinedMetricError : public std::runtime_error {
 public:
  explicit UndefinedMetricError(const std::string& what)
      : std::runtime_error(what) {}
};

// Unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace loguse
