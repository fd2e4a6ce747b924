#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace loguse {

// Provenance record embedded as a trailing comment in every report so a
// result can be traced back to its exact inputs.
struct RunManifest {
  std::string command;
  std::string version;
  // (name, value) pairs, rendered in insertion order.
  std::vector<std::pair<std::string, std::string>> fields;

  void add(std::string name, std::string value) {
    fields.emplace_back(std::move(name), std::move(value));
  }

  // Single line: "# loguse <command> version=... key=value ..."
  std::string comment_line() const;
};

// FNV-1a 64-bit digest of the file content, "fnv1a64:<16 hex digits>".
// Throws IoError when the file cannot be read.
std::string file_digest(const std::filesystem::path& path);

}  // namespace loguse
