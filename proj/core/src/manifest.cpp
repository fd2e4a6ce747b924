#include "loguse/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "loguse/errors.hpp"

namespace loguse {

std::string RunManifest::comment_line() const {
  std::string line = "# loguse " + command;
  if (!version.empty()) line += " version=" + version;
  for (const auto& [name, value] : fields) {
    line += ' ' + name + '=' + value;
  }
  return line;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for digest: " + path.string());

  std::uint64_t hash = 0xcbf29ce484222325ULL;  // FNV-1a offset basis
  char buffer[1 << 16];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    const auto n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;  // FNV prime
    }
    if (!in) break;
  }
  if (in.bad()) throw IoError("read failed while digesting: " + path.string());

  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + hex;
}

}  // namespace loguse
