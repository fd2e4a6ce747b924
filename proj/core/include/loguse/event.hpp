#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace loguse {

// One logged interaction. Field names map to the JSONL keys
// sid, ts, action, rid, rank, q.
struct Event {
  std::string session_id;
  std::int64_t timestamp = 0;  // epoch milliseconds
  std::string action;
  std::optional<std::string> record_id;
  std::optional<int> rank;  // 1-based result-list position; requires record_id
  std::optional<std::string> query;

  bool operator==(const Event&) const = default;
};

// Parses one JSONL event line. Returns nullopt on a malformed line and,
// when `error` is non-null, stores the rejection reason.
std::optional<Event> parse_event(std::string_view line,
                                 std::string* error = nullptr);

// Single-line JSON form accepted back by parse_event.
std::string to_jsonl_line(const Event& event);

}  // namespace loguse
