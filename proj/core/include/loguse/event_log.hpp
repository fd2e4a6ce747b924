#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loguse/event.hpp"
#include "loguse/signal_config.hpp"

namespace loguse {

struct ValidationReport {
  std::size_t total_lines = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  // (1-based line number, reason); capped at LoadOptions::max_recorded_rejections.
  std::vector<std::pair<std::size_t, std::string>> rejections;
  // Action label -> count, for labels outside every configured vocabulary.
  // Only populated when LoadOptions::config is set.
  std::unordered_map<std::string, std::size_t> unknown_actions;
};

// Immutable, session-grouped event store. Events of one session are
// contiguous and sorted by timestamp; ties keep input order. Sessions
// appear in first-occurrence order of their id.
class EventLog {
 public:
  EventLog() = default;

  // Groups and stably sorts a flat event sequence.
  static EventLog from_events(std::vector<Event> events);

  std::size_t session_count() const { return sessions_.size(); }
  std::size_t event_count() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  std::string_view session_id(std::size_t index) const {
    return sessions_[index].id;
  }
  std::span<const Event> session(std::size_t index) const {
    const auto& s = sessions_[index];
    return {events_.data() + s.offset, s.size};
  }
  // All events, grouped by session.
  std::span<const Event> events() const { return events_; }

  // Index of the session with the given id, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find_session(std::string_view id) const;

  void write_jsonl(std::ostream& out) const;

  bool operator==(const EventLog& other) const {
    return events_ == other.events_;
  }

 private:
  struct SessionSlot {
    std::string id;
    std::size_t offset = 0;
    std::size_t size = 0;
  };

  std::vector<Event> events_;
  std::vector<SessionSlot> sessions_;
  std::unordered_map<std::string, std::size_t, ActionHash, std::equal_to<>>
      index_;
};

struct LoadOptions {
  // When set, actions outside the config's vocabularies are tallied in
  // ValidationReport::unknown_actions. Unknown actions are still accepted.
  const SignalConfig* config = nullptr;
  std::size_t max_recorded_rejections = 100;
};

struct LoadResult {
  EventLog log;
  ValidationReport report;
};

// Reads JSONL events from a stream. Bad lines are counted and skipped,
// never fatal. Throws IoError when the stream itself fails mid-read.
LoadResult load_log(std::istream& in, const LoadOptions& options = {});

// Same, from a file. Throws IoError when the file cannot be opened.
LoadResult load_log_file(const std::filesystem::path& path,
                         const LoadOptions& options = {});

}  // namespace loguse
