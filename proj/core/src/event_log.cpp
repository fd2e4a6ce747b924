#include "loguse/event_log.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "loguse/errors.hpp"

namespace loguse {

EventLog EventLog::from_events(std::vector<Event> events) {
  EventLog log;
  log.index_.reserve(events.size() / 4 + 1);

  // First pass: session slot per first appearance, per-session sizes.
  std::vector<std::size_t> slot_of(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    auto [it, inserted] =
        log.index_.try_emplace(events[i].session_id, log.sessions_.size());
    if (inserted) {
      log.sessions_.push_back({events[i].session_id, 0, 0});
    }
    slot_of[i] = it->second;
    ++log.sessions_[it->second].size;
  }

  // Offsets, then bucket placement preserving input order per session.
  std::size_t offset = 0;
  for (auto& s : log.sessions_) {
    s.offset = offset;
    offset += s.size;
  }
  log.events_.resize(events.size());
  std::vector<std::size_t> cursor(log.sessions_.size());
  for (std::size_t i = 0; i < log.sessions_.size(); ++i) {
    cursor[i] = log.sessions_[i].offset;
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    log.events_[cursor[slot_of[i]]++] = std::move(events[i]);
  }

  // Stable sort by timestamp keeps input order for equal timestamps.
  for (const auto& s : log.sessions_) {
    const auto begin = log.events_.begin() + static_cast<std::ptrdiff_t>(s.offset);
    std::stable_sort(begin, begin + static_cast<std::ptrdiff_t>(s.size),
                     [](const Event& a, const Event& b) {
                       return a.timestamp < b.timestamp;
                     });
  }
  return log;
}

std::size_t EventLog::find_session(std::string_view id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? npos : it->second;
}

void EventLog::write_jsonl(std::ostream& out) const {
  for (const auto& event : events_) {
    out << to_jsonl_line(event) << '\n';
  }
}

LoadResult load_log(std::istream& in, const LoadOptions& options) {
  LoadResult result;
  std::vector<Event> events;
  std::string line;
  std::string reason;
  std::size_t line_number = 0;

  while (std::getline(in, line)) {
    ++line_number;
    ++result.report.total_lines;
    // Tolerate CRLF input.
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto event = parse_event(line, &reason);
    if (!event) {
      ++result.report.rejected;
      if (result.report.rejections.size() < options.max_recorded_rejections) {
        result.report.rejections.emplace_back(line_number, reason);
      }
      continue;
    }
    ++result.report.accepted;
    if (options.config && !options.config->knows(event->action)) {
      ++result.report.unknown_actions[event->action];
    }
    events.push_back(std::move(*event));
  }
  if (in.bad()) throw IoError("stream failed while reading event log");

  result.log = EventLog::from_events(std::move(events));
  return result;
}

LoadResult load_log_file(const std::filesystem::path& path,
                         const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open event log: " + path.string());
  return load_log(in, options);
}

}  // namespace loguse
