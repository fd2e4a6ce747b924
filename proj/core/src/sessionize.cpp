#include "loguse/sessionize.hpp"

#include <algorithm>

namespace loguse {

std::vector<SearchProcess> split_processes(std::span<const Event> session,
                                           const SignalConfig& config,
                                           std::string_view session_id) {
  std::vector<SearchProcess> processes;
  const std::size_t len = session.size();

  std::size_t i = 0;
  while (i < len && !config.is_start(session[i].action)) ++i;

  while (i < len) {
    // A process runs until the event before the next start action, or
    // through the first terminal action inclusively.
    std::size_t end = i + 1;
    bool terminal_cut = false;
    while (end < len && !config.is_start(session[end].action)) {
      if (config.is_terminal(session[end].action)) {
        ++end;
        terminal_cut = true;
        break;
      }
      ++end;
    }
    processes.push_back(
        {std::string(session_id), session.subspan(i, end - i), i});

    i = end;
    if (terminal_cut) {
      while (i < len && !config.is_start(session[i].action)) ++i;
    }
  }
  return processes;
}

namespace {

EventWindow make_window(std::span<const Event> session, std::size_t index,
                        std::size_t n, std::string_view session_id) {
  const std::size_t available = session.size() - index - 1;
  const std::size_t taken = std::min(n, available);
  return {std::string(session_id), &session[index],
          session.subspan(index + 1, taken), n, taken < n};
}

}  // namespace

std::vector<EventWindow> extract_windows(std::span<const Event> session,
                                         std::string_view initial_action,
                                         std::size_t n,
                                         std::string_view session_id) {
  std::vector<EventWindow> windows;
  for (std::size_t i = 0; i < session.size(); ++i) {
    if (session[i].action == initial_action) {
      windows.push_back(make_window(session, i, n, session_id));
    }
  }
  return windows;
}

std::vector<EventWindow> baseline_windows(std::span<const Event> session,
                                          const SignalConfig& config,
                                          std::size_t n,
                                          std::string_view session_id) {
  std::vector<EventWindow> windows;
  for (std::size_t i = 0; i < session.size(); ++i) {
    if (session[i].action != config.service_search_action) continue;
    if (i > 0 && session[i - 1].action == config.service_action) continue;
    windows.push_back(make_window(session, i, n, session_id));
  }
  return windows;
}

std::vector<EventWindow> service_search_windows(std::span<const Event> session,
                                                const SignalConfig& config,
                                                std::size_t n,
                                                std::string_view session_id) {
  std::vector<EventWindow> windows;
  for (std::size_t i = 0; i < session.size(); ++i) {
    if (session[i].action != config.service_search_action) continue;
    if (i == 0 || session[i - 1].action != config.service_action) continue;
    windows.push_back(make_window(session, i, n, session_id));
  }
  return windows;
}

std::vector<SearchProcess> split_processes(const EventLog& log,
                                           const SignalConfig& config) {
  std::vector<SearchProcess> all;
  for (std::size_t s = 0; s < log.session_count(); ++s) {
    auto processes = split_processes(log.session(s), config, log.session_id(s));
    all.insert(all.end(), std::make_move_iterator(processes.begin()),
               std::make_move_iterator(processes.end()));
  }
  return all;
}

std::vector<EventWindow> service_windows(const EventLog& log,
                                         const SignalConfig& config,
                                         std::size_t n) {
  std::vector<EventWindow> all;
  for (std::size_t s = 0; s < log.session_count(); ++s) {
    auto windows =
        extract_windows(log.session(s), config.service_action, n,
                        log.session_id(s));
    all.insert(all.end(), std::make_move_iterator(windows.begin()),
               std::make_move_iterator(windows.end()));
  }
  return all;
}

std::vector<EventWindow> baseline_windows(const EventLog& log,
                                          const SignalConfig& config,
                                          std::size_t n) {
  std::vector<EventWindow> all;
  for (std::size_t s = 0; s < log.session_count(); ++s) {
    auto windows = baseline_windows(log.session(s), config, n, log.session_id(s));
    all.insert(all.end(), std::make_move_iterator(windows.begin()),
               std::make_move_iterator(windows.end()));
  }
  return all;
}

std::vector<EventWindow> service_search_windows(const EventLog& log,
                                                const SignalConfig& config,
                                                std::size_t n) {
  std::vector<EventWindow> all;
  for (std::size_t s = 0; s < log.session_count(); ++s) {
    auto windows =
        service_search_windows(log.session(s), config, n, log.session_id(s));
    all.insert(all.end(), std::make_move_iterator(windows.begin()),
               std::make_move_iterator(windows.end()));
  }
  return all;
}

}  // namespace loguse
