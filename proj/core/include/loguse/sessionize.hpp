#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loguse/event.hpp"
#include "loguse/event_log.hpp"
#include "loguse/signal_config.hpp"

namespace loguse {

// Contiguous run of session events opened by a start action. Spans point
// into the caller's session storage and stay valid while it does.
struct SearchProcess {
  std::string session_id;
  std::span<const Event> events;
  std::size_t start_index = 0;  // position of events.front() in the session
};

// An initiating event plus up to n_requested immediately succeeding events
// from the same session. Windows may overlap and may cross search-process
// boundaries, but never session boundaries.
struct EventWindow {
  std::string session_id;
  const Event* initial = nullptr;
  std::span<const Event> followers;
  std::size_t n_requested = 0;
  bool truncated = false;  // session ended before n_requested followers
};

// Splits one session into search processes. A process begins at a start
// action and ends at the first terminal action (inclusive), the event
// before the next start action, or the session end, whichever comes first.
// Events before the first start action, and events between a terminal cut
// and the next start action, belong to no process.
std::vector<SearchProcess> split_processes(std::span<const Event> session,
                                           const SignalConfig& config,
                                           std::string_view session_id = {});

// One window per occurrence of initial_action in the session.
std::vector<EventWindow> extract_windows(std::span<const Event> session,
                                         std::string_view initial_action,
                                         std::size_t n,
                                         std::string_view session_id = {});

// Windows anchored at each service_search_action occurrence whose
// immediately preceding event is not the service_action: the searches
// where the service was available but not used.
std::vector<EventWindow> baseline_windows(std::span<const Event> session,
                                          const SignalConfig& config,
                                          std::size_t n,
                                          std::string_view session_id = {});

// The complement: windows anchored at service_search_action occurrences
// immediately preceded by the service_action. Together with
// baseline_windows this partitions the service-search occurrences, and
// both families share the same anchor depth, which keeps the two arms
// comparable for precision measures.
std::vector<EventWindow> service_search_windows(std::span<const Event> session,
                                                const SignalConfig& config,
                                                std::size_t n,
                                                std::string_view session_id = {});

// Whole-log conveniences.
std::vector<SearchProcess> split_processes(const EventLog& log,
                                           const SignalConfig& config);
std::vector<EventWindow> service_windows(const EventLog& log,
                                         const SignalConfig& config,
                                         std::size_t n);
std::vector<EventWindow> baseline_windows(const EventLog& log,
                                          const SignalConfig& config,
                                          std::size_t n);
std::vector<EventWindow> service_search_windows(const EventLog& log,
                                                const SignalConfig& config,
                                                std::size_t n);

}  // namespace loguse
