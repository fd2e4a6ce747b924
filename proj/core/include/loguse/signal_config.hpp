#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>

namespace loguse {

struct ActionHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

using ActionSet = std::unordered_set<std::string, ActionHash, std::equal_to<>>;

inline bool contains(const ActionSet& set, std::string_view action) {
  return set.find(action) != set.end();
}

// The action-label vocabularies that drive sessionization and metrics.
struct SignalConfig {
  ActionSet start_actions;            // begin a search process
  ActionSet terminal_actions;         // end a session's active part
  std::string service_action;         // explicit service usage marker
  std::string service_search_action;  // search from a service-eligible form
  ActionSet generic_search_actions;   // everything that counts as a search
  ActionSet success_actions;          // positive signals
  ActionSet click_actions;            // click-through signals for precision
  std::string view_action;            // rank-bearing click used for AP/MAP

  bool is_start(std::string_view a) const { return contains(start_actions, a); }
  bool is_terminal(std::string_view a) const {
    return contains(terminal_actions, a);
  }
  bool is_search(std::string_view a) const {
    return contains(generic_search_actions, a);
  }
  bool is_success(std::string_view a) const {
    return contains(success_actions, a);
  }
  bool is_click(std::string_view a) const { return contains(click_actions, a); }

  // Membership in any configured vocabulary.
  bool knows(std::string_view action) const;

  // Throws ConfigError when an invariant is violated:
  //   service_action not in generic_search_actions,
  //   service_search_action in generic_search_actions,
  //   success_actions disjoint from start_actions,
  //   view_action in click_actions.
  void validate() const;

  static SignalConfig from_json_text(std::string_view text);
  static SignalConfig load(const std::filesystem::path& path);
  std::string to_json_text() const;

  // Built-in vocabulary for CTS-style portal logs (the label set the
  // bundled generator emits): CTS_select / CTS_search plus the usual
  // record-level positive signals.
  static SignalConfig cts_defaults();
};

}  // namespace loguse
