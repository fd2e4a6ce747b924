#include "loguse/signal_config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "loguse/errors.hpp"

namespace loguse {

namespace {

using nlohmann::json;

ActionSet read_set(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw ConfigError(std::string("signal config: missing array key '") + key +
                      "'");
  }
  ActionSet set;
  for (const auto& item : *it) {
    if (!item.is_string()) {
      throw ConfigError(std::string("signal config: '") + key +
                        "' must contain only strings");
    }
    set.insert(item.get<std::string>());
  }
  return set;
}

std::string read_string(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ConfigError(std::string("signal config: missing string key '") + key +
                      "'");
  }
  return it->get<std::string>();
}

json to_sorted_array(const ActionSet& set) {
  std::vector<std::string> items(set.begin(), set.end());
  std::sort(items.begin(), items.end());
  return json(items);
}

}  // namespace

bool SignalConfig::knows(std::string_view action) const {
  return is_start(action) || is_terminal(action) || is_search(action) ||
         is_success(action) || is_click(action) || action == service_action ||
         action == view_action;
}

void SignalConfig::validate() const {
  if (service_action.empty()) {
    throw ConfigError("signal config: service_action is empty");
  }
  if (contains(generic_search_actions, service_action)) {
    throw ConfigError(
        "signal config: service_action must not be a generic search action");
  }
  if (!contains(generic_search_actions, service_search_action)) {
    throw ConfigError(
        "signal config: service_search_action must be a generic search action");
  }
  for (const auto& a : success_actions) {
    if (contains(start_actions, a)) {
      throw ConfigError("signal config: success action '" + a +
                        "' is also a start action");
    }
  }
  if (!contains(click_actions, view_action)) {
    throw ConfigError("signal config: view_action must be a click action");
  }
}

SignalConfig SignalConfig::from_json_text(std::string_view text) {
  const json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw ConfigError("signal config: malformed JSON");
  }
  SignalConfig config;
  config.start_actions = read_set(j, "start_actions");
  config.terminal_actions = read_set(j, "terminal_actions");
  config.service_action = read_string(j, "service_action");
  config.service_search_action = read_string(j, "service_search_action");
  config.generic_search_actions = read_set(j, "generic_search_actions");
  config.success_actions = read_set(j, "success_actions");
  config.click_actions = read_set(j, "click_actions");
  config.view_action = read_string(j, "view_action");
  config.validate();
  return config;
}

SignalConfig SignalConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open signal config: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string SignalConfig::to_json_text() const {
  json j;
  j["start_actions"] = to_sorted_array(start_actions);
  j["terminal_actions"] = to_sorted_array(terminal_actions);
  j["service_action"] = service_action;
  j["service_search_action"] = service_search_action;
  j["generic_search_actions"] = to_sorted_array(generic_search_actions);
  j["success_actions"] = to_sorted_array(success_actions);
  j["click_actions"] = to_sorted_array(click_actions);
  j["view_action"] = view_action;
  return j.dump(2);
}

SignalConfig SignalConfig::cts_defaults() {
  SignalConfig config;
  config.start_actions = {"enter_search_term"};
  config.terminal_actions = {"logout"};
  config.service_action = "CTS_select";
  config.service_search_action = "CTS_search";
  config.generic_search_actions = {"search", "CTS_search"};
  config.success_actions = {
      "goto_fulltext",
      "goto_google_scholar",
      "goto_google_books",
      "goto_local_availability",
      "view_description",
      "view_citation",
      "view_references",
      "export_cite",
      "export_bib",
      "export_mail",
      "save_to_multiple_favorites",
      "to_favorites",
      "export_search_mail",
      "save_search",
      "save_search_history",
  };
  config.click_actions = {
      "view_record",
      "goto_fulltext",
      "goto_google_scholar",
      "goto_google_books",
      "to_favorites",
  };
  config.view_action = "view_record";
  config.validate();
  return config;
}

}  // namespace loguse
