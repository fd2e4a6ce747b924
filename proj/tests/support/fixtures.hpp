#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "loguse/event.hpp"
#include "loguse/event_log.hpp"
#include "loguse/signal_config.hpp"

namespace fixtures {

inline loguse::Event ev(std::string sid, std::int64_t ts, std::string action) {
  return {std::move(sid), ts, std::move(action), std::nullopt, std::nullopt,
          std::nullopt};
}

inline loguse::Event click(std::string sid, std::int64_t ts, std::string action,
                           std::string rid, int rank) {
  return {std::move(sid), ts,           std::move(action),
          std::move(rid), rank,         std::nullopt};
}

// Vocabulary of the bundled six-session demo log: a term recommender in
// front of a plain search form.
inline loguse::SignalConfig demo_config() {
  loguse::SignalConfig config;
  config.start_actions = {"enter_search_term"};
  config.terminal_actions = {"logout"};
  config.service_action = "select_term_from_recommender";
  config.service_search_action = "search";
  config.generic_search_actions = {"search"};
  config.success_actions = {"print_record", "export_record", "bookmark_record"};
  config.click_actions = {"view_record"};
  config.view_action = "view_record";
  config.validate();
  return config;
}

// Six single-process sessions; three use the recommender. Within five
// follower events, two of the three recommender usages reach a positive
// signal and one of the three plain searches does.
inline std::vector<loguse::Event> demo_events() {
  std::vector<loguse::Event> events;
  std::int64_t ts = 0;
  std::string sid;
  int record = 0;
  const auto add = [&](const char* action) {
    events.push_back(ev(sid, ts, action));
    ts += 1000;
  };
  const auto view = [&] {
    ++record;
    events.push_back(click(sid, ts, "view_record",
                           sid + "_d" + std::to_string(record), record));
    ts += 1000;
  };
  const auto open_session = [&](const char* id) {
    sid = id;
    ts = 0;
    record = 0;
  };

  open_session("s1");
  add("enter_search_term");
  add("select_term_from_recommender");
  add("search");
  view();
  view();
  view();
  add("export_record");

  open_session("s2");
  add("enter_search_term");
  add("select_term_from_recommender");
  add("search");
  view();
  view();
  add("logout");

  open_session("s3");
  add("enter_search_term");
  add("search");
  view();
  view();
  view();

  open_session("s4");
  add("enter_search_term");
  add("search");
  view();
  view();
  view();
  view();
  view();

  open_session("s5");
  add("enter_search_term");
  add("select_term_from_recommender");
  add("search");
  view();
  view();
  add("bookmark_record");
  view();

  open_session("s6");
  add("enter_search_term");
  add("search");
  view();
  add("export_record");

  return events;
}

inline loguse::EventLog demo_log() {
  return loguse::EventLog::from_events(demo_events());
}

// Random action soup over the demo vocabulary for property tests.
// Deterministic per seed.
inline loguse::EventLog random_log(std::uint64_t seed, std::size_t max_events) {
  static const std::vector<std::string> kActions = {
      "enter_search_term",
      "select_term_from_recommender",
      "search",
      "view_record",
      "view_record",  // clicks are common in real logs
      "export_record",
      "bookmark_record",
      "print_record",
      "logout",
      "paginate",
      "facet_filter",
  };
  std::mt19937_64 rng(seed);
  const auto pick = [&](std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
  };

  const std::size_t count = pick(max_events + 1);
  const std::size_t sessions = 1 + pick(4);
  std::vector<loguse::Event> events;
  events.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    loguse::Event event;
    event.session_id = "r" + std::to_string(pick(sessions));
    event.timestamp = static_cast<std::int64_t>(i) * 10;
    event.action = kActions[pick(kActions.size())];
    if (event.action == "view_record" || pick(4) == 0) {
      event.record_id = "d" + std::to_string(pick(6));
      event.rank = static_cast<int>(1 + pick(20));
    }
    events.push_back(std::move(event));
  }
  return loguse::EventLog::from_events(std::move(events));
}

}  // namespace fixtures
