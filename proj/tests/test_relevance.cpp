#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "loguse/relevance.hpp"
#include "loguse/synthgen.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace loguse;
using fixtures::click;
using fixtures::ev;

TEST_SUITE_BEGIN("relevance");

namespace {

ClickSet make_set(std::initializer_list<std::pair<const char*, int>> clicks,
                  bool rank_bearing = true) {
  ClickSet set;
  for (const auto& [rid, rank] : clicks) {
    set.clicks.push_back({rid, rank, rank_bearing});
  }
  return set;
}

}  // namespace

TEST_CASE("attribution deduplicates by record") {
  const auto config = fixtures::demo_config();
  std::vector<Event> events{ev("s", 0, "search"),
                            click("s", 1, "view_record", "d1", 2),
                            click("s", 2, "view_record", "d1", 2),
                            click("s", 3, "view_record", "d2", 5)};
  const auto sets = attribute_clicks(events, config, SignalMode::click_through);
  REQUIRE(sets.size() == 1);
  REQUIRE(sets[0].clicks.size() == 2);
  CHECK(sets[0].clicks[0].record_id == "d1");
  CHECK(sets[0].clicks[0].rank == 2);
  CHECK(sets[0].clicks[1].record_id == "d2");
}

TEST_CASE("signals before any search are dropped") {
  const auto config = fixtures::demo_config();
  std::vector<Event> events{click("s", 0, "view_record", "d1", 1),
                            ev("s", 1, "search")};
  const auto sets = attribute_clicks(events, config, SignalMode::click_through);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].clicks.empty());
}

TEST_CASE("each search opens a fresh scope") {
  const auto config = fixtures::demo_config();
  std::vector<Event> events{ev("s", 0, "search"),
                            click("s", 1, "view_record", "d1", 1),
                            ev("s", 2, "search"),
                            click("s", 3, "view_record", "d2", 1)};
  const auto sets = attribute_clicks(events, config, SignalMode::click_through);
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].clicks.size() == 1);
  CHECK(sets[1].clicks.size() == 1);
}

TEST_CASE("signal mode controls which actions qualify") {
  const auto config = SignalConfig::cts_defaults();
  std::vector<Event> events{ev("s", 0, "search"),
                            click("s", 1, "export_bib", "d1", 4),
                            click("s", 2, "view_record", "d2", 6)};
  const auto clicks =
      attribute_clicks(events, config, SignalMode::click_through);
  REQUIRE(clicks.size() == 1);
  CHECK(clicks[0].clicks.size() == 1);  // export_bib is not a click signal

  const auto all = attribute_clicks(events, config, SignalMode::all_positive);
  REQUIRE(all[0].clicks.size() == 2);
  CHECK_FALSE(all[0].clicks[0].rank_bearing);
  CHECK(all[0].clicks[1].rank_bearing);
}

TEST_CASE("rank-less signals never enter a click set") {
  const auto config = SignalConfig::cts_defaults();
  std::vector<Event> events{ev("s", 0, "search"), ev("s", 1, "save_search")};
  Event with_rid = ev("s", 2, "export_bib");
  with_rid.record_id = "d1";  // rid but no rank
  events.push_back(with_rid);
  const auto sets = attribute_clicks(events, config, SignalMode::all_positive);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].clicks.empty());
}

TEST_CASE("precision at k") {
  CHECK(precision_at_k(make_set({{"a", 1}, {"b", 3}}), 20) == 0.1);
  CHECK(precision_at_k(ClickSet{}, 20) == 0.0);
  ClickSet saturated;
  for (int r = 1; r <= 20; ++r) {
    saturated.clicks.push_back({"d" + std::to_string(r), r, true});
  }
  CHECK(precision_at_k(saturated, 20) == 1.0);
  // Ranks beyond k do not count.
  CHECK(precision_at_k(make_set({{"a", 21}}), 20) == 0.0);
}

TEST_CASE("average precision at k") {
  CHECK(average_precision_at_k(make_set({{"a", 1}}), 20) == 1.0);
  CHECK(average_precision_at_k(make_set({{"a", 1}, {"b", 3}}), 20) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(average_precision_at_k(make_set({{"a", 2}}), 20) == 0.5);
  CHECK(average_precision_at_k(ClickSet{}, 20) == 0.0);
  // Only rank-bearing clicks count.
  CHECK(average_precision_at_k(make_set({{"a", 1}}, false), 20) == 0.0);
  // Ranks beyond k are ignored.
  CHECK(average_precision_at_k(make_set({{"a", 1}, {"b", 30}}), 20) == 1.0);
}

TEST_CASE("AP is one exactly when the clicked ranks form a prefix") {
  CHECK(average_precision_at_k(make_set({{"a", 1}, {"b", 2}, {"c", 3}}), 20) ==
        1.0);
  CHECK(average_precision_at_k(make_set({{"a", 1}, {"b", 2}, {"c", 4}}), 20) <
        1.0);
}

TEST_CASE("P and AP ignore click logging order") {
  const auto forward = make_set({{"a", 2}, {"b", 7}, {"c", 11}});
  const auto backward = make_set({{"c", 11}, {"b", 7}, {"a", 2}});
  CHECK(precision_at_k(forward, 20) == precision_at_k(backward, 20));
  CHECK(average_precision_at_k(forward, 20) ==
        average_precision_at_k(backward, 20));
}

TEST_CASE("AP matches the positional oracle exactly") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    ClickSet set;
    const std::size_t count = rng() % 11;
    for (std::size_t i = 0; i < count; ++i) {
      set.clicks.push_back({"d" + std::to_string(rng() % 12),
                            static_cast<int>(1 + rng() % 25),
                            (rng() % 3) != 0});
    }
    const std::size_t k = 1 + rng() % 24;
    CHECK(average_precision_at_k(set, k) == oracles::ap_positional(set, k));
  }
}

TEST_CASE("unit report with no clicks anywhere") {
  const auto config = SignalConfig::cts_defaults();
  std::vector<Event> events;
  std::int64_t ts = 0;
  events.push_back(ev("a", ts++, "enter_search_term"));
  events.push_back(ev("a", ts++, "CTS_select"));
  events.push_back(ev("a", ts++, "CTS_search"));
  ts = 0;
  events.push_back(ev("b", ts++, "enter_search_term"));
  events.push_back(ev("b", ts++, "CTS_search"));
  const auto log = EventLog::from_events(events);

  UnitSpec spec;
  spec.unit = SessionUnit::window_nosplit;
  spec.window_n = 7;
  const auto report = unit_report(log, config, spec, 20);
  REQUIRE(report.with_service.has_value());
  REQUIRE(report.without_service.has_value());
  CHECK(report.with_service->mean_p_at_k == 0.0);
  CHECK(report.without_service->map_at_k == 0.0);
  CHECK_FALSE(report.z_p_at_k.has_value());
  CHECK_FALSE(report.z_map.has_value());
}

TEST_CASE("no-split pooling hand walk") {
  const auto config = SignalConfig::cts_defaults();
  std::vector<Event> events;
  std::int64_t ts = 0;
  events.push_back(ev("s", ts++, "CTS_select"));
  events.push_back(ev("s", ts++, "CTS_search"));
  events.push_back(click("s", ts++, "view_record", "d1", 1));
  events.push_back(ev("s", ts++, "export_bib"));  // success without rid/rank
  events.push_back(click("s", ts++, "view_record", "d2", 3));
  const auto log = EventLog::from_events(events);

  UnitSpec spec;
  spec.unit = SessionUnit::window_nosplit;
  spec.window_n = 7;
  spec.signal_mode = SignalMode::all_positive;
  const auto report = unit_report(log, config, spec, 20);
  REQUIRE(report.with_service.has_value());
  CHECK(report.with_service->unit_count == 1);
  CHECK(report.with_service->mean_p_at_k == doctest::Approx(0.1));
  CHECK_FALSE(report.without_service.has_value());
}

TEST_CASE("no-split pooling beats each member search on disjoint records") {
  const auto config = SignalConfig::cts_defaults();
  std::vector<Event> events;
  std::int64_t ts = 0;
  events.push_back(ev("s", ts++, "enter_search_term"));
  events.push_back(ev("s", ts++, "CTS_select"));
  events.push_back(ev("s", ts++, "CTS_search"));
  events.push_back(click("s", ts++, "view_record", "d1", 1));
  events.push_back(ev("s", ts++, "search"));
  events.push_back(click("s", ts++, "view_record", "d2", 5));
  events.push_back(click("s", ts++, "view_record", "d3", 8));
  const auto log = EventLog::from_events(events);

  // Per-search precisions inside the window.
  const auto window = service_search_windows(log, config, 7);
  REQUIRE(window.size() == 1);
  std::vector<Event> span(window[0].initial,
                          window[0].initial + window[0].followers.size() + 1);
  const auto split_sets =
      attribute_clicks(span, config, SignalMode::click_through);
  REQUIRE(split_sets.size() == 2);
  double max_split = 0.0;
  for (const auto& set : split_sets) {
    max_split = std::max(max_split, precision_at_k(set, 20));
  }

  UnitSpec spec;
  spec.unit = SessionUnit::window_nosplit;
  spec.window_n = 7;
  const auto report = unit_report(log, config, spec, 20);
  REQUIRE(report.with_service.has_value());
  CHECK(report.with_service->mean_p_at_k == doctest::Approx(3.0 / 20.0));
  CHECK(report.with_service->mean_p_at_k >= max_split);
}

TEST_CASE("split-mode window click sets grow with n by prefix containment") {
  const auto config = SignalConfig::cts_defaults();
  synth::GenParams params;
  params.sessions = 200;
  params.seed = 4;
  params.service_usage_prob = 0.5;
  params.base_success_prob = 0.3;
  const auto log = synth::generate(params);

  for (std::size_t s = 0; s < log.session_count(); ++s) {
    const auto session = log.session(s);
    const auto small = service_search_windows(session, config, 3);
    const auto large = service_search_windows(session, config, 6);
    REQUIRE(small.size() == large.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
      std::vector<Event> small_span(
          small[i].initial, small[i].initial + small[i].followers.size() + 1);
      std::vector<Event> large_span(
          large[i].initial, large[i].initial + large[i].followers.size() + 1);
      const auto small_sets =
          attribute_clicks(small_span, config, SignalMode::click_through);
      const auto large_sets =
          attribute_clicks(large_span, config, SignalMode::click_through);
      REQUIRE(small_sets.size() <= large_sets.size());
      for (std::size_t j = 0; j < small_sets.size(); ++j) {
        for (const auto& click : small_sets[j].clicks) {
          const bool found = std::any_of(
              large_sets[j].clicks.begin(), large_sets[j].clicks.end(),
              [&](const Click& c) {
                return c.record_id == click.record_id && c.rank == click.rank;
              });
          CHECK(found);
        }
      }
    }
  }
}

TEST_CASE("session units assign arms by service usage") {
  const auto config = SignalConfig::cts_defaults();
  std::vector<Event> events;
  std::int64_t ts = 0;
  events.push_back(ev("used", ts++, "enter_search_term"));
  events.push_back(ev("used", ts++, "CTS_select"));
  events.push_back(ev("used", ts++, "CTS_search"));
  events.push_back(click("used", ts++, "view_record", "u1", 1));
  ts = 0;
  events.push_back(ev("plain", ts++, "enter_search_term"));
  events.push_back(ev("plain", ts++, "CTS_search"));
  events.push_back(click("plain", ts++, "view_record", "p1", 2));
  events.push_back(ev("plain", ts++, "CTS_search"));
  const auto log = EventLog::from_events(events);

  UnitSpec spec;
  spec.unit = SessionUnit::whole_session_split;
  const auto report = unit_report(log, config, spec, 20);
  REQUIRE(report.with_service.has_value());
  REQUIRE(report.without_service.has_value());
  CHECK(report.with_service->unit_count == 1);
  CHECK(report.with_service->sample_count == 1);
  CHECK(report.without_service->unit_count == 1);
  CHECK(report.without_service->sample_count == 2);
  CHECK(report.without_service->mean_searches_per_unit == 2.0);

  // The filtered variant keeps only searches with a signal.
  UnitSpec filtered;
  filtered.unit = SessionUnit::filtered_processes;
  const auto filtered_report = unit_report(log, config, filtered, 20);
  CHECK(filtered_report.without_service->sample_count == 1);
  CHECK(filtered_report.without_service->mean_p_at_k ==
        doctest::Approx(1.0 / 20.0));
}

TEST_CASE("succeeding process takes the first search after the anchor") {
  const auto config = SignalConfig::cts_defaults();
  std::vector<Event> events;
  std::int64_t ts = 0;
  events.push_back(ev("s", ts++, "enter_search_term"));
  events.push_back(ev("s", ts++, "CTS_select"));
  events.push_back(ev("s", ts++, "CTS_search"));
  events.push_back(click("s", ts++, "view_record", "d1", 2));
  events.push_back(ev("s", ts++, "search"));
  events.push_back(click("s", ts++, "view_record", "d2", 4));
  ts = 0;
  events.push_back(ev("t", ts++, "enter_search_term"));
  events.push_back(ev("t", ts++, "CTS_search"));
  events.push_back(click("t", ts++, "view_record", "d3", 10));
  const auto log = EventLog::from_events(events);

  UnitSpec spec;
  spec.unit = SessionUnit::succeeding_process;
  const auto report = unit_report(log, config, spec, 20);
  REQUIRE(report.with_service.has_value());
  REQUIRE(report.without_service.has_value());
  CHECK(report.with_service->unit_count == 1);
  CHECK(report.with_service->mean_searches_per_unit == 1.0);
  // The with-arm scope is the CTS_search right after the select: only d1.
  CHECK(report.with_service->mean_p_at_k == doctest::Approx(1.0 / 20.0));
  // The without-arm anchor is session t's CTS_search.
  CHECK(report.without_service->unit_count == 1);
  CHECK(report.without_service->mean_p_at_k == doctest::Approx(1.0 / 20.0));
}

TEST_CASE("a click-rate lift on the service arm shows up in MAP") {
  synth::GenParams params;
  params.sessions = 20000;
  params.seed = 11;
  params.service_usage_prob = 0.5;
  params.base_success_prob = 0.2;
  params.service_lift = 0.5;
  const auto log = synth::generate(params);
  const auto config = SignalConfig::cts_defaults();

  UnitSpec spec;
  spec.unit = SessionUnit::window_nosplit;
  spec.window_n = 7;
  const auto report = unit_report(log, config, spec, 20);
  REQUIRE(report.with_service.has_value());
  REQUIRE(report.without_service.has_value());
  CHECK(report.with_service->map_at_k > report.without_service->map_at_k);
  CHECK(report.with_service->mean_p_at_k >
        report.without_service->mean_p_at_k);
  REQUIRE(report.z_map.has_value());
  CHECK(report.z_map->statistic > 0.0);
  CHECK(report.z_map->p_value < 0.01);
}

TEST_CASE("map curve marks missing arms as absent") {
  const auto config = SignalConfig::cts_defaults();
  std::vector<Event> events;
  std::int64_t ts = 0;
  events.push_back(ev("s", ts++, "enter_search_term"));
  events.push_back(ev("s", ts++, "CTS_search"));
  events.push_back(click("s", ts++, "view_record", "d1", 1));
  const auto log = EventLog::from_events(events);
  const auto curve = map_curve(log, config, false, 20, 4);
  REQUIRE(curve.size() == 5);
  for (const auto& point : curve) {
    CHECK_FALSE(point.map_with.has_value());
    CHECK(point.map_without.has_value());
  }
}

TEST_CASE("null generator keeps the no-split map arms together") {
  const auto config = SignalConfig::cts_defaults();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    synth::GenParams params;
    params.sessions = 20000;
    params.seed = seed;
    params.service_usage_prob = 0.5;
    params.base_success_prob = 0.2;
    params.service_lift = 0.0;
    const auto log = synth::generate(params);
    const auto curve = map_curve(log, config, false, 20, 9);
    for (const auto& point : curve) {
      REQUIRE(point.map_with.has_value());
      REQUIRE(point.map_without.has_value());
      CHECK(std::fabs(*point.map_with - *point.map_without) < 0.02);
    }
  }
}

TEST_CASE("precision report CSV format") {
  const auto config = SignalConfig::cts_defaults();
  synth::GenParams params;
  params.sessions = 500;
  params.seed = 2;
  params.service_usage_prob = 0.5;
  params.base_success_prob = 0.3;
  params.service_lift = 0.2;
  const auto log = synth::generate(params);
  UnitSpec spec;
  spec.unit = SessionUnit::window_nosplit;
  const auto csv =
      precision_report_to_csv(unit_report(log, config, spec, 20), "# m");
  CHECK(csv.rfind("unit,signal_mode,k,arm,mean_p_at_k,map_at_k,units,"
                  "mean_searches,z_p,z_p_pvalue,z_map,z_map_pvalue\n",
                  0) == 0);
  CHECK(csv.find("window_nosplit,click_through,20,with,") != std::string::npos);
  CHECK(csv.find("window_nosplit,click_through,20,without,") !=
        std::string::npos);
  CHECK(csv.find("# m\n") != std::string::npos);
}

TEST_SUITE_END();
