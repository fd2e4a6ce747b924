#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loguse/event_log.hpp"
#include "loguse/sessionize.hpp"
#include "loguse/signal_config.hpp"
#include "loguse/stats.hpp"

namespace loguse {

struct Click {
  std::string record_id;
  int rank = 0;              // 1-based
  bool rank_bearing = false; // came from the configured view action
};

// Qualifying clicks of one evaluation unit, deduplicated by record id
// (the first click's rank wins).
struct ClickSet {
  std::string unit_id;
  std::vector<Click> clicks;
};

enum class SessionUnit {
  whole_session_split,  // sessions, split into single searches
  filtered_processes,   // same, keeping only searches with enough signals
  succeeding_process,   // the search directly following the anchor event
  window_split,         // event windows, split into single searches
  window_nosplit,       // event windows pooled as one pseudo-search
};

enum class SignalMode {
  click_through,  // click_actions only
  all_positive,   // click_actions plus success_actions
};

struct UnitSpec {
  SessionUnit unit = SessionUnit::window_nosplit;
  std::size_t window_n = 7;  // used by the window units
  SignalMode signal_mode = SignalMode::click_through;
  // Keep only samples with at least this many qualifying clicks.
  // filtered_processes raises an effective minimum of 1.
  std::size_t min_signals = 0;
};

struct ArmSummary {
  double mean_p_at_k = 0.0;
  double map_at_k = 0.0;
  std::size_t unit_count = 0;    // sessions / anchors / windows
  std::size_t sample_count = 0;  // searches (split) or pooled units
  double mean_searches_per_unit = 0.0;
};

struct PrecisionReport {
  UnitSpec spec;
  std::size_t k = 20;
  std::optional<ArmSummary> with_service;
  std::optional<ArmSummary> without_service;
  // Two-sample z-tests on the per-sample P@k and AP@k values; absent when
  // either arm has fewer than two samples or the variance degenerates.
  std::optional<stats::TestResult> z_p_at_k;
  std::optional<stats::TestResult> z_map;
};

// One ClickSet per search occurrence, in order. A search opens an
// attribution scope; each later qualifying signal carrying a record id and
// rank joins the most recent scope. Signals before any search are dropped.
std::vector<ClickSet> attribute_clicks(std::span<const Event> events,
                                       const SignalConfig& config,
                                       SignalMode mode);

// |clicks with rank <= k| / k, clamped to [0, 1].
double precision_at_k(const ClickSet& clicks, std::size_t k);

// Over the distinct ranks r_1 < ... < r_m of rank-bearing clicks with
// rank <= k: AP = (sum_i i / r_i) / m; 0 when no rank qualifies.
double average_precision_at_k(const ClickSet& clicks, std::size_t k);

// Builds the unit's samples for both arms (service vs baseline) and
// compares them. Arms with zero units are reported absent and the tests
// skipped.
PrecisionReport unit_report(const EventLog& log, const SignalConfig& config,
                            const UnitSpec& spec, std::size_t k);

struct MapCurvePoint {
  std::size_t n = 0;
  std::optional<double> map_with;
  std::optional<double> map_without;
};

// MAP@k per window size n in 0..n_max, split or no-split.
std::vector<MapCurvePoint> map_curve(const EventLog& log,
                                     const SignalConfig& config, bool split,
                                     std::size_t k, std::size_t n_max);

// CSV with header unit,signal_mode,k,arm,mean_p_at_k,map_at_k,units,
// mean_searches,z_p,z_p_pvalue,z_map,z_map_pvalue; one row per arm;
// 6 decimal places, p-values 6 significant digits.
std::string precision_report_to_csv(const PrecisionReport& report,
                                    std::string_view manifest_comment = {});

// CSV with header n,map_with,map_without.
std::string map_curve_to_csv(const std::vector<MapCurvePoint>& curve,
                             std::string_view manifest_comment = {});

}  // namespace loguse
