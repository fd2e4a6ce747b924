#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loguse/event_log.hpp"
#include "loguse/sessionize.hpp"
#include "loguse/signal_config.hpp"

namespace loguse {

struct ArmCounts {
  std::uint64_t successes = 0;
  std::uint64_t total = 0;
  // successes / total; absent when total == 0.
  std::optional<double> ratio;
};

struct UsefulnessCurvePoint {
  std::size_t n = 0;
  ArmCounts with_service;
  ArmCounts without_service;
  // 2x2 chi-squared on (success, no-success) x (with, without);
  // absent when the table is degenerate at this n.
  std::optional<double> chi2;
  std::optional<double> p_value;
  // global(success) - global(negative); only with CurveOptions::negative_set.
  std::optional<double> negative_adjusted;
};

struct LocalUsefulness {
  double value = 0.0;  // processes with >= 1 service usage / all processes
  std::uint64_t processes_with_usage = 0;
  std::uint64_t total_processes = 0;
  double raw_usage_ratio = 0.0;  // usage events / processes, may exceed 1
};

struct GlobalUsefulness {
  double value = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t total = 0;
};

struct CurveOptions {
  // Drop windows whose session ended before n followers existed. Off by
  // default: truncated windows count in the denominator.
  bool exclude_truncated = false;
  // When set, each point also carries the negative-adjusted ratio.
  const ActionSet* negative_set = nullptr;
};

struct UsefulnessReport {
  // Absent when the log yields no search processes.
  std::optional<LocalUsefulness> local;
  std::vector<UsefulnessCurvePoint> curve;
};

// 1 iff any follower's action is in success_set. The initiating event
// itself never counts.
int success_indicator(const EventWindow& window, const ActionSet& success_set);

// Share of search processes containing at least one service usage, plus
// the raw occurrences-per-process ratio. Throws UndefinedMetricError on an
// empty process sequence.
LocalUsefulness local_usefulness(const std::vector<SearchProcess>& processes,
                                 const SignalConfig& config);

// Share of windows whose followers contain a success action. Throws
// UndefinedMetricError on an empty window sequence.
GlobalUsefulness global_usefulness(const std::vector<EventWindow>& windows,
                                   const ActionSet& success_set);

// For each n in 0..n_max: with-service ratio over service windows
// (initial = service_action), without-service ratio over baseline windows,
// and the chi-squared comparison of the two arms. Throws
// UndefinedMetricError when both arms are empty at every n.
std::vector<UsefulnessCurvePoint> usefulness_curve(
    const EventLog& log, const SignalConfig& config, std::size_t n_max,
    const CurveOptions& options = {});

// global(success_set) - global(negative_set) over service windows at one n.
// Range [-1, 1]. Throws ConfigError when the sets overlap.
double negative_adjusted_usefulness(const EventLog& log,
                                    const SignalConfig& config,
                                    const ActionSet& negative_set,
                                    std::size_t n);

// Local usefulness plus the full curve.
UsefulnessReport usefulness_report(const EventLog& log,
                                   const SignalConfig& config,
                                   std::size_t n_max,
                                   const CurveOptions& options = {});

// CSV with header n,with_success,with_total,with_ratio,without_success,
// without_total,without_ratio,chi2,p_value. Ratios and chi2 use 6 decimal
// places, p-values 6 significant digits, absent values print empty. When
// any point carries a negative-adjusted ratio a negative_adjusted column
// is appended. A non-empty manifest_comment is written as a trailing
// "#"-prefixed line.
std::string curve_to_csv(const std::vector<UsefulnessCurvePoint>& curve,
                         std::string_view manifest_comment = {});

}  // namespace loguse
