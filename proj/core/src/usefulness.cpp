#include "loguse/usefulness.hpp"

#include <limits>

#include "format.hpp"
#include "loguse/errors.hpp"
#include "loguse/stats.hpp"

namespace loguse {

namespace {

constexpr std::size_t kNoSuccess = std::numeric_limits<std::size_t>::max();

// Per-anchor summary that answers the success question for every n at once:
// `available` followers (capped at n_max + 1) and the 1-based offset of the
// first follower in each signal set.
struct AnchorScan {
  std::size_t available = 0;
  std::size_t first_success = kNoSuccess;
  std::size_t first_negative = kNoSuccess;
};

AnchorScan scan_anchor(std::span<const Event> session, std::size_t index,
                       std::size_t n_max, const ActionSet& success_set,
                       const ActionSet* negative_set) {
  AnchorScan scan;
  const std::size_t raw = session.size() - index - 1;
  scan.available = std::min(raw, n_max + 1);
  const std::size_t probe = std::min(raw, n_max);
  for (std::size_t offset = 1; offset <= probe; ++offset) {
    const auto& action = session[index + offset].action;
    if (scan.first_success == kNoSuccess && contains(success_set, action)) {
      scan.first_success = offset;
    }
    if (negative_set && scan.first_negative == kNoSuccess &&
        contains(*negative_set, action)) {
      scan.first_negative = offset;
    }
    if (scan.first_success != kNoSuccess &&
        (!negative_set || scan.first_negative != kNoSuccess)) {
      break;
    }
  }
  return scan;
}

struct ArmScans {
  std::vector<AnchorScan> anchors;

  ArmCounts counts_at(std::size_t n, bool exclude_truncated) const {
    ArmCounts counts;
    for (const auto& a : anchors) {
      if (exclude_truncated && a.available < n) continue;
      ++counts.total;
      if (a.first_success <= n) ++counts.successes;
    }
    if (counts.total > 0) {
      counts.ratio = static_cast<double>(counts.successes) /
                     static_cast<double>(counts.total);
    }
    return counts;
  }

  // Negative-arm counts under the same denominator rule.
  ArmCounts negative_counts_at(std::size_t n, bool exclude_truncated) const {
    ArmCounts counts;
    for (const auto& a : anchors) {
      if (exclude_truncated && a.available < n) continue;
      ++counts.total;
      if (a.first_negative <= n) ++counts.successes;
    }
    if (counts.total > 0) {
      counts.ratio = static_cast<double>(counts.successes) /
                     static_cast<double>(counts.total);
    }
    return counts;
  }
};

}  // namespace

int success_indicator(const EventWindow& window, const ActionSet& success_set) {
  for (const auto& event : window.followers) {
    if (contains(success_set, event.action)) return 1;
  }
  return 0;
}

LocalUsefulness local_usefulness(const std::vector<SearchProcess>& processes,
                                 const SignalConfig& config) {
  if (processes.empty()) {
    throw UndefinedMetricError("local usefulness: no search processes");
  }
  LocalUsefulness result;
  result.total_processes = processes.size();
  std::uint64_t occurrences = 0;
  for (const auto& process : processes) {
    std::uint64_t in_process = 0;
    for (const auto& event : process.events) {
      if (event.action == config.service_action) ++in_process;
    }
    occurrences += in_process;
    if (in_process > 0) ++result.processes_with_usage;
  }
  result.value = static_cast<double>(result.processes_with_usage) /
                 static_cast<double>(result.total_processes);
  result.raw_usage_ratio =
      static_cast<double>(occurrences) / static_cast<double>(result.total_processes);
  return result;
}

GlobalUsefulness global_usefulness(const std::vector<EventWindow>& windows,
                                   const ActionSet& success_set) {
  if (windows.empty()) {
    throw UndefinedMetricError("global usefulness: no windows");
  }
  GlobalUsefulness result;
  result.total = windows.size();
  for (const auto& window : windows) {
    result.successes +=
        static_cast<std::uint64_t>(success_indicator(window, success_set));
  }
  result.value =
      static_cast<double>(result.successes) / static_cast<double>(result.total);
  return result;
}

std::vector<UsefulnessCurvePoint> usefulness_curve(const EventLog& log,
                                                   const SignalConfig& config,
                                                   std::size_t n_max,
                                                   const CurveOptions& options) {
  if (options.negative_set) {
    for (const auto& action : *options.negative_set) {
      if (config.is_success(action)) {
        throw ConfigError("negative set overlaps success actions: " + action);
      }
    }
  }

  ArmScans service_arm;
  ArmScans baseline_arm;
  for (std::size_t s = 0; s < log.session_count(); ++s) {
    const auto session = log.session(s);
    for (std::size_t i = 0; i < session.size(); ++i) {
      const auto& action = session[i].action;
      if (action == config.service_action) {
        service_arm.anchors.push_back(scan_anchor(
            session, i, n_max, config.success_actions, options.negative_set));
      }
      if (action == config.service_search_action &&
          (i == 0 || session[i - 1].action != config.service_action)) {
        baseline_arm.anchors.push_back(scan_anchor(
            session, i, n_max, config.success_actions, options.negative_set));
      }
    }
  }

  if (service_arm.anchors.empty() || baseline_arm.anchors.empty()) {
    throw UndefinedMetricError(
        "usefulness curve: an arm has no windows at any n");
  }

  std::vector<UsefulnessCurvePoint> curve;
  curve.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    UsefulnessCurvePoint point;
    point.n = n;
    point.with_service = service_arm.counts_at(n, options.exclude_truncated);
    point.without_service = baseline_arm.counts_at(n, options.exclude_truncated);

    const auto& w = point.with_service;
    const auto& wo = point.without_service;
    const std::uint64_t successes = w.successes + wo.successes;
    const std::uint64_t failures =
        (w.total - w.successes) + (wo.total - wo.successes);
    if (w.total > 0 && wo.total > 0 && successes > 0 && failures > 0) {
      const auto test = stats::chi_squared_2x2(
          w.successes, w.total - w.successes, wo.successes,
          wo.total - wo.successes);
      point.chi2 = test.statistic;
      point.p_value = test.p_value;
    }

    if (options.negative_set && w.ratio) {
      const auto neg =
          service_arm.negative_counts_at(n, options.exclude_truncated);
      point.negative_adjusted = *w.ratio - neg.ratio.value_or(0.0);
    }
    curve.push_back(point);
  }
  return curve;
}

double negative_adjusted_usefulness(const EventLog& log,
                                    const SignalConfig& config,
                                    const ActionSet& negative_set,
                                    std::size_t n) {
  for (const auto& action : negative_set) {
    if (config.is_success(action)) {
      throw ConfigError("negative set overlaps success actions: " + action);
    }
  }
  const auto windows = service_windows(log, config, n);
  const auto positive = global_usefulness(windows, config.success_actions);
  if (negative_set.empty()) return positive.value;
  const auto negative = global_usefulness(windows, negative_set);
  return positive.value - negative.value;
}

UsefulnessReport usefulness_report(const EventLog& log,
                                   const SignalConfig& config,
                                   std::size_t n_max,
                                   const CurveOptions& options) {
  UsefulnessReport report;
  const auto processes = split_processes(log, config);
  if (!processes.empty()) {
    report.local = local_usefulness(processes, config);
  }
  report.curve = usefulness_curve(log, config, n_max, options);
  return report;
}

std::string curve_to_csv(const std::vector<UsefulnessCurvePoint>& curve,
                         std::string_view manifest_comment) {
  bool with_negative = false;
  for (const auto& point : curve) {
    if (point.negative_adjusted) with_negative = true;
  }

  std::string out =
      "n,with_success,with_total,with_ratio,without_success,without_total,"
      "without_ratio,chi2,p_value";
  if (with_negative) out += ",negative_adjusted";
  out += '\n';

  for (const auto& point : curve) {
    out += std::to_string(point.n);
    out += ',' + std::to_string(point.with_service.successes);
    out += ',' + std::to_string(point.with_service.total);
    out += ',';
    if (point.with_service.ratio) out += detail::fixed6(*point.with_service.ratio);
    out += ',' + std::to_string(point.without_service.successes);
    out += ',' + std::to_string(point.without_service.total);
    out += ',';
    if (point.without_service.ratio) {
      out += detail::fixed6(*point.without_service.ratio);
    }
    out += ',';
    if (point.chi2) out += detail::fixed6(*point.chi2);
    out += ',';
    if (point.p_value) out += detail::sig6(*point.p_value);
    if (with_negative) {
      out += ',';
      if (point.negative_adjusted) {
        out += detail::fixed6(*point.negative_adjusted);
      }
    }
    out += '\n';
  }
  if (!manifest_comment.empty()) {
    out += manifest_comment;
    out += '\n';
  }
  return out;
}

}  // namespace loguse
