#include "loguse/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "format.hpp"
#include "loguse/errors.hpp"

namespace loguse {

namespace {

bool qualifies(const SignalConfig& config, SignalMode mode,
               const std::string& action) {
  if (config.is_click(action)) return true;
  return mode == SignalMode::all_positive && config.is_success(action);
}

void add_click(ClickSet& set, std::unordered_set<std::string>& seen,
               const Event& event, const SignalConfig& config) {
  if (!seen.insert(*event.record_id).second) return;  // first click wins
  set.clicks.push_back(
      {*event.record_id, *event.rank, event.action == config.view_action});
}

// Pool every qualifying signal of the range into one pseudo-search.
ClickSet pool_clicks(std::span<const Event> events, const SignalConfig& config,
                     SignalMode mode) {
  ClickSet set;
  std::unordered_set<std::string> seen;
  for (const auto& event : events) {
    if (!event.record_id || !event.rank) continue;
    if (!qualifies(config, mode, event.action)) continue;
    add_click(set, seen, event, config);
  }
  return set;
}

std::span<const Event> window_span(const EventWindow& window) {
  return {window.initial, window.followers.size() + 1};
}

struct ArmData {
  std::vector<ClickSet> samples;
  std::size_t units = 0;
};

void add_split_samples(std::span<const Event> events, const SignalConfig& config,
                       const UnitSpec& spec, std::size_t min_signals,
                       ArmData& arm) {
  for (auto& set : attribute_clicks(events, config, spec.signal_mode)) {
    if (set.clicks.size() >= min_signals) arm.samples.push_back(std::move(set));
  }
}

struct ArmStats {
  ArmSummary summary;
  std::vector<double> p_values;   // per-sample P@k
  std::vector<double> ap_values;  // per-sample AP@k
};

ArmStats summarize(const ArmData& arm, std::size_t k) {
  ArmStats stats;
  stats.summary.unit_count = arm.units;
  stats.summary.sample_count = arm.samples.size();
  stats.p_values.reserve(arm.samples.size());
  stats.ap_values.reserve(arm.samples.size());
  double p_sum = 0.0;
  double ap_sum = 0.0;
  for (const auto& sample : arm.samples) {
    const double p = precision_at_k(sample, k);
    const double ap = average_precision_at_k(sample, k);
    stats.p_values.push_back(p);
    stats.ap_values.push_back(ap);
    p_sum += p;
    ap_sum += ap;
  }
  if (!arm.samples.empty()) {
    stats.summary.mean_p_at_k = p_sum / static_cast<double>(arm.samples.size());
    stats.summary.map_at_k = ap_sum / static_cast<double>(arm.samples.size());
  }
  if (arm.units > 0) {
    stats.summary.mean_searches_per_unit =
        static_cast<double>(arm.samples.size()) / static_cast<double>(arm.units);
  }
  return stats;
}

double sample_sd(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double sum = 0.0;
  for (const double v : values) sum += (v - mean) * (v - mean);
  return std::sqrt(sum / static_cast<double>(values.size() - 1));
}

std::optional<stats::TestResult> compare_means(const std::vector<double>& a,
                                               double mean_a,
                                               const std::vector<double>& b,
                                               double mean_b) {
  if (a.size() < 2 || b.size() < 2) return std::nullopt;
  try {
    return stats::z_test_means(mean_a, sample_sd(a, mean_a), a.size(), mean_b,
                               sample_sd(b, mean_b), b.size());
  } catch (const UndefinedMetricError&) {
    return std::nullopt;
  }
}

const char* unit_name(SessionUnit unit) {
  switch (unit) {
    case SessionUnit::whole_session_split: return "whole_session_split";
    case SessionUnit::filtered_processes: return "filtered_processes";
    case SessionUnit::succeeding_process: return "succeeding_process";
    case SessionUnit::window_split: return "window_split";
    case SessionUnit::window_nosplit: return "window_nosplit";
  }
  return "?";
}

const char* mode_name(SignalMode mode) {
  return mode == SignalMode::click_through ? "click_through" : "all_positive";
}

}  // namespace

std::vector<ClickSet> attribute_clicks(std::span<const Event> events,
                                       const SignalConfig& config,
                                       SignalMode mode) {
  std::vector<ClickSet> sets;
  std::vector<std::unordered_set<std::string>> seen;
  for (const auto& event : events) {
    if (config.is_search(event.action)) {
      sets.emplace_back();
      seen.emplace_back();
      continue;
    }
    if (sets.empty()) continue;  // signals before any search are dropped
    if (!event.record_id || !event.rank) continue;
    if (!qualifies(config, mode, event.action)) continue;
    add_click(sets.back(), seen.back(), event, config);
  }
  return sets;
}

double precision_at_k(const ClickSet& clicks, std::size_t k) {
  if (k == 0) return 0.0;
  std::size_t hits = 0;
  for (const auto& click : clicks.clicks) {
    if (static_cast<std::size_t>(click.rank) <= k) ++hits;
  }
  return std::min(1.0, static_cast<double>(hits) / static_cast<double>(k));
}

double average_precision_at_k(const ClickSet& clicks, std::size_t k) {
  std::vector<int> ranks;
  for (const auto& click : clicks.clicks) {
    if (click.rank_bearing && static_cast<std::size_t>(click.rank) <= k) {
      ranks.push_back(click.rank);
    }
  }
  if (ranks.empty()) return 0.0;
  std::sort(ranks.begin(), ranks.end());
  // Pooled units can repeat a rank across searches; a result-list position
  // counts once.
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    sum += static_cast<double>(i + 1) / static_cast<double>(ranks[i]);
  }
  return sum / static_cast<double>(ranks.size());
}

PrecisionReport unit_report(const EventLog& log, const SignalConfig& config,
                            const UnitSpec& spec, std::size_t k) {
  ArmData with_arm;
  ArmData without_arm;
  const std::size_t min_signals =
      spec.unit == SessionUnit::filtered_processes
          ? std::max<std::size_t>(1, spec.min_signals)
          : spec.min_signals;

  switch (spec.unit) {
    case SessionUnit::whole_session_split:
    case SessionUnit::filtered_processes: {
      for (std::size_t s = 0; s < log.session_count(); ++s) {
        const auto session = log.session(s);
        const bool used_service =
            std::any_of(session.begin(), session.end(), [&](const Event& e) {
              return e.action == config.service_action;
            });
        ArmData& arm = used_service ? with_arm : without_arm;
        const std::size_t before = arm.samples.size();
        add_split_samples(session, config, spec, min_signals, arm);
        if (spec.unit == SessionUnit::whole_session_split ||
            arm.samples.size() > before) {
          ++arm.units;
        }
      }
      break;
    }
    case SessionUnit::succeeding_process: {
      for (std::size_t s = 0; s < log.session_count(); ++s) {
        const auto session = log.session(s);
        auto sets = attribute_clicks(session, config, spec.signal_mode);
        std::vector<std::size_t> search_positions;
        for (std::size_t i = 0; i < session.size(); ++i) {
          if (config.is_search(session[i].action)) search_positions.push_back(i);
        }
        auto take = [&](std::size_t search_slot, ArmData& arm) {
          if (sets[search_slot].clicks.size() < min_signals) return;
          ++arm.units;
          arm.samples.push_back(sets[search_slot]);
        };
        for (std::size_t i = 0; i < session.size(); ++i) {
          const auto& action = session[i].action;
          if (action == config.service_action) {
            // First search after the service usage.
            const auto it = std::upper_bound(search_positions.begin(),
                                             search_positions.end(), i);
            if (it != search_positions.end()) {
              take(static_cast<std::size_t>(it - search_positions.begin()),
                   with_arm);
            }
          } else if (action == config.service_search_action &&
                     (i == 0 ||
                      session[i - 1].action != config.service_action)) {
            const auto it = std::lower_bound(search_positions.begin(),
                                             search_positions.end(), i);
            take(static_cast<std::size_t>(it - search_positions.begin()),
                 without_arm);
          }
        }
      }
      break;
    }
    case SessionUnit::window_split:
    case SessionUnit::window_nosplit: {
      // Both arms anchor at the search submit so their windows are depth-
      // comparable; the with-arm is the searches right after a service usage.
      const auto with_windows =
          service_search_windows(log, config, spec.window_n);
      const auto without_windows = baseline_windows(log, config, spec.window_n);
      auto consume = [&](const std::vector<EventWindow>& windows, ArmData& arm) {
        for (const auto& window : windows) {
          ++arm.units;
          if (spec.unit == SessionUnit::window_split) {
            add_split_samples(window_span(window), config, spec, min_signals,
                              arm);
          } else {
            auto pooled = pool_clicks(window_span(window), config,
                                      spec.signal_mode);
            if (pooled.clicks.size() >= min_signals) {
              arm.samples.push_back(std::move(pooled));
            }
          }
        }
      };
      consume(with_windows, with_arm);
      consume(without_windows, without_arm);
      break;
    }
  }

  PrecisionReport report;
  report.spec = spec;
  report.k = k;

  std::optional<ArmStats> with_stats;
  std::optional<ArmStats> without_stats;
  if (with_arm.units > 0) {
    with_stats = summarize(with_arm, k);
    report.with_service = with_stats->summary;
  }
  if (without_arm.units > 0) {
    without_stats = summarize(without_arm, k);
    report.without_service = without_stats->summary;
  }
  if (with_stats && without_stats) {
    report.z_p_at_k = compare_means(
        with_stats->p_values, with_stats->summary.mean_p_at_k,
        without_stats->p_values, without_stats->summary.mean_p_at_k);
    report.z_map =
        compare_means(with_stats->ap_values, with_stats->summary.map_at_k,
                      without_stats->ap_values, without_stats->summary.map_at_k);
  }
  return report;
}

std::vector<MapCurvePoint> map_curve(const EventLog& log,
                                     const SignalConfig& config, bool split,
                                     std::size_t k, std::size_t n_max) {
  std::vector<MapCurvePoint> curve;
  curve.reserve(n_max + 1);
  UnitSpec spec;
  spec.unit = split ? SessionUnit::window_split : SessionUnit::window_nosplit;
  for (std::size_t n = 0; n <= n_max; ++n) {
    spec.window_n = n;
    const auto report = unit_report(log, config, spec, k);
    MapCurvePoint point;
    point.n = n;
    if (report.with_service) point.map_with = report.with_service->map_at_k;
    if (report.without_service) {
      point.map_without = report.without_service->map_at_k;
    }
    curve.push_back(point);
  }
  return curve;
}

std::string precision_report_to_csv(const PrecisionReport& report,
                                    std::string_view manifest_comment) {
  std::string out =
      "unit,signal_mode,k,arm,mean_p_at_k,map_at_k,units,mean_searches,"
      "z_p,z_p_pvalue,z_map,z_map_pvalue\n";

  const auto row = [&](const char* arm, const std::optional<ArmSummary>& s) {
    out += unit_name(report.spec.unit);
    out += ',';
    out += mode_name(report.spec.signal_mode);
    out += ',' + std::to_string(report.k);
    out += ',';
    out += arm;
    out += ',';
    if (s) out += detail::fixed6(s->mean_p_at_k);
    out += ',';
    if (s) out += detail::fixed6(s->map_at_k);
    out += ',';
    if (s) out += std::to_string(s->unit_count);
    out += ',';
    if (s) out += detail::fixed6(s->mean_searches_per_unit);
    out += ',';
    if (report.z_p_at_k) out += detail::fixed6(report.z_p_at_k->statistic);
    out += ',';
    if (report.z_p_at_k) out += detail::sig6(report.z_p_at_k->p_value);
    out += ',';
    if (report.z_map) out += detail::fixed6(report.z_map->statistic);
    out += ',';
    if (report.z_map) out += detail::sig6(report.z_map->p_value);
    out += '\n';
  };
  row("with", report.with_service);
  row("without", report.without_service);

  if (!manifest_comment.empty()) {
    out += manifest_comment;
    out += '\n';
  }
  return out;
}

std::string map_curve_to_csv(const std::vector<MapCurvePoint>& curve,
                             std::string_view manifest_comment) {
  std::string out = "n,map_with,map_without\n";
  for (const auto& point : curve) {
    out += std::to_string(point.n);
    out += ',';
    if (point.map_with) out += detail::fixed6(*point.map_with);
    out += ',';
    if (point.map_without) out += detail::fixed6(*point.map_without);
    out += '\n';
  }
  if (!manifest_comment.empty()) {
    out += manifest_comment;
    out += '\n';
  }
  return out;
}

}  // namespace loguse
