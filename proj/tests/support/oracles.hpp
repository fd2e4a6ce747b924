#pragma once

// Independent oracles for the acceptance and property suites. These stay
// deliberately naive and share no code with the library implementations
// they check.

#include <cmath>
#include <cstdint>
#include <set>

#include "loguse/event_log.hpp"
#include "loguse/relevance.hpp"
#include "loguse/signal_config.hpp"

namespace oracles {

struct BruteCounts {
  std::uint64_t successes = 0;
  std::uint64_t total = 0;
};

// Position scan: for every occurrence of the service action at index i,
// look at session positions i+1 .. i+n for a success action.
inline BruteCounts brute_service_usefulness(const loguse::EventLog& log,
                                            const loguse::SignalConfig& config,
                                            std::size_t n) {
  BruteCounts counts;
  for (std::size_t s = 0; s < log.session_count(); ++s) {
    const auto session = log.session(s);
    for (std::size_t i = 0; i < session.size(); ++i) {
      if (session[i].action != config.service_action) continue;
      ++counts.total;
      for (std::size_t j = i + 1; j <= i + n && j < session.size(); ++j) {
        if (config.success_actions.count(session[j].action) > 0) {
          ++counts.successes;
          break;
        }
      }
    }
  }
  return counts;
}

// Same scan anchored at service searches not immediately preceded by the
// service action.
inline BruteCounts brute_baseline_usefulness(const loguse::EventLog& log,
                                             const loguse::SignalConfig& config,
                                             std::size_t n) {
  BruteCounts counts;
  for (std::size_t s = 0; s < log.session_count(); ++s) {
    const auto session = log.session(s);
    for (std::size_t i = 0; i < session.size(); ++i) {
      if (session[i].action != config.service_search_action) continue;
      if (i > 0 && session[i - 1].action == config.service_action) continue;
      ++counts.total;
      for (std::size_t j = i + 1; j <= i + n && j < session.size(); ++j) {
        if (config.success_actions.count(session[j].action) > 0) {
          ++counts.successes;
          break;
        }
      }
    }
  }
  return counts;
}

// AP via the precision-at-relevant-positions formulation: walk positions
// 1..k, accumulate precision at each relevant position, divide by the
// number of relevant positions.
inline double ap_positional(const loguse::ClickSet& set, std::size_t k) {
  std::set<int> relevant;
  for (const auto& click : set.clicks) {
    if (click.rank_bearing && static_cast<std::size_t>(click.rank) <= k) {
      relevant.insert(click.rank);
    }
  }
  if (relevant.empty()) return 0.0;
  std::size_t seen = 0;
  double sum = 0.0;
  for (int position = 1; position <= static_cast<int>(k); ++position) {
    if (relevant.count(position) > 0) {
      ++seen;
      sum += static_cast<double>(seen) / static_cast<double>(position);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

// Composite-Simpson integration of the standard normal density over
// [z, 45]; the mass beyond 45 is far below double precision.
inline double normal_sf_integrated(double z) {
  if (z >= 45.0) return 0.0;
  if (z < 0.0) return 1.0 - normal_sf_integrated(-z);
  constexpr int kSteps = 10000;  // even
  const double a = z;
  const double b = 45.0;
  const double h = (b - a) / kSteps;
  const auto pdf = [](double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * 3.14159265358979323846);
  };
  double sum = pdf(a) + pdf(b);
  for (int i = 1; i < kSteps; ++i) {
    sum += pdf(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

inline double chi_squared1_sf_integrated(double x) {
  if (x <= 0.0) return 1.0;
  return 2.0 * normal_sf_integrated(std::sqrt(x));
}

}  // namespace oracles
