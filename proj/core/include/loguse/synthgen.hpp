#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "loguse/event.hpp"
#include "loguse/event_log.hpp"

namespace loguse::synth {

// Parametric session generator with known ground truth. Every draw is a
// pure function of (seed, session index, draw index), so output is
// bit-reproducible for fixed parameters.
//
// Each session holds a geometric number of search processes. A process is
//   enter_search_term,
//   then CTS_select + CTS_search            with probability q,
//        CTS_search alone                   otherwise,
//   then V view_record clicks, V uniform in [views_min, views_max],
//   then, with probability b + l (service) or b (no service), a success:
//   a view_record plus a goto_fulltext on the same record.
// Sessions end with logout or a silent drop-off. Labels match
// SignalConfig::cts_defaults().
struct GenParams {
  std::uint64_t sessions = 0;
  std::uint64_t seed = 0;
  double processes_per_session = 1.0;  // geometric mean, >= 1
  double service_usage_prob = 0.0;     // q
  double base_success_prob = 0.0;      // b
  double service_lift = 0.0;           // l, with b + l in [0, 1]
  int views_min = 1;
  int views_max = 3;
  // Weights for click ranks 1..20; empty means uniform.
  std::vector<double> click_rank_weights;
  double terminal_prob = 0.5;  // chance a session ends with logout

  void validate() const;  // throws ConfigError

  static GenParams from_json_text(std::string_view text);
  static GenParams load(const std::filesystem::path& path);
  std::string to_json_text() const;
};

// Events of one session, timestamps advancing 1000 ms per event.
std::vector<Event> generate_session(const GenParams& params,
                                    std::uint64_t session_index);

// Whole log in memory.
EventLog generate(const GenParams& params);

// Streams the log as JSONL without materializing it.
void generate_jsonl(const GenParams& params, std::ostream& out);

struct ExpectedMetrics {
  double local = 0.0;           // P(process uses the service) = q
  double global_with = 0.0;     // service-window success rate at window n
  double global_without = 0.0;  // baseline-window success rate at window n
};

// Closed-form expectations implied by the generative model, including the
// truncation factor for windows too small to reach the success depth.
// Exact when windows stay inside their own search process, which holds
// whenever processes_per_session is 1; with longer sessions a window can
// spill into the next process and pick up its signals, making these
// expectations a lower bound.
ExpectedMetrics expected_metrics(const GenParams& params, std::size_t n);

}  // namespace loguse::synth
