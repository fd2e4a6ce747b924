#include "loguse/synthgen.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "loguse/errors.hpp"
#include "loguse/rng.hpp"

namespace loguse::synth {

namespace {

using nlohmann::json;

constexpr int kRankCount = 20;

int draw_rank(CounterRng& rng, const std::vector<double>& weights) {
  if (weights.empty()) return static_cast<int>(rng.next_in(1, kRankCount));
  double total = 0.0;
  for (const double w : weights) total += w;
  double u = rng.next_unit() * total;
  for (int i = 0; i < kRankCount; ++i) {
    u -= weights[static_cast<std::size_t>(i)];
    if (u < 0.0) return i + 1;
  }
  return kRankCount;
}

std::uint64_t draw_process_count(CounterRng& rng, double mean) {
  const double u = rng.next_unit();
  if (mean <= 1.0) return 1;
  const double p = 1.0 / mean;
  const double k = 1.0 + std::floor(std::log1p(-u) / std::log1p(-p));
  return static_cast<std::uint64_t>(std::min(k, 10000.0));
}

double uniform_cdf(int t, int lo, int hi) {
  if (t < lo) return 0.0;
  if (t >= hi) return 1.0;
  return static_cast<double>(t - lo + 1) / static_cast<double>(hi - lo + 1);
}

}  // namespace

void GenParams::validate() const {
  const auto probability = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (processes_per_session < 1.0) {
    throw ConfigError("generator: processes_per_session must be >= 1");
  }
  if (!probability(service_usage_prob)) {
    throw ConfigError("generator: service_usage_prob must be in [0, 1]");
  }
  if (!probability(base_success_prob) || !probability(service_lift) ||
      base_success_prob + service_lift > 1.0) {
    throw ConfigError(
        "generator: base_success_prob + service_lift must stay in [0, 1]");
  }
  if (views_min < 0 || views_max < views_min) {
    throw ConfigError("generator: views range must satisfy 0 <= min <= max");
  }
  if (!click_rank_weights.empty()) {
    if (click_rank_weights.size() != kRankCount) {
      throw ConfigError("generator: click_rank_weights needs 20 entries");
    }
    double total = 0.0;
    for (const double w : click_rank_weights) {
      if (w < 0.0) throw ConfigError("generator: negative rank weight");
      total += w;
    }
    if (total <= 0.0) throw ConfigError("generator: rank weights sum to zero");
  }
  if (!probability(terminal_prob)) {
    throw ConfigError("generator: terminal_prob must be in [0, 1]");
  }
}

std::vector<Event> generate_session(const GenParams& params,
                                    std::uint64_t session_index) {
  CounterRng rng(params.seed, session_index);
  const std::string sid = "s" + std::to_string(session_index);
  std::vector<Event> events;
  std::int64_t ts = 0;
  std::uint64_t record_seq = 0;

  const auto push = [&](std::string action) {
    events.push_back({sid, ts, std::move(action), std::nullopt, std::nullopt,
                      std::nullopt});
    ts += 1000;
  };
  const auto push_click = [&](std::string action, const std::string& rid,
                              int rank) {
    Event event{sid, ts, std::move(action), rid, rank, std::nullopt};
    events.push_back(std::move(event));
    ts += 1000;
  };
  const auto next_rid = [&] {
    return "d" + std::to_string(session_index) + "_" +
           std::to_string(record_seq++);
  };

  const std::uint64_t processes =
      draw_process_count(rng, params.processes_per_session);
  for (std::uint64_t p = 0; p < processes; ++p) {
    push("enter_search_term");
    const bool uses_service = rng.next_unit() < params.service_usage_prob;
    if (uses_service) push("CTS_select");
    push("CTS_search");

    const auto views = rng.next_in(params.views_min, params.views_max);
    for (std::int64_t v = 0; v < views; ++v) {
      push_click("view_record", next_rid(),
                 draw_rank(rng, params.click_rank_weights));
    }

    const double success_prob =
        params.base_success_prob + (uses_service ? params.service_lift : 0.0);
    if (rng.next_unit() < success_prob) {
      // Inspect the record, then grab its full text: the success signal is
      // the fulltext click, preceded by the detail view of the same record.
      const std::string rid = next_rid();
      const int rank = draw_rank(rng, params.click_rank_weights);
      push_click("view_record", rid, rank);
      push_click("goto_fulltext", rid, rank);
    }
  }
  if (rng.next_unit() < params.terminal_prob) push("logout");
  return events;
}

EventLog generate(const GenParams& params) {
  params.validate();
  std::vector<Event> events;
  for (std::uint64_t s = 0; s < params.sessions; ++s) {
    auto session = generate_session(params, s);
    events.insert(events.end(), std::make_move_iterator(session.begin()),
                  std::make_move_iterator(session.end()));
  }
  return EventLog::from_events(std::move(events));
}

void generate_jsonl(const GenParams& params, std::ostream& out) {
  params.validate();
  for (std::uint64_t s = 0; s < params.sessions; ++s) {
    for (const auto& event : generate_session(params, s)) {
      out << to_jsonl_line(event) << '\n';
    }
  }
}

ExpectedMetrics expected_metrics(const GenParams& params, std::size_t n) {
  params.validate();
  ExpectedMetrics expected;
  expected.local = params.service_usage_prob;
  // Service windows anchor at CTS_select, so the goto_fulltext success sits
  // V + 3 followers deep (CTS_search, V views, detail view, fulltext).
  // Baseline windows anchor at CTS_search, one step shallower.
  const int horizon = static_cast<int>(std::min<std::size_t>(n, 1u << 20));
  expected.global_with =
      (params.base_success_prob + params.service_lift) *
      uniform_cdf(horizon - 3, params.views_min, params.views_max);
  expected.global_without =
      params.base_success_prob *
      uniform_cdf(horizon - 2, params.views_min, params.views_max);
  return expected;
}

GenParams GenParams::from_json_text(std::string_view text) {
  const json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw ConfigError("generator params: malformed JSON");
  }
  GenParams params;
  const auto number = [&](const char* key, double fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) {
      throw ConfigError(std::string("generator params: '") + key +
                        "' must be a number");
    }
    return it->get<double>();
  };
  params.sessions =
      static_cast<std::uint64_t>(number("sessions", 0.0));
  params.seed = static_cast<std::uint64_t>(number("seed", 0.0));
  params.processes_per_session = number("processes_per_session", 1.0);
  params.service_usage_prob = number("service_usage_prob", 0.0);
  params.base_success_prob = number("base_success_prob", 0.0);
  params.service_lift = number("service_lift", 0.0);
  params.views_min = static_cast<int>(number("views_min", 1.0));
  params.views_max = static_cast<int>(number("views_max", 3.0));
  params.terminal_prob = number("terminal_prob", 0.5);
  if (const auto it = j.find("click_rank_weights"); it != j.end()) {
    if (!it->is_array()) {
      throw ConfigError("generator params: click_rank_weights must be an array");
    }
    for (const auto& w : *it) {
      if (!w.is_number()) {
        throw ConfigError("generator params: rank weights must be numbers");
      }
      params.click_rank_weights.push_back(w.get<double>());
    }
  }
  params.validate();
  return params;
}

GenParams GenParams::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open generator params: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string GenParams::to_json_text() const {
  json j;
  j["sessions"] = sessions;
  j["seed"] = seed;
  j["processes_per_session"] = processes_per_session;
  j["service_usage_prob"] = service_usage_prob;
  j["base_success_prob"] = base_success_prob;
  j["service_lift"] = service_lift;
  j["views_min"] = views_min;
  j["views_max"] = views_max;
  j["terminal_prob"] = terminal_prob;
  if (!click_rank_weights.empty()) j["click_rank_weights"] = click_rank_weights;
  return j.dump(2);
}

}  // namespace loguse::synth
