#include "loguse/event.hpp"

#include "json.hpp"

namespace loguse {

namespace {

using nlohmann::json;

bool fail(std::string* error, const char* reason) {
  if (error) *error = reason;
  return false;
}

bool parse_into(const json& j, Event& out, std::string* error) {
  if (!j.is_object()) return fail(error, "not a JSON object");

  const auto sid = j.find("sid");
  if (sid == j.end() || !sid->is_string() ||
      sid->get_ref<const std::string&>().empty()) {
    return fail(error, "missing or empty sid");
  }

  const auto ts = j.find("ts");
  if (ts == j.end()) return fail(error, "missing ts");
  if (!ts->is_number_integer() || ts->is_number_float()) {
    return fail(error, "non-integer ts");
  }
  const auto ts_value = ts->get<std::int64_t>();
  if (ts_value < 0) return fail(error, "negative ts");

  const auto action = j.find("action");
  if (action == j.end() || !action->is_string() ||
      action->get_ref<const std::string&>().empty()) {
    return fail(error, "missing or empty action");
  }

  out.session_id = sid->get<std::string>();
  out.timestamp = ts_value;
  out.action = action->get<std::string>();
  out.record_id.reset();
  out.rank.reset();
  out.query.reset();

  if (const auto rid = j.find("rid"); rid != j.end()) {
    if (!rid->is_string()) return fail(error, "non-string rid");
    if (rid->get_ref<const std::string&>().empty()) {
      return fail(error, "empty rid");
    }
    out.record_id = rid->get<std::string>();
  }

  if (const auto rank = j.find("rank"); rank != j.end()) {
    if (!rank->is_number_integer() || rank->is_number_float()) {
      return fail(error, "non-integer rank");
    }
    const auto rank_value = rank->get<std::int64_t>();
    if (rank_value < 1) return fail(error, "rank < 1");
    if (!out.record_id) return fail(error, "rank without record_id");
    out.rank = static_cast<int>(rank_value);
  }

  if (const auto q = j.find("q"); q != j.end()) {
    if (!q->is_string()) return fail(error, "non-string q");
    out.query = q->get<std::string>();
  }

  return true;
}

}  // namespace

std::optional<Event> parse_event(std::string_view line, std::string* error) {
  const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    if (error) *error = "malformed JSON";
    return std::nullopt;
  }
  Event event;
  if (!parse_into(j, event, error)) return std::nullopt;
  return event;
}

std::string to_jsonl_line(const Event& event) {
  json j{{"sid", event.session_id},
         {"ts", event.timestamp},
         {"action", event.action}};
  if (event.record_id) j["rid"] = *event.record_id;
  if (event.rank) j["rank"] = *event.rank;
  if (event.query) j["q"] = *event.query;
  return j.dump();
}

}  // namespace loguse
