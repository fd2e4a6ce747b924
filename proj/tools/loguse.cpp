// loguse command-line front door: validate, usefulness, precision,
// patterns, simulate. Exit codes: 0 ok, 1 data-quality failure,
// 2 usage/config error, 3 I/O error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "loguse/errors.hpp"
#include "loguse/event_log.hpp"
#include "loguse/manifest.hpp"
#include "loguse/patterns.hpp"
#include "loguse/relevance.hpp"
#include "loguse/sessionize.hpp"
#include "loguse/signal_config.hpp"
#include "loguse/synthgen.hpp"
#include "loguse/usefulness.hpp"
#include "loguse/version.hpp"

namespace {

using namespace loguse;

constexpr int kOk = 0;
constexpr int kDataQuality = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

RunManifest make_manifest(const std::string& command,
                          const std::string& log_path,
                          const std::string& config_path) {
  RunManifest manifest;
  manifest.command = command;
  manifest.version = kVersion;
  if (!log_path.empty()) {
    manifest.add("log", log_path);
    manifest.add("log_digest", file_digest(log_path));
  }
  if (!config_path.empty()) {
    manifest.add("config", config_path);
    manifest.add("config_digest", file_digest(config_path));
  }
  return manifest;
}

struct ValidateArgs {
  std::string log_path;
  std::string config_path;
  std::size_t max_rejections = 100;
};

int run_validate(const ValidateArgs& args) {
  const auto config = SignalConfig::load(args.config_path);
  LoadOptions options;
  options.config = &config;
  options.max_recorded_rejections = args.max_rejections;
  const auto result = load_log_file(args.log_path, options);
  const auto& report = result.report;

  std::cout << "lines: " << report.total_lines << " accepted: " << report.accepted
            << " rejected: " << report.rejected << '\n';
  std::cout << "sessions: " << result.log.session_count()
            << " events: " << result.log.event_count() << '\n';
  for (const auto& [line, reason] : report.rejections) {
    std::cout << "line " << line << ": " << reason << '\n';
  }
  if (report.rejected > report.rejections.size()) {
    std::cout << "(" << report.rejected - report.rejections.size()
              << " more rejections not shown)\n";
  }
  if (!report.unknown_actions.empty()) {
    // Sorted for stable output.
    std::map<std::string, std::size_t> sorted(report.unknown_actions.begin(),
                                              report.unknown_actions.end());
    std::cout << "unknown actions:\n";
    for (const auto& [action, count] : sorted) {
      std::cout << "  " << action << ": " << count << '\n';
    }
  }
  return report.rejected == 0 ? kOk : kDataQuality;
}

struct UsefulnessArgs {
  std::string log_path;
  std::string config_path;
  std::string out_path = "-";
  std::size_t n_max = 17;
  bool exclude_truncated = false;
  bool raw_local = false;
  std::vector<std::string> negative_actions;
};

int run_usefulness(const UsefulnessArgs& args) {
  const auto config = SignalConfig::load(args.config_path);
  const auto loaded = load_log_file(args.log_path);

  CurveOptions options;
  options.exclude_truncated = args.exclude_truncated;
  ActionSet negative_set;
  for (const auto& action : args.negative_actions) negative_set.insert(action);
  if (!negative_set.empty()) options.negative_set = &negative_set;

  auto manifest = make_manifest("usefulness", args.log_path, args.config_path);
  manifest.add("n_max", std::to_string(args.n_max));
  if (args.exclude_truncated) manifest.add("exclude_truncated", "true");
  if (!negative_set.empty()) {
    std::string joined;
    std::vector<std::string> sorted(args.negative_actions);
    std::sort(sorted.begin(), sorted.end());
    for (const auto& a : sorted) {
      if (!joined.empty()) joined += '+';
      joined += a;
    }
    manifest.add("negative_set", joined);
  }

  std::string csv;
  try {
    const auto report =
        usefulness_report(loaded.log, config, args.n_max, options);
    std::string trailer;
    if (report.local) {
      trailer += "# local_usefulness=" + std::to_string(report.local->value) +
                 " with_usage=" + std::to_string(report.local->processes_with_usage) +
                 " processes=" + std::to_string(report.local->total_processes);
      if (args.raw_local) {
        trailer +=
            " raw_usage_ratio=" + std::to_string(report.local->raw_usage_ratio);
      }
      trailer += '\n';
    }
    csv = curve_to_csv(report.curve, manifest.comment_line());
    // Local usefulness comment sits between the rows and the manifest.
    const auto manifest_pos = csv.rfind("# loguse");
    csv.insert(manifest_pos, trailer);
  } catch (const UndefinedMetricError&) {
    csv = curve_to_csv({}, manifest.comment_line());
  }
  write_output(args.out_path, csv);
  return kOk;
}

struct PrecisionArgs {
  std::string log_path;
  std::string config_path;
  std::string out_path = "-";
  std::string unit = "window-nosplit";
  std::string signal_mode = "click";
  std::size_t window_n = 7;
  std::size_t k = 20;
  std::size_t min_signals = 0;
  bool curve = false;
};

int run_precision(const PrecisionArgs& args) {
  const auto config = SignalConfig::load(args.config_path);
  const auto loaded = load_log_file(args.log_path);

  UnitSpec spec;
  if (args.unit == "session") {
    spec.unit = SessionUnit::whole_session_split;
  } else if (args.unit == "filtered") {
    spec.unit = SessionUnit::filtered_processes;
  } else if (args.unit == "succeeding") {
    spec.unit = SessionUnit::succeeding_process;
  } else if (args.unit == "window-split") {
    spec.unit = SessionUnit::window_split;
  } else if (args.unit == "window-nosplit") {
    spec.unit = SessionUnit::window_nosplit;
  } else {
    throw ConfigError("unknown unit: " + args.unit);
  }
  spec.window_n = args.window_n;
  spec.signal_mode = args.signal_mode == "all" ? SignalMode::all_positive
                                               : SignalMode::click_through;
  spec.min_signals = args.min_signals;

  auto manifest = make_manifest("precision", args.log_path, args.config_path);
  manifest.add("unit", args.unit);
  manifest.add("signal_mode", args.signal_mode);
  manifest.add("n", std::to_string(args.window_n));
  manifest.add("k", std::to_string(args.k));
  if (args.min_signals > 0) {
    manifest.add("min_signals", std::to_string(args.min_signals));
  }

  std::string csv;
  if (args.curve) {
    const bool split = spec.unit == SessionUnit::window_split;
    const auto curve =
        map_curve(loaded.log, config, split, args.k, args.window_n);
    csv = map_curve_to_csv(curve, manifest.comment_line());
  } else {
    const auto report = unit_report(loaded.log, config, spec, args.k);
    csv = precision_report_to_csv(report, manifest.comment_line());
  }
  write_output(args.out_path, csv);
  return kOk;
}

struct PatternsArgs {
  std::string log_path;
  std::string config_path;
  std::string out_path = "-";
  std::string arm = "with";
  std::string format = "dot";
  std::size_t window_n = 7;
  double node_threshold = 0.02;
  double success_threshold = 0.005;
  bool collapse = true;
  std::size_t limit = 50;
};

int run_patterns(const PatternsArgs& args) {
  const auto config = SignalConfig::load(args.config_path);
  const auto loaded = load_log_file(args.log_path);

  std::vector<EventWindow> windows;
  if (args.arm == "with") {
    windows = service_windows(loaded.log, config, args.window_n);
  } else if (args.arm == "without") {
    windows = baseline_windows(loaded.log, config, args.window_n);
  } else {
    throw ConfigError("unknown arm: " + args.arm);
  }

  PatternOptions options;
  options.node_threshold = args.node_threshold;
  options.success_threshold = args.success_threshold;
  options.collapse = args.collapse;
  const auto tree = mine_patterns(windows, config, options);

  auto manifest = make_manifest("patterns", args.log_path, args.config_path);
  manifest.add("arm", args.arm);
  manifest.add("n", std::to_string(args.window_n));
  manifest.add("node_threshold", std::to_string(args.node_threshold));
  manifest.add("success_threshold", std::to_string(args.success_threshold));
  manifest.add("collapse", args.collapse ? "true" : "false");

  std::string output;
  if (args.format == "dot") {
    output = export_dot(tree);
    output += "// " + manifest.comment_line() + '\n';
  } else if (args.format == "csv") {
    output = paths_to_csv(top_paths(tree, args.limit), manifest.comment_line());
  } else {
    throw ConfigError("unknown format: " + args.format);
  }
  write_output(args.out_path, output);
  return kOk;
}

struct SimulateArgs {
  std::string params_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> report_n;
};

int run_simulate(const SimulateArgs& args) {
  auto params = synth::GenParams::load(args.params_path);
  if (args.seed) params.seed = *args.seed;

  std::vector<std::size_t> report_n = args.report_n;
  if (report_n.empty()) {
    // The params file may declare the sidecar's window sizes.
    std::ifstream in(args.params_path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_object() && j.contains("report_n") && j["report_n"].is_array()) {
      for (const auto& n : j["report_n"]) {
        report_n.push_back(n.get<std::size_t>());
      }
    }
  }
  if (report_n.empty()) report_n = {5, 7, 17};

  {
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + args.out_path);
    synth::generate_jsonl(params, out);
    if (!out) throw IoError("write failed: " + args.out_path);
  }

  nlohmann::json sidecar;
  sidecar["params"] = nlohmann::json::parse(params.to_json_text());
  sidecar["version"] = kVersion;
  auto& expected = sidecar["expected"];
  expected = nlohmann::json::array();
  for (const std::size_t n : report_n) {
    const auto metrics = synth::expected_metrics(params, n);
    expected.push_back({{"n", n},
                        {"local", metrics.local},
                        {"global_with", metrics.global_with},
                        {"global_without", metrics.global_without}});
  }
  const std::string sidecar_path = args.out_path + ".expected.json";
  std::ofstream side(sidecar_path, std::ios::binary);
  if (!side) throw IoError("cannot open output file: " + sidecar_path);
  side << sidecar.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Session-log analytics: usefulness, precision and path patterns"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("loguse ") + kVersion);

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand(
      "validate", "Check a JSONL event log against the signal config");
  validate->add_option("--log", validate_args.log_path, "Event log (JSONL)")
      ->required();
  validate->add_option("--config", validate_args.config_path, "Signal config")
      ->required();
  validate->add_option("--max-rejections", validate_args.max_rejections,
                       "Rejection detail cap");

  UsefulnessArgs usefulness_args;
  auto* usefulness = app.add_subcommand(
      "usefulness", "Local usefulness and the global usefulness curve");
  usefulness->add_option("--log", usefulness_args.log_path, "Event log (JSONL)")
      ->required();
  usefulness->add_option("--config", usefulness_args.config_path, "Signal config")
      ->required();
  usefulness->add_option("--out", usefulness_args.out_path,
                         "Output CSV path, '-' for stdout");
  usefulness->add_option("--n", usefulness_args.n_max, "Largest window size");
  usefulness->add_flag("--exclude-truncated", usefulness_args.exclude_truncated,
                       "Drop windows cut short by the session end");
  usefulness->add_flag("--raw-local", usefulness_args.raw_local,
                       "Also report the raw usages-per-process ratio");
  usefulness->add_option("--negative-set", usefulness_args.negative_actions,
                         "Negative signal actions (comma separated)")
      ->delimiter(',');

  PrecisionArgs precision_args;
  auto* precision =
      app.add_subcommand("precision", "Click-through P@k / MAP@k comparison");
  precision->add_option("--log", precision_args.log_path, "Event log (JSONL)")
      ->required();
  precision->add_option("--config", precision_args.config_path, "Signal config")
      ->required();
  precision->add_option("--out", precision_args.out_path,
                        "Output CSV path, '-' for stdout");
  precision
      ->add_option("--unit", precision_args.unit,
                   "session|filtered|succeeding|window-split|window-nosplit")
      ->check(CLI::IsMember({"session", "filtered", "succeeding",
                             "window-split", "window-nosplit"}));
  precision->add_option("--signal-mode", precision_args.signal_mode,
                        "click|all")
      ->check(CLI::IsMember({"click", "all"}));
  precision->add_option("--n", precision_args.window_n, "Window size");
  precision->add_option("--k", precision_args.k, "Precision cutoff");
  precision->add_option("--min-signals", precision_args.min_signals,
                        "Keep only searches with at least this many signals");
  precision->add_flag("--map-curve", precision_args.curve,
                      "Emit MAP per window size 0..n instead of one report");

  PatternsArgs patterns_args;
  auto* patterns =
      app.add_subcommand("patterns", "Mine event-path patterns from windows");
  patterns->add_option("--log", patterns_args.log_path, "Event log (JSONL)")
      ->required();
  patterns->add_option("--config", patterns_args.config_path, "Signal config")
      ->required();
  patterns->add_option("--out", patterns_args.out_path,
                       "Output path, '-' for stdout");
  patterns->add_option("--arm", patterns_args.arm, "with|without")
      ->check(CLI::IsMember({"with", "without"}));
  patterns->add_option("--format", patterns_args.format, "dot|csv")
      ->check(CLI::IsMember({"dot", "csv"}));
  patterns->add_option("--n", patterns_args.window_n, "Window size");
  patterns->add_option("--node-threshold", patterns_args.node_threshold,
                       "Keep non-success nodes with probability above this");
  patterns->add_option("--success-threshold", patterns_args.success_threshold,
                       "Keep success nodes with probability above this");
  patterns->add_flag("--collapse,!--no-collapse", patterns_args.collapse,
                     "Merge consecutive identical actions");
  patterns->add_option("--limit", patterns_args.limit, "Path count for csv");

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand(
      "simulate", "Generate a synthetic log with an expected-metrics sidecar");
  simulate->add_option("--params", simulate_args.params_path,
                       "Generator parameters (JSON)")
      ->required();
  simulate->add_option("--out", simulate_args.out_path, "Output JSONL path")
      ->required();
  std::uint64_t seed_value = 0;
  auto* seed_opt =
      simulate->add_option("--seed", seed_value, "Override the params seed");
  simulate->add_option("--report-n", simulate_args.report_n,
                       "Window sizes for the sidecar (comma separated)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (seed_opt->count() > 0) simulate_args.seed = seed_value;

  try {
    if (validate->parsed()) return run_validate(validate_args);
    if (usefulness->parsed()) return run_usefulness(usefulness_args);
    if (precision->parsed()) return run_precision(precision_args);
    if (patterns->parsed()) return run_patterns(patterns_args);
    if (simulate->parsed()) return run_simulate(simulate_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
