#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loguse/sessionize.hpp"
#include "loguse/signal_config.hpp"

namespace loguse {

struct PatternNode {
  std::string action;
  std::size_t depth = 0;     // root is 0
  std::uint64_t count = 0;   // windows whose path passes through this node
  double probability = 0.0;  // count / total_windows (per-cohort)
  double conditional = 0.0;  // count / parent count (per-parent)
  bool is_success = false;
  bool repeated = false;  // absorbed a run of >= 2 identical actions
  std::vector<PatternNode> children;  // ordered by action label
};

struct PatternTree {
  std::string root_action;
  std::uint64_t total_windows = 0;
  bool collapsed = false;
  PatternNode root;
};

struct PatternOptions {
  // Non-success nodes with probability <= node_threshold are pruned with
  // their whole subtree; success nodes use success_threshold instead.
  double node_threshold = 0.02;
  double success_threshold = 0.005;
  // Merge consecutive identical actions into one node marked repeated.
  bool collapse = true;
};

struct PatternPath {
  std::string text;  // "a>>b>>c"
  std::uint64_t count = 0;
  double probability = 0.0;
};

// Prefix tree over window event sequences, the initiating event as root.
// An empty window set yields a root-only tree with zero count.
PatternTree mine_patterns(const std::vector<EventWindow>& windows,
                          const SignalConfig& config,
                          const PatternOptions& options = {});

// Root-to-leaf paths, ordered by count descending, ties broken
// lexicographically by path text. At most `limit` entries.
std::vector<PatternPath> top_paths(const PatternTree& tree, std::size_t limit);

// Graphviz DOT rendering; success nodes are filled green, probabilities
// show 3 decimals, repeated nodes carry a "+" suffix.
std::string export_dot(const PatternTree& tree);

// CSV with header path,count,probability.
std::string paths_to_csv(const std::vector<PatternPath>& paths,
                         std::string_view manifest_comment = {});

}  // namespace loguse
