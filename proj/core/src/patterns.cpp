#include "loguse/patterns.hpp"

#include <algorithm>

#include "format.hpp"

namespace loguse {

namespace {

struct PathElement {
  const std::string* action;
  bool repeated;
};

// Run-length collapse of consecutive identical actions.
std::vector<PathElement> window_path(const EventWindow& window, bool collapse) {
  std::vector<PathElement> path;
  path.push_back({&window.initial->action, false});
  for (const auto& event : window.followers) {
    if (collapse && *path.back().action == event.action) {
      path.back().repeated = true;
      continue;
    }
    path.push_back({&event.action, false});
  }
  return path;
}

PatternNode* child_for(PatternNode& node, const std::string& action) {
  const auto it = std::lower_bound(
      node.children.begin(), node.children.end(), action,
      [](const PatternNode& child, const std::string& a) {
        return child.action < a;
      });
  if (it != node.children.end() && it->action == action) return &*it;
  PatternNode child;
  child.action = action;
  child.depth = node.depth + 1;
  return &*node.children.insert(it, std::move(child));
}

void annotate(PatternNode& node, double total, double parent_count,
              const SignalConfig& config) {
  node.probability = total > 0 ? static_cast<double>(node.count) / total : 0.0;
  node.conditional =
      parent_count > 0 ? static_cast<double>(node.count) / parent_count : 0.0;
  node.is_success = config.is_success(node.action);
  for (auto& child : node.children) {
    annotate(child, total, static_cast<double>(node.count), config);
  }
}

void prune(PatternNode& node, const PatternOptions& options) {
  std::erase_if(node.children, [&](const PatternNode& child) {
    const double threshold =
        child.is_success ? options.success_threshold : options.node_threshold;
    return child.probability <= threshold;
  });
  for (auto& child : node.children) prune(child, options);
}

void collect_paths(const PatternNode& node, std::string& text,
                   std::vector<PatternPath>& out, double total) {
  const std::size_t mark = text.size();
  if (!text.empty()) text += ">>";
  text += node.action;
  if (node.children.empty()) {
    out.push_back({text, node.count,
                   total > 0 ? static_cast<double>(node.count) / total : 0.0});
  } else {
    for (const auto& child : node.children) {
      collect_paths(child, text, out, total);
    }
  }
  text.resize(mark);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

PatternTree mine_patterns(const std::vector<EventWindow>& windows,
                          const SignalConfig& config,
                          const PatternOptions& options) {
  PatternTree tree;
  tree.collapsed = options.collapse;
  tree.total_windows = windows.size();
  if (windows.empty()) return tree;

  tree.root_action = windows.front().initial->action;
  tree.root.action = tree.root_action;

  for (const auto& window : windows) {
    const auto path = window_path(window, options.collapse);
    ++tree.root.count;
    tree.root.repeated = tree.root.repeated || path.front().repeated;
    PatternNode* node = &tree.root;
    for (std::size_t i = 1; i < path.size(); ++i) {
      node = child_for(*node, *path[i].action);
      ++node->count;
      node->repeated = node->repeated || path[i].repeated;
    }
  }

  annotate(tree.root, static_cast<double>(tree.total_windows),
           static_cast<double>(tree.total_windows), config);
  prune(tree.root, options);
  return tree;
}

std::vector<PatternPath> top_paths(const PatternTree& tree, std::size_t limit) {
  std::vector<PatternPath> paths;
  if (tree.total_windows == 0 && tree.root.action.empty()) return paths;
  std::string text;
  collect_paths(tree.root, text, paths,
                static_cast<double>(tree.total_windows));
  std::sort(paths.begin(), paths.end(),
            [](const PatternPath& a, const PatternPath& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.text < b.text;
            });
  if (paths.size() > limit) paths.resize(limit);
  return paths;
}

std::string export_dot(const PatternTree& tree) {
  std::string out = "digraph patterns {\n  node [shape=box];\n";
  std::size_t next_id = 0;

  struct Frame {
    const PatternNode* node;
    std::size_t id;
  };
  const auto emit = [&](const PatternNode& node, std::size_t id) {
    out += "  n" + std::to_string(id) + " [label=\"" + node.action;
    if (node.repeated) out += '+';
    out += "\\np=" +
           [&] {
             char buf[32];
             std::snprintf(buf, sizeof buf, "%.3f", node.probability);
             return std::string(buf);
           }() +
           '"';
    if (node.is_success) out += ", style=filled, fillcolor=palegreen";
    out += "];\n";
  };

  if (tree.total_windows == 0 && tree.root.action.empty()) {
    out += "  n0 [label=\"(empty)\"];\n}\n";
    return out;
  }

  std::vector<Frame> stack{{&tree.root, next_id++}};
  emit(tree.root, 0);
  while (!stack.empty()) {
    const Frame frame = stack.back();
    stack.pop_back();
    for (const auto& child : frame.node->children) {
      const std::size_t id = next_id++;
      emit(child, id);
      out += "  n" + std::to_string(frame.id) + " -> n" + std::to_string(id) +
             ";\n";
      stack.push_back({&child, id});
    }
  }
  out += "}\n";
  return out;
}

std::string paths_to_csv(const std::vector<PatternPath>& paths,
                         std::string_view manifest_comment) {
  std::string out = "path,count,probability\n";
  for (const auto& path : paths) {
    out += csv_field(path.text);
    out += ',' + std::to_string(path.count);
    out += ',' + detail::fixed6(path.probability);
    out += '\n';
  }
  if (!manifest_comment.empty()) {
    out += manifest_comment;
    out += '\n';
  }
  return out;
}

}  // namespace loguse
