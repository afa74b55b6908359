#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qmatch {

// Undirected simple graph on nodes 0..node_count()-1.  Edges are identified
// by their insertion index; the node pair of an edge is stored sorted.
class GeneralGraph {
 public:
  GeneralGraph() = default;
  explicit GeneralGraph(int node_count);

  int node_count() const { return static_cast<int>(incident_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // Adds edge {a,b}; rejects loops, duplicates and out-of-range nodes.
  int add_edge(int a, int b);

  const std::pair<int, int>& edge(int index) const { return edges_[index]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::optional<int> edge_index(int a, int b) const;
  const std::vector<int>& incident_edges(int v) const { return incident_[v]; }

  // Optional display name per node; defaults to "v<i>".
  void set_label(int v, std::string name) { labels_[v] = std::move(name); }
  const std::string& label(int v) const { return labels_[v]; }

 private:
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::string> labels_;
};

}  // namespace qmatch
