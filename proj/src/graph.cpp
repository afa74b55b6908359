#include "qmatch/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmatch {

GeneralGraph::GeneralGraph(int node_count) {
  if (node_count < 0) throw std::invalid_argument("negative node count");
  incident_.resize(node_count);
  labels_.resize(node_count);
  for (int v = 0; v < node_count; ++v) labels_[v] = "v" + std::to_string(v);
}

int GeneralGraph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= node_count() || b >= node_count())
    throw std::invalid_argument("edge endpoint out of range");
  if (a == b) throw std::invalid_argument("loops are not allowed");
  if (a > b) std::swap(a, b);
  if (edge_index(a, b)) throw std::invalid_argument("duplicate edge");
  edges_.emplace_back(a, b);
  const int idx = edge_count() - 1;
  incident_[a].push_back(idx);
  incident_[b].push_back(idx);
  return idx;
}

std::optional<int> GeneralGraph::edge_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  if (a < 0 || b >= node_count()) return std::nullopt;
  for (int idx : incident_[a])
    if (edges_[idx] == std::pair<int, int>(a, b)) return idx;
  return std::nullopt;
}

}  // namespace qmatch
