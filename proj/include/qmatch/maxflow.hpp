#pragma once

#include <vector>

#include "qmatch/graph.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

struct MaxFlowResult {
  Rational value;
  std::vector<char> source_side;  // residual-reachable nodes from s (min cut shore)
};

// Exact Edmonds-Karp max flow between s and t on an undirected graph with
// rational capacities (one per edge).  Capacities must be nonnegative.
MaxFlowResult max_flow_min_cut(const GeneralGraph& g,
                               const std::vector<Rational>& cap, int s, int t);

}  // namespace qmatch
