#pragma once

#include <vector>

#include "qmatch/graph.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

// Gomory-Hu cut tree: node 0 is the root; for i >= 1, weight[i] is the exact
// minimum cut value between i and parent[i], and the fundamental cut of tree
// edge i realizes that value in the original graph.
struct GomoryHuTree {
  int n = 0;
  std::vector<int> parent;
  std::vector<Rational> weight;

  // Nodes on i's side when tree edge (i, parent[i]) is removed; sorted.
  std::vector<int> fundamental_side(int i) const;
  // Minimum weight on the tree path, i.e. the s-t min cut value.
  Rational min_cut_value(int s, int t) const;
};

GomoryHuTree gomory_hu_tree(const GeneralGraph& g, const std::vector<Rational>& cap);

struct OddCut {
  Rational value;
  std::vector<int> side;  // sorted; |side ∩ T| is odd
};

// Minimum cut over all cuts with odd intersection with the even-sized
// terminal set T, realized as the best T-odd fundamental cut of the
// Gomory-Hu tree.  Ties: smallest value first, then the lexicographically
// smallest side (each fundamental cut contributes its lex-smaller shore).
OddCut min_odd_cut(const GeneralGraph& g, const std::vector<Rational>& cap,
                   const std::vector<int>& terminals);

}  // namespace qmatch
