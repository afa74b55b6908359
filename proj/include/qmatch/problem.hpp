#pragma once

#include <string>
#include <vector>

#include "qmatch/graph.hpp"

namespace qmatch {

// Edge of the complete bipartite graph K_{m,n}, by 0-based side indices.
struct BipEdge {
  int u = -1;
  int w = -1;
  friend bool operator==(const BipEdge&, const BipEdge&) = default;
};

// K_{m,n} together with the two node-disjoint distinguished edges e1, e2
// whose product the extra variable y linearizes.
class QProblem {
 public:
  QProblem(int m, int n, BipEdge e1, BipEdge e2);

  int m() const { return m_; }
  int n() const { return n_; }
  const BipEdge& e1() const { return e1_; }
  const BipEdge& e2() const { return e2_; }

  // Node ids: u_i -> i, w_j -> m + j.
  int unode(int i) const { return i; }
  int wnode(int j) const { return m_ + j; }
  int node_count() const { return m_ + n_; }
  bool is_unode(int v) const { return v < m_; }

  // The four distinguished endpoints u1, u2, w1, w2 as node ids.
  int u1() const { return unode(e1_.u); }
  int u2() const { return unode(e2_.u); }
  int w1() const { return wnode(e1_.w); }
  int w2() const { return wnode(e2_.w); }
  bool is_special(int v) const;

  int edge_count() const { return m_ * n_; }
  int edge_index(const BipEdge& e) const { return e.u * n_ + e.w; }
  BipEdge edge_of_index(int index) const { return {index / n_, index % n_}; }
  int e1_index() const { return edge_index(e1_); }
  int e2_index() const { return edge_index(e2_); }

  // K_{m,n} as a GeneralGraph; edge insertion order matches edge_index().
  GeneralGraph graph() const;

  std::string node_name(int v) const;  // "u3" / "w1" (1-based)

 private:
  int m_, n_;
  BipEdge e1_, e2_;
};

}  // namespace qmatch
