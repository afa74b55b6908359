#include "qmatch/gomoryhu.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "qmatch/maxflow.hpp"

namespace qmatch {

namespace {

std::vector<std::vector<int>> tree_adjacency(const GomoryHuTree& t) {
  std::vector<std::vector<int>> adj(t.n);
  for (int i = 1; i < t.n; ++i) {
    adj[i].push_back(t.parent[i]);
    adj[t.parent[i]].push_back(i);
  }
  return adj;
}

}  // namespace

std::vector<int> GomoryHuTree::fundamental_side(int i) const {
  if (i <= 0 || i >= n) throw std::invalid_argument("tree edge index out of range");
  const auto adj = tree_adjacency(*this);
  std::vector<char> seen(n, 0);
  seen[i] = 1;
  std::queue<int> q;
  q.push(i);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int to : adj[v]) {
      if (v == i && to == parent[i]) continue;  // removed tree edge
      if (to == i && v == parent[i]) continue;
      if (!seen[to]) {
        seen[to] = 1;
        q.push(to);
      }
    }
  }
  std::vector<int> side;
  for (int v = 0; v < n; ++v)
    if (seen[v]) side.push_back(v);
  return side;
}

Rational GomoryHuTree::min_cut_value(int s, int t) const {
  if (s < 0 || t < 0 || s >= n || t >= n || s == t)
    throw std::invalid_argument("min cut query needs distinct nodes in range");
  // BFS on the tree, then take the minimum weight along the path.
  const auto adj = tree_adjacency(*this);
  std::vector<int> pred(n, -1);
  pred[s] = s;
  std::queue<int> q;
  q.push(s);
  while (!q.empty() && pred[t] == -1) {
    const int v = q.front();
    q.pop();
    for (int to : adj[v])
      if (pred[to] == -1) {
        pred[to] = v;
        q.push(to);
      }
  }
  Rational best = -1;
  for (int v = t; v != s; v = pred[v]) {
    // The step edge is v--parent[v] or pred[v]--parent[pred[v]].
    const Rational& w = (parent[v] == pred[v]) ? weight[v] : weight[pred[v]];
    if (best < 0 || w < best) best = w;
  }
  return best;
}

GomoryHuTree gomory_hu_tree(const GeneralGraph& g, const std::vector<Rational>& cap) {
  const int n = g.node_count();
  if (n < 2) throw std::invalid_argument("Gomory-Hu tree needs at least two nodes");
  GomoryHuTree t;
  t.n = n;
  t.parent.assign(n, 0);
  t.weight.assign(n, Rational(0));
  // Contraction-free simulation of the cut-tree construction.  The two
  // adjustments after each flow (re-hanging every sibling that fell on the
  // source side, and swapping with the grandparent when it did) are what make
  // the fundamental cuts realize the tree weights, not just the query values.
  for (int s = 1; s < n; ++s) {
    const int tnode = t.parent[s];
    const MaxFlowResult f = max_flow_min_cut(g, cap, s, tnode);
    t.weight[s] = f.value;
    for (int i = 1; i < n; ++i)
      if (i != s && f.source_side[i] && t.parent[i] == tnode) t.parent[i] = s;
    if (tnode != 0 && f.source_side[t.parent[tnode]]) {
      t.parent[s] = t.parent[tnode];
      t.parent[tnode] = s;
      t.weight[s] = t.weight[tnode];
      t.weight[tnode] = f.value;
    }
  }
  return t;
}

OddCut min_odd_cut(const GeneralGraph& g, const std::vector<Rational>& cap,
                   const std::vector<int>& terminals) {
  if (terminals.empty()) throw std::invalid_argument("terminal set must be nonempty");
  if (terminals.size() % 2 != 0)
    throw std::invalid_argument("terminal set must have even size");
  std::vector<char> is_t(g.node_count(), 0);
  for (int v : terminals) {
    if (v < 0 || v >= g.node_count())
      throw std::invalid_argument("terminal out of range");
    if (is_t[v]) throw std::invalid_argument("duplicate terminal");
    is_t[v] = 1;
  }

  const GomoryHuTree tree = gomory_hu_tree(g, cap);
  bool found = false;
  OddCut best;
  for (int i = 1; i < tree.n; ++i) {
    std::vector<int> side = tree.fundamental_side(i);
    int odd = 0;
    for (int v : side) odd ^= is_t[v];
    if (!odd) continue;
    // Canonical shore: the lexicographically smaller of the two sides.
    std::vector<int> other;
    {
      std::vector<char> in(g.node_count(), 0);
      for (int v : side) in[v] = 1;
      for (int v = 0; v < g.node_count(); ++v)
        if (!in[v]) other.push_back(v);
    }
    if (other < side) side.swap(other);
    if (!found || tree.weight[i] < best.value ||
        (tree.weight[i] == best.value && side < best.side)) {
      found = true;
      best.value = tree.weight[i];
      best.side = std::move(side);
    }
  }
  if (!found) throw std::logic_error("no T-odd fundamental cut found");
  return best;
}

}  // namespace qmatch
