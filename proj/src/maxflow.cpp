#include "qmatch/maxflow.hpp"

#include <queue>
#include <stdexcept>

namespace qmatch {

// Each undirected edge becomes a pair of arcs 2i / 2i+1, both starting with
// the full capacity; pushing along one arc raises the residual of its twin.
MaxFlowResult max_flow_min_cut(const GeneralGraph& g,
                               const std::vector<Rational>& cap, int s, int t) {
  const int n = g.node_count();
  if (s < 0 || t < 0 || s >= n || t >= n || s == t)
    throw std::invalid_argument("max flow needs distinct nodes in range");
  if (static_cast<int>(cap.size()) != g.edge_count())
    throw std::invalid_argument("capacity vector size mismatch");
  for (const Rational& c : cap)
    if (c < 0) throw std::invalid_argument("negative capacity");

  std::vector<Rational> residual(2 * g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) residual[2 * e] = residual[2 * e + 1] = cap[e];

  auto arc_from = [&](int arc) {
    const auto& [a, b] = g.edge(arc / 2);
    return arc % 2 == 0 ? a : b;
  };
  auto arc_to = [&](int arc) {
    const auto& [a, b] = g.edge(arc / 2);
    return arc % 2 == 0 ? b : a;
  };

  Rational value = 0;
  std::vector<int> pred_arc(n);
  while (true) {
    std::fill(pred_arc.begin(), pred_arc.end(), -1);
    pred_arc[s] = -2;
    std::queue<int> q;
    q.push(s);
    while (!q.empty() && pred_arc[t] == -1) {
      const int v = q.front();
      q.pop();
      for (int e : g.incident_edges(v)) {
        const auto& [a, b] = g.edge(e);
        const int arc = (v == a) ? 2 * e : 2 * e + 1;
        const int to = (v == a) ? b : a;
        if (pred_arc[to] == -1 && residual[arc] > 0) {
          pred_arc[to] = arc;
          q.push(to);
        }
      }
    }
    if (pred_arc[t] == -1) break;

    Rational push = -1;
    for (int v = t; v != s; v = arc_from(pred_arc[v])) {
      const Rational& r = residual[pred_arc[v]];
      if (push < 0 || r < push) push = r;
    }
    for (int v = t; v != s; v = arc_from(pred_arc[v])) {
      const int arc = pred_arc[v];
      residual[arc] -= push;
      residual[arc ^ 1] += push;
    }
    value += push;
  }

  MaxFlowResult result;
  result.value = value;
  result.source_side.assign(n, 0);
  result.source_side[s] = 1;
  std::queue<int> q;
  q.push(s);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int e : g.incident_edges(v)) {
      const auto& [a, b] = g.edge(e);
      const int arc = (v == a) ? 2 * e : 2 * e + 1;
      const int to = (v == a) ? b : a;
      if (!result.source_side[to] && residual[arc] > 0) {
        result.source_side[to] = 1;
        q.push(to);
      }
    }
  }
  return result;
}

}  // namespace qmatch
