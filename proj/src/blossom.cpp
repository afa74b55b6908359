#include "qmatch/blossom.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qmatch/gomoryhu.hpp"

namespace qmatch {

// Apex reduction: add z joined to every node v with capacity 1 - xbar(delta(v)).
// For z-free S the auxiliary cut capacity is |S| - 2*xbar(E[S]), so violated
// blossoms correspond exactly to T-odd cuts of value < 1.
std::vector<BlossomViolation> blossom_candidates(const GeneralGraph& g,
                                                 const std::vector<Rational>& xbar) {
  const int n = g.node_count();
  if (static_cast<int>(xbar.size()) != g.edge_count())
    throw std::invalid_argument("value vector size mismatch");
  for (int e = 0; e < g.edge_count(); ++e)
    if (xbar[e] < 0)
      throw std::invalid_argument("negative value on edge " + std::to_string(e));
  std::vector<Rational> slack(n, Rational(1));
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [a, b] = g.edge(e);
    slack[a] -= xbar[e];
    slack[b] -= xbar[e];
  }
  for (int v = 0; v < n; ++v)
    if (slack[v] < 0)
      throw std::invalid_argument("degree of node " + std::to_string(v) +
                                  " exceeds 1");

  GeneralGraph aux(n + 1);
  std::vector<Rational> cap;
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [a, b] = g.edge(e);
    aux.add_edge(a, b);
    cap.push_back(xbar[e]);
  }
  const int z = n;
  for (int v = 0; v < n; ++v) {
    aux.add_edge(v, z);
    cap.push_back(slack[v]);
  }
  std::vector<int> terminals;
  for (int v = 0; v < n; ++v) terminals.push_back(v);
  if (n % 2 == 1) terminals.push_back(z);

  // Scan every T-odd fundamental cut so that ties resolve deterministically.
  const GomoryHuTree tree = gomory_hu_tree(aux, cap);
  std::vector<char> is_t(n + 1, 0);
  for (int v : terminals) is_t[v] = 1;

  std::vector<BlossomViolation> found;
  for (int i = 1; i < tree.n; ++i) {
    if (tree.weight[i] >= 1) continue;
    std::vector<int> side = tree.fundamental_side(i);
    int odd = 0;
    for (int v : side) odd ^= is_t[v];
    if (!odd) continue;
    // Take the z-free shore.
    std::vector<char> in(n + 1, 0);
    for (int v : side) in[v] = 1;
    std::vector<int> s;
    if (in[z]) {
      for (int v = 0; v <= n; ++v)
        if (!in[v]) s.push_back(v);
    } else {
      s = std::move(side);
    }
    std::vector<char> in_s(n, 0);
    for (int v : s) in_s[v] = 1;
    Rational inside = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      const auto& [a, b] = g.edge(e);
      if (in_s[a] && in_s[b]) inside += xbar[e];
    }
    const Rational viol = inside - Rational(static_cast<int>(s.size()) - 1) / 2;
    if (viol != (Rational(1) - tree.weight[i]) / 2)
      throw std::logic_error("blossom reduction accounting mismatch");
    if (viol <= 0) continue;
    found.push_back(BlossomViolation{std::move(s), viol});
  }
  std::sort(found.begin(), found.end(),
            [](const BlossomViolation& l, const BlossomViolation& r) {
              if (l.violation != r.violation) return l.violation > r.violation;
              return l.node_set < r.node_set;
            });
  found.erase(std::unique(found.begin(), found.end(),
                          [](const BlossomViolation& l, const BlossomViolation& r) {
                            return l.node_set == r.node_set;
                          }),
              found.end());
  return found;
}

std::optional<BlossomViolation> separate_blossom(const GeneralGraph& g,
                                                 const std::vector<Rational>& xbar) {
  auto found = blossom_candidates(g, xbar);
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

}  // namespace qmatch
