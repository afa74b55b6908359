#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qmatch/gomoryhu.hpp"
#include "qmatch/graph.hpp"
#include "qmatch/maxflow.hpp"
#include "qmatch/rational.hpp"

using namespace qmatch;

namespace {

struct Instance {
  GeneralGraph g;
  std::vector<Rational> cap;
};

Instance path(int n, std::vector<Rational> cap) {
  GeneralGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return {g, std::move(cap)};
}

Instance cycle(int n, const Rational& c) {
  GeneralGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return {g, std::vector<Rational>(n, c)};
}

// Complete graph with a fixed deterministic capacity pattern.
Instance complete(int n) {
  GeneralGraph g(n);
  std::vector<Rational> cap;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      g.add_edge(a, b);
      cap.push_back(Rational(1 + (a + 2 * b) % 5, 3));
    }
  return {g, cap};
}

Rational cut_value(const Instance& inst, const std::vector<char>& in_s) {
  Rational v = 0;
  for (int e = 0; e < inst.g.edge_count(); ++e) {
    const auto& [a, b] = inst.g.edge(e);
    if (in_s[a] != in_s[b]) v += inst.cap[e];
  }
  return v;
}

Rational brute_min_cut(const Instance& inst, int s, int t) {
  const int n = inst.g.node_count();
  Rational best;
  bool first = true;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (!(mask & (1 << s)) || (mask & (1 << t))) continue;
    std::vector<char> in_s(n, 0);
    for (int v = 0; v < n; ++v) in_s[v] = (mask >> v) & 1;
    Rational val = cut_value(inst, in_s);
    if (first || val < best) best = val;
    first = false;
  }
  return best;
}

}  // namespace

TEST_CASE("max flow on hand-sized networks") {
  Instance p = path(3, {Rational(3), Rational(2)});
  MaxFlowResult r = max_flow_min_cut(p.g, p.cap, 0, 2);
  CHECK(r.value == 2);
  CHECK(r.source_side == std::vector<char>{1, 1, 0});

  Instance c4 = cycle(4, Rational(1));
  CHECK(max_flow_min_cut(c4.g, c4.cap, 0, 2).value == 2);

  // Triangle with rational capacities: 0-1 cap 1/2, 1-2 cap 1/3, 0-2 cap 1/4.
  GeneralGraph tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  MaxFlowResult tr = max_flow_min_cut(
      tri, {Rational(1, 2), Rational(1, 3), Rational(1, 4)}, 0, 2);
  CHECK(tr.value == Rational(7, 12));
  CHECK(tr.source_side == std::vector<char>{1, 1, 0});

  // Disconnected pair.
  GeneralGraph two(2);
  CHECK(max_flow_min_cut(two, {}, 0, 1).value == 0);
}

TEST_CASE("max flow input validation") {
  Instance p = path(3, {Rational(1), Rational(1)});
  CHECK_THROWS_AS(max_flow_min_cut(p.g, p.cap, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(max_flow_min_cut(p.g, p.cap, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(max_flow_min_cut(p.g, {Rational(1)}, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(max_flow_min_cut(p.g, {Rational(1), Rational(-1)}, 0, 2),
                  std::invalid_argument);
}

TEST_CASE("gomory-hu tree agrees with brute-force cuts everywhere") {
  std::vector<Instance> instances;
  instances.push_back(path(5, {Rational(5), Rational(1, 2), Rational(3), Rational(2)}));
  instances.push_back(cycle(6, Rational(1, 2)));
  instances.push_back(complete(4));
  instances.push_back(complete(5));
  {
    // Two triangles joined by one light edge.
    GeneralGraph g(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(3, 5);
    g.add_edge(2, 3);
    instances.push_back({g, {Rational(1), Rational(2), Rational(3), Rational(1),
                             Rational(2), Rational(3), Rational(1, 5)}});
  }

  for (std::size_t k = 0; k < instances.size(); ++k) {
    const Instance& inst = instances[k];
    CAPTURE(k);
    const int n = inst.g.node_count();
    GomoryHuTree tree = gomory_hu_tree(inst.g, inst.cap);
    REQUIRE(tree.n == n);

    // Each tree edge weight is realized by its fundamental cut.
    for (int i = 1; i < n; ++i) {
      std::vector<int> side = tree.fundamental_side(i);
      CHECK(std::is_sorted(side.begin(), side.end()));
      CHECK(std::count(side.begin(), side.end(), i) == 1);
      CHECK(std::count(side.begin(), side.end(), tree.parent[i]) == 0);
      std::vector<char> in_s(n, 0);
      for (int v : side) in_s[v] = 1;
      CHECK(cut_value(inst, in_s) == tree.weight[i]);
    }

    // Tree queries equal brute-force min cuts and direct max flows.
    for (int s = 0; s < n; ++s)
      for (int t = s + 1; t < n; ++t) {
        const Rational expect = brute_min_cut(inst, s, t);
        CHECK(tree.min_cut_value(s, t) == expect);
        CHECK(max_flow_min_cut(inst.g, inst.cap, s, t).value == expect);
      }
  }
}

TEST_CASE("gomory-hu validation") {
  GeneralGraph g(1);
  CHECK_THROWS_AS(gomory_hu_tree(g, {}), std::invalid_argument);
  Instance p = path(3, {Rational(1), Rational(1)});
  GomoryHuTree tree = gomory_hu_tree(p.g, p.cap);
  CHECK_THROWS_AS(tree.min_cut_value(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(tree.fundamental_side(0), std::invalid_argument);
}

TEST_CASE("minimum odd cut") {
  // Path 0-1-2, terminals {0,1}: best odd cut isolates node 0.
  Instance p = path(3, {Rational(5), Rational(7)});
  OddCut cut = min_odd_cut(p.g, p.cap, {0, 1});
  CHECK(cut.value == 5);
  CHECK(cut.side == std::vector<int>{0});

  // Four-cycle, all nodes terminal: every odd cut costs 2; the canonical
  // (lexicographically smallest) shore among the fundamental cuts wins.
  Instance c4 = cycle(4, Rational(1));
  OddCut c = min_odd_cut(c4.g, c4.cap, {0, 1, 2, 3});
  CHECK(c.value == 2);
  CHECK(c.side == std::vector<int>{0, 1, 2});
  CHECK(min_odd_cut(c4.g, c4.cap, {0, 1, 2, 3}).side == c.side);  // deterministic

  // Brute-force value agreement on a handful of instances and terminal sets.
  std::vector<Instance> instances = {path(5, {Rational(5), Rational(1, 2),
                                              Rational(3), Rational(2)}),
                                     cycle(6, Rational(1, 2)), complete(5)};
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const Instance& inst = instances[k];
    CAPTURE(k);
    const int n = inst.g.node_count();
    std::vector<std::vector<int>> terminal_sets = {{0, 1}, {0, 1, 2, 3}};
    if (n >= 6) terminal_sets.push_back({0, 1, 2, 3, 4, 5});
    for (const auto& terms : terminal_sets) {
      std::vector<char> is_t(n, 0);
      for (int v : terms) is_t[v] = 1;
      Rational best;
      bool first = true;
      for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        int odd = 0;
        std::vector<char> in_s(n, 0);
        for (int v = 0; v < n; ++v) {
          in_s[v] = (mask >> v) & 1;
          if (in_s[v] && is_t[v]) ++odd;
        }
        if (odd % 2 == 0) continue;
        Rational val = cut_value(inst, in_s);
        if (first || val < best) best = val;
        first = false;
      }
      OddCut oc = min_odd_cut(inst.g, inst.cap, terms);
      CHECK(oc.value == best);
      // Returned side realizes the value and is T-odd.
      std::vector<char> in_s(n, 0);
      int odd = 0;
      for (int v : oc.side) {
        in_s[v] = 1;
        if (is_t[v]) ++odd;
      }
      CHECK(odd % 2 == 1);
      CHECK(cut_value(inst, in_s) == oc.value);
    }
  }

  CHECK_THROWS_AS(min_odd_cut(p.g, p.cap, {}), std::invalid_argument);
  CHECK_THROWS_AS(min_odd_cut(p.g, p.cap, {0}), std::invalid_argument);
  CHECK_THROWS_AS(min_odd_cut(p.g, p.cap, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(min_odd_cut(p.g, p.cap, {0, 3}), std::invalid_argument);
}
