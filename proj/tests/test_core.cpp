#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "qmatch/errors.hpp"
#include "qmatch/graph.hpp"
#include "qmatch/matching.hpp"
#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"

using namespace qmatch;

namespace {

// Closed-form matching count of K_{m,n}: choose k nodes on each side and one
// of the k! ways to pair them up.
long long matching_count_oracle(int m, int n) {
  auto binom = [](int a, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (a - k + i) / i;
    return r;
  };
  long long total = 0;
  for (int k = 0; k <= std::min(m, n); ++k) {
    long long fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    total += binom(m, k) * binom(n, k) * fact;
  }
  return total;
}

QProblem k22() { return QProblem(2, 2, {0, 0}, {1, 1}); }
QProblem k32() { return QProblem(3, 2, {0, 0}, {1, 1}); }
QProblem k33() { return QProblem(3, 3, {0, 0}, {1, 1}); }

}  // namespace

TEST_CASE("general graph bookkeeping") {
  GeneralGraph g(4);
  CHECK(g.node_count() == 4);
  CHECK(g.add_edge(0, 1) == 0);
  CHECK(g.add_edge(3, 2) == 1);
  CHECK(g.edge(1) == std::pair<int, int>{2, 3});
  CHECK(g.edge_index(2, 3) == 1);
  CHECK(g.edge_index(1, 0) == 0);
  CHECK(!g.edge_index(0, 2).has_value());
  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
  CHECK(g.label(0) == "v0");
  g.set_label(0, "a");
  CHECK(g.label(0) == "a");
}

TEST_CASE("problem node and edge indexing") {
  QProblem p = k32();
  CHECK(p.node_count() == 5);
  CHECK(p.edge_count() == 6);
  CHECK(p.u1() == 0);
  CHECK(p.u2() == 1);
  CHECK(p.w1() == 3);
  CHECK(p.w2() == 4);
  CHECK(p.is_special(0));
  CHECK(!p.is_special(2));
  CHECK(p.node_name(2) == "u3");
  CHECK(p.node_name(3) == "w1");
  CHECK(p.e1_index() == 0);
  CHECK(p.e2_index() == p.edge_index({1, 1}));
  for (int e = 0; e < p.edge_count(); ++e)
    CHECK(p.edge_index(p.edge_of_index(e)) == e);

  GeneralGraph g = p.graph();
  CHECK(g.node_count() == 5);
  CHECK(g.edge_count() == 6);
  for (int e = 0; e < p.edge_count(); ++e) {
    BipEdge be = p.edge_of_index(e);
    CHECK(g.edge_index(p.unode(be.u), p.wnode(be.w)) == e);
  }
  CHECK(g.label(p.wnode(1)) == "w2");
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(QProblem(1, 2, {0, 0}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(QProblem(2, 2, {0, 0}, {0, 1}), std::invalid_argument);  // shares u
  CHECK_THROWS_AS(QProblem(2, 2, {0, 0}, {1, 0}), std::invalid_argument);  // shares w
  CHECK_THROWS_AS(QProblem(2, 2, {0, 0}, {1, 2}), std::invalid_argument);  // out of range
}

TEST_CASE("matching enumeration matches the closed-form count") {
  for (int m = 2; m <= 4; ++m) {
    for (int n = 2; n <= m; ++n) {
      QProblem p(m, n, {0, 0}, {1, 1});
      GeneralGraph g = p.graph();
      auto all = enumerate_matchings(g);
      CHECK(static_cast<long long>(all.size()) == matching_count_oracle(m, n));
      std::set<Matching> seen;
      for (const auto& mm : all) {
        CHECK(is_matching(g, mm));
        seen.insert(mm);
      }
      CHECK(seen.size() == all.size());
      CHECK(std::is_sorted(all.begin(), all.end()));
      CHECK(all.front().empty());
    }
  }
  CHECK(matching_count_oracle(2, 2) == 7);
  CHECK(matching_count_oracle(3, 2) == 13);
  CHECK(matching_count_oracle(3, 3) == 34);
  CHECK(matching_count_oracle(4, 4) == 209);
}

TEST_CASE("matching predicates") {
  QProblem p = k22();
  GeneralGraph g = p.graph();
  // Edge order of K22: 0={u1,w1}, 1={u1,w2}, 2={u2,w1}, 3={u2,w2}.
  CHECK(is_matching(g, {}));
  CHECK(is_matching(g, {0, 3}));
  CHECK(!is_matching(g, {0, 1}));  // share u1
  CHECK(!is_matching(g, {3, 0}));  // unsorted
  CHECK(!is_matching(g, {0, 0}));
  CHECK(!is_matching(g, {4}));
  CHECK(is_perfect_matching(g, {0, 3}));
  CHECK(is_perfect_matching(g, {1, 2}));
  CHECK(!is_perfect_matching(g, {0}));

  CHECK(chi(g, {0, 3}) == std::vector<int>{1, 0, 0, 1});
  CHECK_THROWS_AS(chi(g, {0, 1}), std::invalid_argument);
  CHECK(y_of(p, {0, 3}) == 1);
  CHECK(y_of(p, {0}) == 0);
  CHECK(y_of(p, {1, 2}) == 0);
}

TEST_CASE("enumeration guard") {
  QProblem p = k22();
  GeneralGraph g = p.graph();
  CHECK_NOTHROW(enumerate_matchings(g, 4));
  CHECK_THROWS_AS(enumerate_matchings(g, 3), GuardError);
  CHECK(default_enum_guard() >= 4);
}

TEST_CASE("vertex point") {
  QProblem p = k22();
  QPoint v = vertex_point(p, {1, 2}, 0);
  CHECK(v.x == std::vector<Rational>{0, 1, 1, 0});
  CHECK(v.y == 0);
  CHECK_THROWS_AS(vertex_point(p, {0, 1}, 0), std::invalid_argument);
}

TEST_CASE("vertex sets of the six variants") {
  QProblem p = k22();
  CHECK(vertex_set(p, Variant::Exact).size() == 7);
  CHECK(vertex_set(p, Variant::Down).size() == 8);
  CHECK(vertex_set(p, Variant::Up).size() == 13);
  CHECK(vertex_set(p, Variant::PerfectExact).size() == 2);
  CHECK(vertex_set(p, Variant::PerfectDown).size() == 3);
  CHECK(vertex_set(p, Variant::PerfectUp).size() == 3);

  // Exact: y is determined by the matching.
  for (const auto& v : vertex_set(p, Variant::Exact)) {
    CHECK(v.y == (v.x[0] == 1 && v.x[3] == 1 ? 1 : 0));
  }
  // Down: y = 1 only with both special edges present.
  for (const auto& v : vertex_set(p, Variant::Down)) {
    if (v.y == 1) {
      CHECK(v.x[0] == 1);
      CHECK(v.x[3] == 1);
    }
  }
  // Up: y = 0 only with a special edge absent.
  for (const auto& v : vertex_set(p, Variant::Up)) {
    if (v.y == 0) CHECK((v.x[0] == 0 || v.x[3] == 0));
  }

  CHECK(vertex_set(k33(), Variant::Exact).size() == 34);
  CHECK(vertex_set(k33(), Variant::PerfectExact).size() == 6);
  CHECK_THROWS_AS(vertex_set(k32(), Variant::PerfectExact), std::invalid_argument);

  // Deterministic output.
  CHECK(vertex_set(p, Variant::Up) == vertex_set(p, Variant::Up));
}
