#include <doctest.h>

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmatch/blossom.hpp"
#include "qmatch/gadgets.hpp"
#include "qmatch/matching.hpp"
#include "qmatch/point.hpp"
#include "qmatch/separate.hpp"

using namespace qmatch;

namespace {

QProblem k22() { return QProblem(2, 2, {0, 0}, {1, 1}); }
QProblem k32() { return QProblem(3, 2, {0, 0}, {1, 1}); }
QProblem k23() { return QProblem(2, 3, {0, 0}, {1, 1}); }
QProblem k33() { return QProblem(3, 3, {0, 0}, {1, 1}); }

// ---- independent brute-force oracle ------------------------------------
// Everything below recomputes violations from first principles: node sets
// by bitmask, edge sums via direct index arithmetic.

Rational inside_sum(const QProblem& p, const QPoint& pt, unsigned mask) {
  Rational sum = 0;
  for (int u = 0; u < p.m(); ++u)
    for (int w = 0; w < p.n(); ++w)
      if ((mask >> p.unode(u) & 1) && (mask >> p.wnode(w) & 1))
        sum += pt.x[p.edge_index({u, w})];
  return sum;
}

struct BruteBest {
  Rational violation = 0;  // max, only meaningful when found
  bool found = false;
  std::vector<int> node_set;

  void offer(const Rational& v, std::vector<int> s = {}) {
    if (v <= 0) return;
    if (!found || v > violation || (v == violation && s < node_set)) {
      violation = v;
      node_set = std::move(s);
    }
    found = true;
  }
};

std::vector<int> mask_nodes(unsigned mask, int n) {
  std::vector<int> s;
  for (int v = 0; v < n; ++v)
    if (mask >> v & 1) s.push_back(v);
  return s;
}

// Patterns: which of u1, u2, w1, w2 lie in the mask.
bool down_pattern(const QProblem& p, unsigned mask) {
  const bool a1 = mask >> p.u1() & 1, a2 = mask >> p.u2() & 1;
  const bool b1 = mask >> p.w1() & 1, b2 = mask >> p.w2() & 1;
  return (a1 && a2 && !b1 && !b2) || (b1 && b2 && !a1 && !a2);
}

bool up_pattern(const QProblem& p, unsigned mask) {
  const bool a1 = mask >> p.u1() & 1, a2 = mask >> p.u2() & 1;
  const bool b1 = mask >> p.w1() & 1, b2 = mask >> p.w2() & 1;
  return (a1 && b2 && !a2 && !b1) || (a2 && b1 && !a1 && !b2);
}

BruteBest brute_down_family(const QProblem& p, const QPoint& pt) {
  BruteBest best;
  const int n = p.node_count();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size % 2 == 0 || !down_pattern(p, mask)) continue;
    const Rational viol = inside_sum(p, pt, mask) + pt.y - Rational(size - 1) / 2;
    best.offer(viol, mask_nodes(mask, n));
  }
  return best;
}

BruteBest brute_up_family(const QProblem& p, const QPoint& pt) {
  BruteBest best;
  const int n = p.node_count();
  const Rational head =
      pt.x[p.e1_index()] + pt.x[p.e2_index()] - pt.y;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size % 2 == 1 || !up_pattern(p, mask)) continue;
    const Rational viol = inside_sum(p, pt, mask) + head - Rational(size) / 2;
    best.offer(viol, mask_nodes(mask, n));
  }
  return best;
}

Rational degree_sum(const QProblem& p, const QPoint& pt, int v) {
  Rational sum = 0;
  if (p.is_unode(v)) {
    for (int w = 0; w < p.n(); ++w) sum += pt.x[p.edge_index({v, w})];
  } else {
    for (int u = 0; u < p.m(); ++u) sum += pt.x[p.edge_index({u, v - p.m()})];
  }
  return sum;
}

// Most violated row of the base system; StdLin only when requested.
BruteBest brute_base(const QProblem& p, const QPoint& pt, bool with_stdlin) {
  BruteBest best;
  for (int e = 0; e < p.edge_count(); ++e) best.offer(-pt.x[e]);
  for (int v = 0; v < p.node_count(); ++v) best.offer(degree_sum(p, pt, v) - 1);
  best.offer(-pt.y);
  best.offer(pt.y - 1);
  if (with_stdlin) {
    best.offer(pt.y - pt.x[p.e1_index()]);
    best.offer(pt.y - pt.x[p.e2_index()]);
  }
  return best;
}

Rational brute_family_max(const QProblem& p, const QPoint& pt, FamilyKind kind) {
  BruteBest best;
  switch (kind) {
    case FamilyKind::NonNeg:
      for (int e = 0; e < p.edge_count(); ++e) best.offer(-pt.x[e]);
      break;
    case FamilyKind::Degree:
      for (int v = 0; v < p.node_count(); ++v)
        best.offer(degree_sum(p, pt, v) - 1);
      break;
    case FamilyKind::YLower:
      best.offer(-pt.y);
      break;
    case FamilyKind::YUpper:
      best.offer(pt.y - 1);
      break;
    case FamilyKind::StdLin:
      best.offer(pt.y - pt.x[p.e1_index()]);
      best.offer(pt.y - pt.x[p.e2_index()]);
      break;
    case FamilyKind::Down:
      return brute_down_family(p, pt).violation;
    case FamilyKind::Up:
      return brute_up_family(p, pt).violation;
    default:
      FAIL("unexpected certificate family");
  }
  REQUIRE(best.found);
  return best.violation;
}

// ---- random point generators --------------------------------------------

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> den(2, 6);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(0, d);
  return Rational(num(rng), d);
}

QPoint raw_point(const QProblem& p, std::mt19937& rng) {
  QPoint pt;
  pt.x.resize(p.edge_count());
  for (auto& v : pt.x) v = random_rational(rng);
  pt.y = random_rational(rng);
  return pt;
}

// Convex combination of a few matchings with a perturbed y: satisfies the
// degree system, stresses the quadratic rows.
QPoint structured_point(const QProblem& p, const std::vector<Matching>& ms,
                        std::mt19937& rng) {
  std::uniform_int_distribution<int> count(2, 3);
  std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
  std::uniform_int_distribution<int> weight(1, 4);
  const int terms = count(rng);
  QPoint pt;
  pt.x.assign(p.edge_count(), Rational(0));
  int total = 0;
  std::vector<std::pair<const Matching*, int>> chosen;
  for (int t = 0; t < terms; ++t) {
    chosen.emplace_back(&ms[pick(rng)], weight(rng));
    total += chosen.back().second;
  }
  for (const auto& [m, wgt] : chosen) {
    const Rational lam(wgt, total);
    for (int e : *m) pt.x[e] += lam;
    pt.y += lam * y_of(p, *m);
  }
  std::uniform_int_distribution<int> tweak(-3, 3);
  pt.y += Rational(tweak(rng), 6);
  if (pt.y < 0) pt.y = 0;
  if (pt.y > 1) pt.y = 1;
  return pt;
}

void check_against_brute(const QProblem& p, const QPoint& pt) {
  const BruteBest base4 = brute_base(p, pt, true);
  const BruteBest base3 = brute_base(p, pt, false);
  const BruteBest down = brute_down_family(p, pt);
  const BruteBest up = brute_up_family(p, pt);

  const auto cd = separate_down(p, pt);
  CHECK(cd.has_value() == (base4.found || down.found));
  if (cd) {
    CHECK(cd->violation == brute_family_max(p, pt, cd->instance.kind));
    CHECK(violation(cd->row, pt) == cd->violation);
  }

  const auto cu = separate_up(p, pt);
  CHECK(cu.has_value() == (base3.found || up.found));
  if (cu) {
    CHECK(cu->violation == brute_family_max(p, pt, cu->instance.kind));
    CHECK(violation(cu->row, pt) == cu->violation);
  }

  const auto ce = separate_exact(p, pt);
  CHECK(ce.has_value() == (base4.found || down.found || up.found));
  if (ce) {
    CHECK(ce->violation == brute_family_max(p, pt, ce->instance.kind));
    CHECK(violation(ce->row, pt) == ce->violation);
  }

  // Gadget soundness: points inside the respective polytope produce
  // violation-free gadget vectors.
  if (!base4.found && !down.found) {
    const DownGadget gad = build_down_gadget(p, pt);
    CHECK_FALSE(separate_blossom(gad.graph, gad.xbar).has_value());
  }
  if (!base3.found && !up.found && pt.x[p.e1_index()] >= pt.y / 2 &&
      pt.x[p.e2_index()] >= pt.y / 2 &&
      pt.x[p.e1_index()] + pt.x[p.e2_index()] - pt.y <= 1) {
    const UpGadget gad = build_up_gadget(p, pt);
    CHECK_FALSE(separate_blossom(gad.graph, gad.xbar).has_value());
  }
}

QPoint zero_point(const QProblem& p) {
  QPoint pt;
  pt.x.assign(p.edge_count(), Rational(0));
  return pt;
}

}  // namespace

TEST_CASE("down gadget follows the construction rules") {
  const QProblem p = k22();

  QPoint integral = zero_point(p);
  integral.x[p.e1_index()] = 1;
  integral.x[p.e2_index()] = 1;
  integral.y = 1;
  DownGadget gad = build_down_gadget(p, integral);
  CHECK(gad.graph.edge_count() == p.edge_count() + 2);
  CHECK(gad.xbar[p.e1_index()] == 0);
  CHECK(gad.xbar[p.e2_index()] == 0);
  CHECK(gad.xbar[gad.eu_edge] == 1);
  CHECK(gad.xbar[gad.ew_edge] == 1);
  CHECK(gad.graph.edge(gad.eu_edge) == std::pair<int, int>(p.u1(), p.u2()));
  CHECK(gad.graph.edge(gad.ew_edge) == std::pair<int, int>(p.w1(), p.w2()));

  QPoint yzero = zero_point(p);
  yzero.x = {Rational(1, 3), Rational(1, 5), 0, Rational(2, 7)};
  DownGadget gz = build_down_gadget(p, yzero);
  for (int e = 0; e < p.edge_count(); ++e) CHECK(gz.xbar[e] == yzero.x[e]);
  CHECK(gz.xbar[gz.eu_edge] == 0);
  CHECK(gz.xbar[gz.ew_edge] == 0);

  QPoint half = zero_point(p);
  half.x[p.e1_index()] = Rational(1, 2);
  half.x[p.e2_index()] = Rational(1, 2);
  half.y = Rational(1, 2);
  DownGadget gh = build_down_gadget(p, half);
  CHECK(gh.xbar[p.e1_index()] == 0);
  CHECK(gh.xbar[p.e2_index()] == 0);
  CHECK(gh.xbar[gh.eu_edge] == Rational(1, 2));
  CHECK(gh.xbar[gh.ew_edge] == Rational(1, 2));

  QPoint bad = zero_point(p);
  bad.y = Rational(1, 2);  // y > x_{e1}
  CHECK_THROWS_WITH_AS(build_down_gadget(p, bad),
                       "point violates base constraints: STDLIN i=1",
                       std::invalid_argument);
}

TEST_CASE("up gadget carries both lift vectors") {
  const QProblem p = k22();

  QPoint integral = zero_point(p);
  integral.x[p.e1_index()] = 1;
  integral.x[p.e2_index()] = 1;
  integral.y = 1;
  UpGadget gad = build_up_gadget(p, integral);
  CHECK(gad.xbar[p.e1_index()] == Rational(1, 2));
  CHECK(gad.xbar[p.e2_index()] == Rational(1, 2));
  CHECK(gad.xbar[gad.ab_edge] == 0);
  CHECK(gad.xbar[gad.u1a_edge] == Rational(1, 2));
  CHECK(gad.xbar[gad.w1b_edge] == Rational(1, 2));
  CHECK(gad.xbar[gad.u2b_edge] == Rational(1, 2));
  CHECK(gad.xbar[gad.w2a_edge] == Rational(1, 2));
  // Trivial lift: copies x, puts 1 on {a,b}.
  for (int e = 0; e < p.edge_count(); ++e) CHECK(gad.xtilde[e] == integral.x[e]);
  CHECK(gad.xtilde[gad.ab_edge] == 1);
  CHECK(gad.xtilde[gad.u1a_edge] == 0);

  QPoint zero = zero_point(p);
  UpGadget gz = build_up_gadget(p, zero);
  CHECK(gz.xbar[gz.ab_edge] == 1);
  CHECK(gz.xbar[gz.u1a_edge] == 0);
  CHECK(gz.xbar[gz.u2b_edge] == 0);
  CHECK(gz.xbar[gz.w1b_edge] == 0);
  CHECK(gz.xbar[gz.w2a_edge] == 0);

  QPoint reject = zero_point(p);
  reject.x[p.e1_index()] = Rational(3, 4);
  reject.x[p.e2_index()] = Rational(3, 4);
  reject.y = Rational(1, 4);
  CHECK_THROWS_WITH_AS(build_up_gadget(p, reject),
                       "point violates premise: UP S={u1,w2}",
                       std::invalid_argument);
}

TEST_CASE("separate_down reproduces the worked examples") {
  const QProblem p = k32();

  QPoint pt = zero_point(p);
  pt.x[p.e1_index()] = Rational(1, 2);
  pt.x[p.e2_index()] = Rational(1, 2);
  pt.x[p.edge_index({2, 0})] = Rational(1, 2);
  pt.x[p.edge_index({2, 1})] = Rational(1, 2);
  pt.y = Rational(1, 2);
  auto cert = separate_down(p, pt);
  REQUIRE(cert.has_value());
  CHECK(cert->instance.kind == FamilyKind::Down);
  CHECK(cert->instance.node_set == std::vector<int>{2, 3, 4});  // u3, w1, w2
  CHECK(cert->violation == Rational(1, 2));
  CHECK(cert->row.tag == "DOWN S={u3,w1,w2}");

  QPoint vertex = zero_point(p);
  vertex.x[p.e1_index()] = 1;
  vertex.x[p.e2_index()] = 1;
  vertex.y = 1;
  CHECK_FALSE(separate_down(p, vertex).has_value());

  QPoint bad = zero_point(p);
  bad.x[p.e1_index()] = Rational(1, 4);
  bad.x[p.e2_index()] = 1;
  bad.y = Rational(1, 2);
  auto direct = separate_down(p, bad);
  REQUIRE(direct.has_value());
  CHECK(direct->instance.kind == FamilyKind::StdLin);
  CHECK(direct->instance.index == 1);
  CHECK(direct->violation == Rational(1, 4));
}

TEST_CASE("separate_up reproduces the worked examples") {
  const QProblem p = k22();

  QPoint pt = zero_point(p);
  pt.x = {Rational(3, 4), Rational(1, 4), Rational(1, 4), Rational(3, 4)};
  pt.y = Rational(1, 4);
  auto cert = separate_up(p, pt);
  REQUIRE(cert.has_value());
  CHECK(cert->instance.kind == FamilyKind::Up);
  // Both size-2 rows tie at 1/2; the lexicographically smaller wins.
  CHECK(cert->instance.node_set == std::vector<int>{p.u1(), p.w2()});
  CHECK(cert->violation == Rational(1, 2));
  CHECK(cert->row.tag == "UP S={u1,w2}");

  QPoint e1only = zero_point(p);
  e1only.x[p.e1_index()] = 1;
  CHECK_FALSE(separate_up(p, e1only).has_value());

  QPoint both = zero_point(p);
  both.x[p.e1_index()] = 1;
  both.x[p.e2_index()] = 1;
  auto direct = separate_up(p, both);
  REQUIRE(direct.has_value());
  CHECK(direct->instance.kind == FamilyKind::Up);
  CHECK(direct->instance.node_set == std::vector<int>{p.u1(), p.w2()});
  CHECK(direct->violation == 1);
}

TEST_CASE("the enumeration branch can beat the minimal up row") {
  // With x_{e1}+x_{e2}-y > 1 the gadget cannot be built, and the minimal
  // row Up({u1,w2}) is not the most violated member of its family.
  const QProblem p = k33();
  QPoint pt = zero_point(p);
  pt.x[p.e1_index()] = Rational(3, 5);
  pt.x[p.e2_index()] = Rational(3, 5);
  pt.x[p.edge_index({0, 2})] = Rational(2, 5);
  pt.x[p.edge_index({2, 1})] = Rational(2, 5);
  pt.x[p.edge_index({2, 2})] = Rational(3, 5);

  auto cert = separate_up(p, pt);
  REQUIRE(cert.has_value());
  CHECK(cert->instance.node_set == std::vector<int>{0, 2, 4, 5});  // u1,u3,w2,w3
  CHECK(cert->violation == Rational(3, 5));

  // The minimal row is violated by merely 1/5.
  const BruteBest family = brute_up_family(p, pt);
  CHECK(family.violation == Rational(3, 5));
}

TEST_CASE("separate_exact chains the stages") {
  {
    const QProblem p = k32();
    QPoint pt = zero_point(p);
    pt.x[p.e1_index()] = Rational(1, 2);
    pt.x[p.e2_index()] = Rational(1, 2);
    pt.x[p.edge_index({2, 0})] = Rational(1, 2);
    pt.x[p.edge_index({2, 1})] = Rational(1, 2);
    pt.y = Rational(1, 2);
    auto cert = separate_exact(p, pt);
    REQUIRE(cert.has_value());
    CHECK(cert->instance.kind == FamilyKind::Down);
  }
  {
    const QProblem p = k22();
    QPoint pt = zero_point(p);
    pt.x = {Rational(3, 4), Rational(1, 4), Rational(1, 4), Rational(3, 4)};
    pt.y = Rational(1, 4);
    auto cert = separate_exact(p, pt);
    REQUIRE(cert.has_value());
    CHECK(cert->instance.kind == FamilyKind::Up);
  }
  {
    const QProblem p = k22();
    CHECK_FALSE(separate_exact(p, zero_point(p)).has_value());
  }
}

TEST_CASE("oracles agree with brute force on random points") {
  std::mt19937 rng(20240811);
  for (const QProblem& p : {k22(), k32(), k23(), k33()}) {
    const std::vector<Matching> ms = enumerate_matchings(p.graph());
    for (int trial = 0; trial < 100; ++trial) {
      check_against_brute(p, raw_point(p, rng));
      check_against_brute(p, structured_point(p, ms, rng));
    }
  }
}

TEST_CASE("trivial points pass every oracle") {
  for (const QProblem& p : {k22(), k33()}) {
    for (const Matching& m : enumerate_matchings(p.graph())) {
      const QPoint pt = vertex_point(p, m, y_of(p, m));
      CHECK_FALSE(separate_exact(p, pt).has_value());
      CHECK_FALSE(separate_down(p, pt).has_value());
      CHECK_FALSE(separate_up(p, pt).has_value());
    }
  }
}
