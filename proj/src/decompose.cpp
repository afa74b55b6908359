#include "qmatch/decompose.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "qmatch/blossom.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/exactlp.hpp"

namespace qmatch {

namespace {

constexpr long kMultisetGuard = 4096;

std::string node_list(const GeneralGraph& g, const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += g.label(s[i]);
  }
  return out + "}";
}

std::vector<Rational> chi_rational(const GeneralGraph& g, const Matching& m) {
  std::vector<Rational> v(g.edge_count(), Rational(0));
  for (int e : m) v[e] = 1;
  return v;
}

bool contains_edge(const Matching& m, int e) {
  return std::binary_search(m.begin(), m.end(), e);
}

// Connected component (edge set) of the symmetric difference `diff`
// containing the edge `seed`, via endpoint adjacency.
std::vector<int> component_of(const GeneralGraph& g, const std::vector<int>& diff,
                              int seed) {
  std::vector<char> in_diff_node(g.node_count(), 0);
  std::vector<std::vector<int>> at_node(g.node_count());
  for (int e : diff) {
    const auto& [a, b] = g.edge(e);
    at_node[a].push_back(e);
    at_node[b].push_back(e);
    in_diff_node[a] = in_diff_node[b] = 1;
  }
  std::vector<int> stack{seed}, comp;
  std::vector<char> seen_edge(g.edge_count(), 0);
  seen_edge[seed] = 1;
  while (!stack.empty()) {
    const int e = stack.back();
    stack.pop_back();
    comp.push_back(e);
    const auto& [a, b] = g.edge(e);
    for (int v : {a, b})
      for (int f : at_node[v])
        if (!seen_edge[f]) {
          seen_edge[f] = 1;
          stack.push_back(f);
        }
  }
  std::sort(comp.begin(), comp.end());
  return comp;
}

Matching symmetric_difference(const Matching& m, const std::vector<int>& edges) {
  Matching out;
  std::set_symmetric_difference(m.begin(), m.end(), edges.begin(), edges.end(),
                                std::back_inserter(out));
  return out;
}

void check_sum_preserved(const GeneralGraph& g, const Matching& before1,
                         const Matching& before2, const Matching& after1,
                         const Matching& after2) {
  std::vector<int> sum_before(g.edge_count(), 0), sum_after(g.edge_count(), 0);
  for (int e : before1) ++sum_before[e];
  for (int e : before2) ++sum_before[e];
  for (int e : after1) ++sum_after[e];
  for (int e : after2) ++sum_after[e];
  if (sum_before != sum_after)
    throw std::logic_error("exchange changed the weighted sum");
}

}  // namespace

std::vector<Matching> MatchingCombination::multiset() const {
  if (k > kMultisetGuard)
    throw GuardError("combination denominator " + k.str() +
                     " exceeds the multiset expansion guard");
  std::vector<Matching> out;
  for (std::size_t j = 0; j < matchings.size(); ++j) {
    const Rational count = Rational(k) * lambda[j];
    if (rational_den(count) != 1)
      throw std::logic_error("k is not a common denominator");
    for (Integer c = 0; c < rational_num(count); ++c) out.push_back(matchings[j]);
  }
  return out;
}

MatchingCombination MatchingCombination::collapse(const std::vector<Matching>& multiset) {
  if (multiset.empty()) throw std::invalid_argument("empty multiset");
  std::map<Matching, int> counts;
  for (const Matching& m : multiset) ++counts[m];
  MatchingCombination comb;
  const int total = static_cast<int>(multiset.size());
  for (const auto& [m, c] : counts) {
    comb.matchings.push_back(m);
    comb.lambda.push_back(Rational(c, total));
  }
  comb.k = denominator_lcm(comb.lambda);
  return comb;
}

std::vector<Rational> MatchingCombination::weighted_chi(const GeneralGraph& g) const {
  std::vector<Rational> sum(g.edge_count(), Rational(0));
  for (std::size_t j = 0; j < matchings.size(); ++j)
    for (int e : matchings[j]) sum[e] += lambda[j];
  return sum;
}

MatchingCombination decompose_matching(const GeneralGraph& g,
                                       const std::vector<Rational>& xbar) {
  return decompose_matching(g, xbar, default_enum_guard());
}

MatchingCombination decompose_matching(const GeneralGraph& g,
                                       const std::vector<Rational>& xbar,
                                       std::size_t guard) {
  if (static_cast<int>(xbar.size()) != g.edge_count())
    throw std::invalid_argument("value vector size mismatch");
  const std::string prefix = "point outside the matching polytope: ";
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [a, b] = g.edge(e);
    if (xbar[e] < 0)
      throw std::invalid_argument(prefix + "x(" + g.label(a) + "," + g.label(b) +
                                  ") >= 0");
  }
  for (int v = 0; v < g.node_count(); ++v) {
    Rational deg = 0;
    for (int e : g.incident_edges(v)) deg += xbar[e];
    if (deg > 1)
      throw std::invalid_argument(prefix + "x(delta(" + g.label(v) + ")) <= 1");
  }
  if (const auto blossom = separate_blossom(g, xbar))
    throw std::invalid_argument(prefix + "x(E[S]) <= (|S|-1)/2 for S=" +
                                node_list(g, blossom->node_set));

  const std::vector<Matching> all = enumerate_matchings(g, guard);
  std::vector<std::vector<Rational>> points;
  points.reserve(all.size());
  for (const Matching& m : all) points.push_back(chi_rational(g, m));
  const CombinationResult res = feasibility_combination(points, xbar);
  if (!res.feasible)
    throw std::logic_error("membership certified but no combination found");

  MatchingCombination comb;
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (res.lambda[j] == 0) continue;
    comb.matchings.push_back(all[j]);
    comb.lambda.push_back(res.lambda[j]);
  }
  if (comb.matchings.size() > static_cast<std::size_t>(g.edge_count()) + 1)
    throw std::logic_error("combination uses more than |E|+1 matchings");
  comb.k = denominator_lcm(comb.lambda);
  if (comb.weighted_chi(g) != xbar)
    throw std::logic_error("combination does not reproduce the point");
  return comb;
}

SurgeryResult surgery_down(const DownGadget& gad, const MatchingCombination& comb) {
  std::vector<Matching> ms = comb.multiset();
  const auto count_with = [&](int edge) {
    int c = 0;
    for (const Matching& m : ms) c += contains_edge(m, edge);
    return c;
  };
  if (count_with(gad.eu_edge) != count_with(gad.ew_edge))
    throw std::invalid_argument("unequal e_u and e_w multiplicities");

  SurgeryResult result;
  for (;;) {
    int ju = -1, jw = -1;
    for (std::size_t j = 0; j < ms.size() && (ju < 0 || jw < 0); ++j) {
      const bool has_u = contains_edge(ms[j], gad.eu_edge);
      const bool has_w = contains_edge(ms[j], gad.ew_edge);
      if (has_u && !has_w && ju < 0) ju = static_cast<int>(j);
      if (has_w && !has_u && jw < 0) jw = static_cast<int>(j);
    }
    if (ju < 0 && jw < 0) break;
    if (ju < 0 || jw < 0)
      throw std::logic_error("one-sided terms cannot be paired");
    Matching diff;
    std::set_symmetric_difference(ms[ju].begin(), ms[ju].end(), ms[jw].begin(),
                                  ms[jw].end(), std::back_inserter(diff));
    const std::vector<int> comp = component_of(gad.graph, diff, gad.eu_edge);
    if (contains_edge(comp, gad.ew_edge))
      throw std::logic_error("e_u and e_w share a component (parity breach)");
    const Matching new_u = symmetric_difference(ms[ju], comp);
    const Matching new_w = symmetric_difference(ms[jw], comp);
    if (!is_matching(gad.graph, new_u) || !is_matching(gad.graph, new_w))
      throw std::logic_error("exchange produced a non-matching");
    check_sum_preserved(gad.graph, ms[ju], ms[jw], new_u, new_w);
    ms[ju] = new_u;
    ms[jw] = new_w;
    ++result.exchanges;
  }

  result.combination = MatchingCombination::collapse(ms);
  if (result.combination.weighted_chi(gad.graph) != comb.weighted_chi(gad.graph))
    throw std::logic_error("surgery changed the weighted sum");
  return result;
}

SurgeryResult surgery_up(const UpGadget& gad, const MatchingCombination& comb) {
  std::vector<Matching> ms = comb.multiset();
  for (const Matching& m : ms) {
    bool has_a = false, has_b = false;
    for (int e : m) {
      const auto& [s, t] = gad.graph.edge(e);
      has_a |= s == gad.a || t == gad.a;
      has_b |= s == gad.b || t == gad.b;
    }
    const int special = contains_edge(m, gad.e1_edge) +
                        contains_edge(m, gad.e2_edge) +
                        contains_edge(m, gad.ab_edge);
    if (!has_a || !has_b || special > 1)
      throw HypothesisError(
          "gadget matching misses the tight-face structure (covers a and b, "
          "at most one of e1, e2, {a,b}); the tightness hypothesis was absent");
  }

  const auto in_ju = [&](const Matching& m) {
    return contains_edge(m, gad.u1a_edge) && contains_edge(m, gad.u2b_edge);
  };
  const auto in_jw = [&](const Matching& m) {
    return contains_edge(m, gad.w1b_edge) && contains_edge(m, gad.w2a_edge);
  };

  SurgeryResult result;
  for (;;) {
    int ju = -1, jw = -1;
    for (std::size_t j = 0; j < ms.size() && (ju < 0 || jw < 0); ++j) {
      if (ju < 0 && in_ju(ms[j])) ju = static_cast<int>(j);
      if (jw < 0 && in_jw(ms[j])) jw = static_cast<int>(j);
    }
    if (ju < 0 && jw < 0) break;
    if (ju < 0 || jw < 0)
      throw std::invalid_argument("unequal mixed-pair multiplicities");
    Matching diff;
    std::set_symmetric_difference(ms[ju].begin(), ms[ju].end(), ms[jw].begin(),
                                  ms[jw].end(), std::back_inserter(diff));
    const std::vector<int> comp = component_of(gad.graph, diff, gad.u2b_edge);
    if (contains_edge(comp, gad.u1a_edge) || contains_edge(comp, gad.w2a_edge))
      throw std::logic_error("u2-b component touches a (parity breach)");
    const Matching new_u = symmetric_difference(ms[ju], comp);
    const Matching new_w = symmetric_difference(ms[jw], comp);
    if (!is_matching(gad.graph, new_u) || !is_matching(gad.graph, new_w))
      throw std::logic_error("exchange produced a non-matching");
    check_sum_preserved(gad.graph, ms[ju], ms[jw], new_u, new_w);
    ms[ju] = new_u;
    ms[jw] = new_w;
    ++result.exchanges;
  }

  result.combination = MatchingCombination::collapse(ms);
  if (result.combination.weighted_chi(gad.graph) != comb.weighted_chi(gad.graph))
    throw std::logic_error("surgery changed the weighted sum");
  return result;
}

namespace {

// Shared tail: collapse per-copy terms into a LemmaDecomposition and verify
// that the combination reproduces the input point exactly.
LemmaDecomposition finish_lemma(const QProblem& p, const QPoint& pt,
                                const std::vector<Matching>& hat,
                                const std::vector<int>& y,
                                FamilyInstance certificate,
                                std::vector<Matching> before,
                                std::vector<Matching> after, int exchanges) {
  const int k = static_cast<int>(hat.size());
  std::vector<Rational> xsum(p.edge_count(), Rational(0));
  Rational ysum = 0;
  std::map<std::pair<Matching, int>, int> counts;
  for (int j = 0; j < k; ++j) {
    if (y[j] != y_of(p, hat[j]))
      throw std::logic_error("term y differs from the matching's own y");
    for (int e : hat[j]) xsum[e] += 1;
    ysum += y[j];
    ++counts[{hat[j], y[j]}];
  }
  for (int e = 0; e < p.edge_count(); ++e)
    if (xsum[e] != Rational(k) * pt.x[e])
      throw std::logic_error("decomposition does not reproduce x");
  if (ysum != Rational(k) * pt.y)
    throw std::logic_error("decomposition does not reproduce y");

  LemmaDecomposition out;
  for (const auto& [term, c] : counts) {
    out.terms.push_back(LemmaTerm{term.first, term.second});
    out.lambda.push_back(Rational(c, k));
  }
  out.k = denominator_lcm(out.lambda);
  out.certificate = std::move(certificate);
  out.gadget_before = std::move(before);
  out.gadget_after = std::move(after);
  out.exchanges = exchanges;
  return out;
}

void require_description(const QProblem& p, const QPoint& pt, Variant variant,
                         const char* which) {
  for (const LinearInequality& row : variant_description(p, variant))
    if (violation(row, pt) > 0)
      throw HypothesisError(std::string("input violates the ") + which +
                            " description: " + row.tag);
}

}  // namespace

LemmaDecomposition lemma_down_decompose(const QProblem& p, const QPoint& pt) {
  if (static_cast<int>(pt.x.size()) != p.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
  require_description(p, pt, Variant::Down, "downward");

  // Tight certificate: y <= x_{e1}, then y <= x_{e2}, then the first tight
  // facet quadratic-down row in lexicographic order.
  FamilyInstance certificate;
  bool have_cert = false;
  for (int i = 1; i <= 2 && !have_cert; ++i)
    if (violation(build(p, stdlin_instance(i)), pt) == 0) {
      certificate = stdlin_instance(i);
      have_cert = true;
    }
  if (!have_cert)
    for (FamilyInstance& inst : enumerate_family(p, Family::DownFacets, p.node_count()))
      if (violation(build(p, inst), pt) == 0) {
        certificate = std::move(inst);
        have_cert = true;
        break;
      }
  if (!have_cert) throw HypothesisError("no tight certificate supplied");

  const DownGadget gad = build_down_gadget(p, pt);
  const MatchingCombination comb = decompose_matching(gad.graph, gad.xbar);
  std::vector<Matching> before = comb.multiset();
  const SurgeryResult sr = surgery_down(gad, comb);
  std::vector<Matching> after = sr.combination.multiset();
  const int k = static_cast<int>(after.size());

  // Claim checks licensed by the tight row.
  if (certificate.kind == FamilyKind::StdLin) {
    const int forbidden = certificate.index == 1 ? gad.e1_edge : gad.e2_edge;
    for (const Matching& m : after)
      if (contains_edge(m, forbidden))
        throw std::logic_error("matching uses an edge with zero gadget value");
  } else {
    std::vector<char> in_s(gad.graph.node_count(), 0);
    for (int v : certificate.node_set) in_s[v] = 1;
    for (const Matching& m : after) {
      int crossing = 0;
      for (int e : m) {
        const auto& [a, b] = gad.graph.edge(e);
        crossing += in_s[a] != in_s[b];
      }
      if (crossing > 1)
        throw std::logic_error("matching crosses the tight odd set twice");
    }
  }

  std::vector<Matching> hat(k);
  std::vector<int> y(k, 0);
  const std::vector<int> cycle = [&] {
    std::vector<int> c{gad.e1_edge, gad.e2_edge, gad.eu_edge, gad.ew_edge};
    std::sort(c.begin(), c.end());
    return c;
  }();
  for (int j = 0; j < k; ++j) {
    const bool has_u = contains_edge(after[j], gad.eu_edge);
    const bool has_w = contains_edge(after[j], gad.ew_edge);
    if (has_u != has_w) throw std::logic_error("surgery left a one-sided term");
    if (has_u) {
      if (contains_edge(after[j], gad.e1_edge) || contains_edge(after[j], gad.e2_edge))
        throw std::logic_error("gadget edges coexist with distinguished edges");
      hat[j] = symmetric_difference(after[j], cycle);
      y[j] = 1;
    } else {
      hat[j] = after[j];
    }
    for (int e : hat[j])
      if (e >= p.edge_count())
        throw std::logic_error("gadget edge survived the lift");
    if (!is_matching(gad.graph, hat[j]))
      throw std::logic_error("lift produced a non-matching");
  }

  return finish_lemma(p, pt, hat, y, std::move(certificate), std::move(before),
                      std::move(after), sr.exchanges);
}

LemmaDecomposition lemma_up_decompose(const QProblem& p, const QPoint& pt) {
  if (static_cast<int>(pt.x.size()) != p.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
  require_description(p, pt, Variant::Up, "upward");

  FamilyInstance certificate;
  bool have_cert = false;
  for (FamilyInstance& inst : enumerate_family(p, Family::UpFacets, p.node_count()))
    if (violation(build(p, inst), pt) == 0) {
      certificate = std::move(inst);
      have_cert = true;
      break;
    }
  if (!have_cert) throw HypothesisError("no tight certificate supplied");

  const UpGadget gad = build_up_gadget(p, pt);
  const MatchingCombination comb = decompose_matching(gad.graph, gad.xbar);
  std::vector<Matching> before = comb.multiset();
  const SurgeryResult sr = surgery_up(gad, comb);
  std::vector<Matching> after = sr.combination.multiset();
  const int k = static_cast<int>(after.size());

  const std::vector<int> cycle1 = [&] {
    std::vector<int> c{gad.u1a_edge, gad.ab_edge, gad.w1b_edge, gad.e1_edge};
    std::sort(c.begin(), c.end());
    return c;
  }();
  const std::vector<int> cycle2 = [&] {
    std::vector<int> c{gad.u2b_edge, gad.ab_edge, gad.w2a_edge, gad.e2_edge};
    std::sort(c.begin(), c.end());
    return c;
  }();

  std::vector<Matching> hat(k);
  std::vector<int> y(k, 0);
  std::vector<Rational> tilde_sum(gad.graph.edge_count(), Rational(0));
  for (int j = 0; j < k; ++j) {
    Matching tilde;
    if (contains_edge(after[j], gad.ab_edge)) {
      tilde = after[j];  // N-type: untouched
    } else if (contains_edge(after[j], gad.u1a_edge) &&
               contains_edge(after[j], gad.w1b_edge)) {
      tilde = symmetric_difference(after[j], cycle1);
    } else if (contains_edge(after[j], gad.u2b_edge) &&
               contains_edge(after[j], gad.w2a_edge)) {
      tilde = symmetric_difference(after[j], cycle2);
    } else {
      throw std::logic_error("unexpected gadget matching after surgery");
    }
    if (!contains_edge(tilde, gad.ab_edge))
      throw std::logic_error("trivial lift misses {a,b}");
    if (!is_matching(gad.graph, tilde))
      throw std::logic_error("cycle undo produced a non-matching");
    for (int e : tilde) tilde_sum[e] += 1;
    Matching real;
    for (int e : tilde)
      if (e != gad.ab_edge) {
        if (e >= p.edge_count())
          throw std::logic_error("gadget edge survived the lift");
        real.push_back(e);
      }
    hat[j] = std::move(real);
    y[j] = y_of(p, hat[j]);
  }
  // The undone combination must hit the trivial lift exactly.
  for (int e = 0; e < gad.graph.edge_count(); ++e)
    if (tilde_sum[e] != Rational(k) * gad.xtilde[e])
      throw std::logic_error("cycle undo does not reproduce the trivial lift");

  return finish_lemma(p, pt, hat, y, std::move(certificate), std::move(before),
                      std::move(after), sr.exchanges);
}

}  // namespace qmatch
