#include "qmatch/gadgets.hpp"

#include <algorithm>
#include <stdexcept>

#include "qmatch/inequality.hpp"

namespace qmatch {

namespace {

void check_point_shape(const QProblem& p, const QPoint& pt) {
  if (static_cast<int>(pt.x.size()) != p.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
}

[[noreturn]] void reject(const std::string& prefix, const QProblem& p,
                         const FamilyInstance& inst) {
  throw std::invalid_argument(prefix + ": " + build(p, inst).tag);
}

}  // namespace

DownGadget build_down_gadget(const QProblem& p, const QPoint& pt) {
  check_point_shape(p, pt);
  const std::string prefix = "point violates base constraints";
  if (pt.y < 0) reject(prefix, p, FamilyInstance{FamilyKind::YLower});
  for (int e = 0; e < p.edge_count(); ++e)
    if (pt.x[e] < 0) reject(prefix, p, nonneg_instance(e));
  for (int i = 1; i <= 2; ++i) {
    const int ei = i == 1 ? p.e1_index() : p.e2_index();
    if (pt.x[ei] - pt.y < 0) reject(prefix, p, stdlin_instance(i));
  }

  DownGadget gad;
  gad.graph = p.graph();
  gad.e1_edge = p.e1_index();
  gad.e2_edge = p.e2_index();
  gad.xbar = pt.x;
  gad.xbar[p.e1_index()] -= pt.y;
  gad.xbar[p.e2_index()] -= pt.y;
  gad.eu_edge = gad.graph.add_edge(p.u1(), p.u2());
  gad.xbar.push_back(pt.y);
  gad.ew_edge = gad.graph.add_edge(p.w1(), p.w2());
  gad.xbar.push_back(pt.y);
  return gad;
}

UpGadget build_up_gadget(const QProblem& p, const QPoint& pt) {
  check_point_shape(p, pt);
  const std::string prefix = "point violates premise";
  if (pt.y < 0) reject(prefix, p, FamilyInstance{FamilyKind::YLower});
  for (int e = 0; e < p.edge_count(); ++e)
    if (pt.x[e] < 0) reject(prefix, p, nonneg_instance(e));
  const Rational x1 = pt.x[p.e1_index()];
  const Rational x2 = pt.x[p.e2_index()];
  if (Rational(1) - x1 - x2 + pt.y < 0) {
    // With x_{u1,w2} >= 0 this entry can only be negative when the minimal
    // quadratic-up row is itself violated.
    std::vector<int> s{p.u1(), p.w2()};
    std::sort(s.begin(), s.end());
    reject(prefix, p, up_instance(std::move(s)));
  }
  for (int i = 1; i <= 2; ++i) {
    const Rational& xi = i == 1 ? x1 : x2;
    if (xi - pt.y / 2 < 0) reject(prefix, p, stdlin_instance(i));
  }

  UpGadget gad;
  gad.graph = GeneralGraph(p.node_count() + 2);
  {
    const GeneralGraph base = p.graph();
    for (const auto& [s, t] : base.edges()) gad.graph.add_edge(s, t);
    for (int v = 0; v < p.node_count(); ++v) gad.graph.set_label(v, base.label(v));
  }
  gad.e1_edge = p.e1_index();
  gad.e2_edge = p.e2_index();
  gad.a = p.node_count();
  gad.b = p.node_count() + 1;
  gad.graph.set_label(gad.a, "a");
  gad.graph.set_label(gad.b, "b");
  gad.ab_edge = gad.graph.add_edge(gad.a, gad.b);
  gad.u1a_edge = gad.graph.add_edge(p.u1(), gad.a);
  gad.u2b_edge = gad.graph.add_edge(p.u2(), gad.b);
  gad.w1b_edge = gad.graph.add_edge(p.w1(), gad.b);
  gad.w2a_edge = gad.graph.add_edge(p.w2(), gad.a);

  const int ge = gad.graph.edge_count();
  gad.xtilde.assign(ge, Rational(0));
  gad.xbar.assign(ge, Rational(0));
  for (int e = 0; e < p.edge_count(); ++e) gad.xtilde[e] = gad.xbar[e] = pt.x[e];
  gad.xtilde[gad.ab_edge] = 1;

  gad.xbar[p.e1_index()] = pt.y / 2;
  gad.xbar[p.e2_index()] = pt.y / 2;
  gad.xbar[gad.ab_edge] = Rational(1) - x1 - x2 + pt.y;
  gad.xbar[gad.u1a_edge] = x1 - pt.y / 2;
  gad.xbar[gad.w1b_edge] = x1 - pt.y / 2;
  gad.xbar[gad.u2b_edge] = x2 - pt.y / 2;
  gad.xbar[gad.w2a_edge] = x2 - pt.y / 2;

  for (int v : {gad.a, gad.b}) {
    Rational deg = 0;
    for (int e : gad.graph.incident_edges(v)) deg += gad.xbar[e];
    if (deg != 1) throw std::logic_error("gadget degree accounting mismatch");
  }
  return gad;
}

}  // namespace qmatch
