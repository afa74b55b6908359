#include "qmatch/bmatching.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "qmatch/errors.hpp"
#include "qmatch/exactlp.hpp"

namespace qmatch {

namespace {

std::string edge_name(const QProblem& p, int e) {
  const auto [u, w] = p.graph().edge(e);
  return "e(" + p.node_name(u) + "," + p.node_name(w) + ")";
}

std::string node_set_tag(const QProblem& p, const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += p.node_name(s[i]);
  }
  return out + "}";
}

std::string edge_set_tag(const QProblem& p, const std::vector<int>& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ",";
    out += edge_name(p, f[i]);
  }
  return out + "}";
}

void add_coef(std::vector<std::pair<int, Rational>>& coef, int e, Rational c) {
  auto it = std::lower_bound(coef.begin(), coef.end(), e,
                             [](const auto& a, int b) { return a.first < b; });
  if (it != coef.end() && it->first == e)
    it->second += c;
  else
    coef.insert(it, {e, std::move(c)});
}

void check_node_set(const QProblem& p, const std::vector<int>& s) {
  if (s.empty() || !std::is_sorted(s.begin(), s.end()) ||
      std::adjacent_find(s.begin(), s.end()) != s.end() || s.front() < 0 ||
      s.back() >= p.node_count())
    throw std::invalid_argument("malformed node set");
}

bool crosses(const QProblem& p, const std::vector<int>& s, int edge) {
  const auto [a, b] = p.graph().edge(edge);
  const bool in_a = std::binary_search(s.begin(), s.end(), a);
  const bool in_b = std::binary_search(s.begin(), s.end(), b);
  return in_a != in_b;
}

Integer floor_half(const Integer& v) { return v / 2; }  // v >= 0

QPoint as_qpoint(const BPoint& pt) { return QPoint{pt.x, pt.y}; }

std::vector<Rational> dense_of(const BPoint& pt) {
  std::vector<Rational> z = pt.x;
  z.push_back(pt.y);
  return z;
}

}  // namespace

static void validate_bproblem(const BMatchingProblem& p) {
  if (static_cast<int>(p.b.size()) != p.base.node_count())
    throw std::invalid_argument("bound vector size mismatch");
  for (int v : p.b)
    if (v < 1) throw std::invalid_argument("node bounds must be positive");
  if (p.c) {
    if (static_cast<int>(p.c->size()) != p.base.edge_count())
      throw std::invalid_argument("capacity vector size mismatch");
    for (int v : *p.c)
      if (v < 1) throw std::invalid_argument("capacities must be positive");
    if ((*p.c)[p.base.e1_index()] != 1 || (*p.c)[p.base.e2_index()] != 1)
      throw std::invalid_argument(
          "both distinguished edges need capacity one");
  } else {
    for (int e : {p.base.e1_index(), p.base.e2_index()}) {
      const auto [u, w] = p.base.graph().edge(e);
      if (p.b[u] != 1 && p.b[w] != 1)
        throw std::invalid_argument(
            "each distinguished edge needs an endpoint with bound one");
    }
  }
}

BMatchingProblem::BMatchingProblem(QProblem base_, std::vector<int> b_)
    : base(std::move(base_)), b(std::move(b_)) {
  validate_bproblem(*this);
}

BMatchingProblem::BMatchingProblem(QProblem base_, std::vector<int> b_,
                                   std::vector<int> c_)
    : base(std::move(base_)), b(std::move(b_)), c(std::move(c_)) {
  validate_bproblem(*this);
}

int BMatchingProblem::upper(int e) const {
  const auto [u, w] = base.graph().edge(e);
  const int deg = std::min(b[u], b[w]);
  return c ? std::min((*c)[e], deg) : deg;
}

Integer BMatchingProblem::b_sum(const std::vector<int>& s) const {
  Integer out = 0;
  for (int v : s) out += b[v];
  return out;
}

Integer BMatchingProblem::c_sum(const std::vector<int>& f) const {
  if (!c) throw std::logic_error("capacity sum on an uncapacitated instance");
  Integer out = 0;
  for (int e : f) out += (*c)[e];
  return out;
}

std::vector<BPoint> enumerate_bmatchings(const BMatchingProblem& p) {
  return enumerate_bmatchings(p, 1'000'000);
}

std::vector<BPoint> enumerate_bmatchings(const BMatchingProblem& p,
                                         std::size_t guard) {
  Integer combos = 1;
  for (int e = 0; e < p.base.edge_count(); ++e) combos *= p.upper(e) + 1;
  if (combos > Integer(static_cast<unsigned long>(guard)))
    throw GuardError("b-matching enumeration bound " + combos.str() +
                     " exceeds the guard");

  std::vector<BPoint> out;
  std::vector<int> x(p.base.edge_count(), 0);
  std::vector<int> rem = p.b;
  const auto rec = [&](auto&& self, int e) -> void {
    if (e == p.base.edge_count()) {
      BPoint pt;
      pt.x.assign(x.begin(), x.end());
      pt.y = x[p.base.e1_index()] == 1 && x[p.base.e2_index()] == 1 ? 1 : 0;
      out.push_back(std::move(pt));
      return;
    }
    const auto [u, w] = p.base.graph().edge(e);
    const int ub = std::min({p.upper(e), rem[u], rem[w]});
    for (int v = 0; v <= ub; ++v) {
      x[e] = v;
      rem[u] -= v;
      rem[w] -= v;
      self(self, e + 1);
      rem[u] += v;
      rem[w] += v;
    }
    x[e] = 0;
  };
  rec(rec, 0);
  return out;
}

SplitLift split_nodes_lift(const BMatchingProblem& p, const BPoint& pt) {
  if (p.capacitated())
    throw std::invalid_argument("split lift requires an uncapacitated instance");
  for (int v : {p.base.u1(), p.base.u2(), p.base.w1(), p.base.w2()})
    if (p.b[v] != 1)
      throw std::invalid_argument(
          "split lift requires bound one on all four distinguished nodes");
  if (static_cast<int>(pt.x.size()) != p.base.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
  for (const Rational& v : pt.x)
    if (v < 0) throw std::invalid_argument("point must be nonnegative");
  if (pt.y < 0) throw std::invalid_argument("point must be nonnegative");

  const int m = p.base.m(), n = p.base.n();
  std::vector<int> ustart(m + 1, 0), wstart(n + 1, 0);
  for (int i = 0; i < m; ++i) ustart[i + 1] = ustart[i] + p.b[p.base.unode(i)];
  for (int j = 0; j < n; ++j) wstart[j + 1] = wstart[j] + p.b[p.base.wnode(j)];
  const int mm = ustart[m], nn = wstart[n];

  const int u1i = p.base.u1(), u2i = p.base.u2();
  const int w1j = p.base.w1() - m, w2j = p.base.w2() - m;
  QProblem split(mm, nn, {ustart[u1i], wstart[w1j]}, {ustart[u2i], wstart[w2j]});

  SplitLift lift{std::move(split), QPoint{}, {}, {}};
  lift.copy_of.resize(mm + nn);
  lift.copy_index.resize(mm + nn);
  for (int i = 0; i < m; ++i)
    for (int k = ustart[i]; k < ustart[i + 1]; ++k) {
      lift.copy_of[k] = p.base.unode(i);
      lift.copy_index[k] = k - ustart[i];
    }
  for (int j = 0; j < n; ++j)
    for (int k = wstart[j]; k < wstart[j + 1]; ++k) {
      lift.copy_of[mm + k] = p.base.wnode(j);
      lift.copy_index[mm + k] = k - wstart[j];
    }

  lift.point.x.assign(lift.problem.edge_count(), Rational(0));
  lift.point.y = pt.y;
  for (int e = 0; e < p.base.edge_count(); ++e) {
    const auto [u, w] = p.base.graph().edge(e);
    const int i = u, j = w - m;
    const Rational share = pt.x[e] / (Rational(p.b[u]) * Rational(p.b[w]));
    for (int ci = ustart[i]; ci < ustart[i + 1]; ++ci)
      for (int cj = wstart[j]; cj < wstart[j + 1]; ++cj)
        lift.point.x[ci * nn + cj] = share;
  }
  return lift;
}

BPoint project_split(const BMatchingProblem& p, const SplitLift& lift,
                     const QPoint& q) {
  if (static_cast<int>(q.x.size()) != lift.problem.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
  BPoint out;
  out.x.assign(p.base.edge_count(), Rational(0));
  out.y = q.y;
  const int nn = lift.problem.n();
  for (int ci = 0; ci < lift.problem.m(); ++ci)
    for (int cj = 0; cj < nn; ++cj) {
      const int u = lift.copy_of[ci];
      const int w = lift.copy_of[lift.problem.m() + cj];
      const auto e = p.base.graph().edge_index(u, w);
      if (!e) throw std::logic_error("split edge projects to no base edge");
      out.x[*e] += q.x[ci * nn + cj];
    }
  return out;
}

SubdivisionLift subdivide_edges_lift(const BMatchingProblem& p, const BPoint& pt) {
  if (!p.capacitated())
    throw std::invalid_argument(
        "subdivision lift requires a capacitated instance");
  if (static_cast<int>(pt.x.size()) != p.base.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
  for (int e = 0; e < p.base.edge_count(); ++e) {
    if (pt.x[e] < 0) throw std::invalid_argument("point must be nonnegative");
    if (pt.x[e] > (*p.c)[e])
      throw std::invalid_argument("value exceeds the capacity of " +
                                  edge_name(p.base, e));
  }

  const int base_nodes = p.base.node_count();
  const int base_edges = p.base.edge_count();
  GeneralGraph g(base_nodes + 2 * base_edges);
  for (int v = 0; v < base_nodes; ++v) g.set_label(v, p.base.node_name(v));

  SubdivisionLift lift{GeneralGraph(1), p.b, -1, -1, BPoint{}, {}};
  lift.b.resize(base_nodes + 2 * base_edges);
  lift.point.y = pt.y;
  for (int e = 0; e < base_edges; ++e) {
    const auto [u, w] = p.base.graph().edge(e);
    const int ue = base_nodes + 2 * e, we = base_nodes + 2 * e + 1;
    g.set_label(ue, p.base.node_name(u) + ":" + edge_name(p.base, e));
    g.set_label(we, p.base.node_name(w) + ":" + edge_name(p.base, e));
    lift.b[ue] = lift.b[we] = (*p.c)[e];
    const int first = g.add_edge(u, ue);
    const int middle = g.add_edge(ue, we);
    const int last = g.add_edge(we, w);
    lift.path_edges.push_back({first, middle, last});
    lift.point.x.push_back(pt.x[e]);
    lift.point.x.push_back(Rational((*p.c)[e]) - pt.x[e]);
    lift.point.x.push_back(pt.x[e]);
  }
  lift.e1_edge = lift.path_edges[p.base.e1_index()][0];
  lift.e2_edge = lift.path_edges[p.base.e2_index()][0];
  lift.graph = std::move(g);
  return lift;
}

BPoint project_subdivision(const BMatchingProblem& p, const SubdivisionLift& lift,
                           const BPoint& lifted) {
  if (static_cast<int>(lifted.x.size()) != lift.graph.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
  BPoint out;
  out.x.reserve(p.base.edge_count());
  for (int e = 0; e < p.base.edge_count(); ++e)
    out.x.push_back(lifted.x[lift.path_edges[e][0]]);
  out.y = lifted.y;
  return out;
}

std::vector<FamilyInstance> bmatching_families(const BMatchingProblem& p,
                                               int max_s, int max_f) {
  std::vector<FamilyInstance> out;
  const QProblem& q = p.base;
  std::vector<int> s;

  const auto emit = [&] {
    if (!crosses(q, s, q.e1_index()) || !crosses(q, s, q.e2_index())) return;
    if (!p.capacitated()) {
      const bool odd = (p.b_sum(s) % 2) != 0;
      out.push_back({odd ? FamilyKind::BDown : FamilyKind::BUp, -1, s, {}});
      return;
    }
    std::vector<int> boundary;
    for (int e = 0; e < q.edge_count(); ++e)
      if (e != q.e1_index() && e != q.e2_index() && crosses(q, s, e))
        boundary.push_back(e);
    std::vector<int> f;
    const auto emit_f = [&](auto&& self, std::size_t next) -> void {
      const bool odd = ((p.b_sum(s) + p.c_sum(f)) % 2) != 0;
      out.push_back({odd ? FamilyKind::CapBDown : FamilyKind::CapBUp, -1, s, f});
      if (max_f >= 0 && static_cast<int>(f.size()) == max_f) return;
      for (std::size_t i = next; i < boundary.size(); ++i) {
        f.push_back(boundary[i]);
        self(self, i + 1);
        f.pop_back();
      }
    };
    emit_f(emit_f, 0);
  };

  const auto rec = [&](auto&& self, int next) -> void {
    if (!s.empty()) emit();
    if (static_cast<int>(s.size()) == max_s) return;
    for (int v = next; v < q.node_count(); ++v) {
      s.push_back(v);
      self(self, v + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

LinearInequality bmatching_row(const BMatchingProblem& p, FamilyKind kind,
                               const std::vector<int>& s,
                               const std::vector<int>& f) {
  const QProblem& q = p.base;
  check_node_set(q, s);
  if (!crosses(q, s, q.e1_index()) || !crosses(q, s, q.e2_index()))
    throw std::invalid_argument(
        "both distinguished edges must cross the node set");
  const bool cap_kind =
      kind == FamilyKind::CapBDown || kind == FamilyKind::CapBUp;
  if (!cap_kind && kind != FamilyKind::BDown && kind != FamilyKind::BUp)
    throw std::invalid_argument("not a quadratic b-matching cut kind");
  if (cap_kind && !p.capacitated())
    throw std::invalid_argument(
        "capacitated rows need a capacitated instance");
  if (!cap_kind && !f.empty())
    throw std::invalid_argument("uncapacitated rows take no edge set");
  if (!std::is_sorted(f.begin(), f.end()) ||
      std::adjacent_find(f.begin(), f.end()) != f.end())
    throw std::invalid_argument("malformed edge set");
  for (int e : f)
    if (e == q.e1_index() || e == q.e2_index() || !crosses(q, s, e))
      throw std::invalid_argument(
          "edge set must consist of non-distinguished boundary edges");

  LinearInequality row;
  for (int e = 0; e < q.edge_count(); ++e) {
    const auto [a, b] = q.graph().edge(e);
    if (std::binary_search(s.begin(), s.end(), a) &&
        std::binary_search(s.begin(), s.end(), b))
      add_coef(row.xcoef, e, 1);
  }
  for (int e : f) add_coef(row.xcoef, e, 1);

  const Integer total = p.b_sum(s) + (cap_kind ? p.c_sum(f) : Integer(0));
  const bool down = kind == FamilyKind::BDown || kind == FamilyKind::CapBDown;
  if (down) {
    row.ycoef = 1;
    row.rhs = Rational(floor_half(total));
  } else {
    add_coef(row.xcoef, q.e1_index(), 1);
    add_coef(row.xcoef, q.e2_index(), 1);
    row.ycoef = -1;
    row.rhs = Rational(floor_half(total + 1));
  }

  switch (kind) {
    case FamilyKind::BDown: row.tag = "BDOWN S=" + node_set_tag(q, s); break;
    case FamilyKind::BUp: row.tag = "BUP S=" + node_set_tag(q, s); break;
    case FamilyKind::CapBDown:
      row.tag = "CAPBDOWN S=" + node_set_tag(q, s) + " F=" + edge_set_tag(q, f);
      break;
    default:
      row.tag = "CAPBUP S=" + node_set_tag(q, s) + " F=" + edge_set_tag(q, f);
      break;
  }
  return row;
}

LinearInequality build(const BMatchingProblem& p, const FamilyInstance& inst) {
  const QProblem& q = p.base;
  switch (inst.kind) {
    case FamilyKind::NonNeg:
    case FamilyKind::YLower:
    case FamilyKind::YUpper:
    case FamilyKind::StdLin:
      return build(q, inst);
    case FamilyKind::BDegree: {
      if (inst.index < 0 || inst.index >= q.node_count())
        throw std::invalid_argument("node out of range");
      LinearInequality row;
      const GeneralGraph host = q.graph();
      for (int e : host.incident_edges(inst.index)) add_coef(row.xcoef, e, 1);
      row.rhs = p.b[inst.index];
      row.tag = "BDEGREE " + q.node_name(inst.index);
      return row;
    }
    case FamilyKind::Capacity: {
      if (!p.capacitated())
        throw std::invalid_argument("capacity rows need a capacitated instance");
      if (inst.index < 0 || inst.index >= q.edge_count())
        throw std::invalid_argument("edge out of range");
      LinearInequality row;
      row.xcoef = {{inst.index, Rational(1)}};
      row.rhs = (*p.c)[inst.index];
      row.tag = "CAP " + edge_name(q, inst.index);
      return row;
    }
    case FamilyKind::BDown:
    case FamilyKind::BUp:
    case FamilyKind::CapBDown:
    case FamilyKind::CapBUp: {
      const bool cap_kind =
          inst.kind == FamilyKind::CapBDown || inst.kind == FamilyKind::CapBUp;
      const Integer total =
          p.b_sum(inst.node_set) + (cap_kind ? p.c_sum(inst.edge_set) : Integer(0));
      const bool odd = (total % 2) != 0;
      const bool down =
          inst.kind == FamilyKind::BDown || inst.kind == FamilyKind::CapBDown;
      if (down != odd)
        throw std::invalid_argument("parity filter excludes this instance");
      return bmatching_row(p, inst.kind, inst.node_set, inst.edge_set);
    }
    default:
      throw std::invalid_argument("not a b-matching family kind");
  }
}

std::vector<LinearInequality> bmatching_description(const BMatchingProblem& p,
                                                    int max_f) {
  const QProblem& q = p.base;
  std::vector<LinearInequality> rows;
  for (int e = 0; e < q.edge_count(); ++e)
    rows.push_back(build(q, nonneg_instance(e)));
  for (int v = 0; v < q.node_count(); ++v)
    rows.push_back(build(p, {FamilyKind::BDegree, v, {}, {}}));
  rows.push_back(build(q, {FamilyKind::YLower, -1, {}, {}}));
  rows.push_back(build(q, {FamilyKind::YUpper, -1, {}, {}}));
  rows.push_back(build(q, stdlin_instance(1)));
  rows.push_back(build(q, stdlin_instance(2)));
  if (p.capacitated())
    for (int e = 0; e < q.edge_count(); ++e)
      rows.push_back(build(p, {FamilyKind::Capacity, e, {}, {}}));
  for (const FamilyInstance& inst :
       bmatching_families(p, q.node_count(), max_f))
    rows.push_back(build(p, inst));
  return rows;
}

std::vector<LinearInequality> half_crossing_rows(const BMatchingProblem& p,
                                                 const std::vector<int>& s) {
  const QProblem& q = p.base;
  check_node_set(q, s);
  const bool c1 = crosses(q, s, q.e1_index());
  const bool c2 = crosses(q, s, q.e2_index());
  if (c1 == c2)
    throw std::invalid_argument(
        "set must be crossed by exactly one distinguished edge");
  const int ej = c1 ? q.e1_index() : q.e2_index();
  const int ei = c1 ? q.e2_index() : q.e1_index();
  const Integer bs = p.b_sum(s);

  std::vector<std::pair<int, Rational>> inside;
  for (int e = 0; e < q.edge_count(); ++e) {
    const auto [a, b] = q.graph().edge(e);
    if (std::binary_search(s.begin(), s.end(), a) &&
        std::binary_search(s.begin(), s.end(), b))
      add_coef(inside, e, 1);
  }

  std::vector<LinearInequality> rows(4);
  const std::string suffix = " S=" + node_set_tag(q, s);
  rows[0].xcoef = inside;
  add_coef(rows[0].xcoef, ei, -1);
  rows[0].ycoef = 1;
  rows[0].rhs = Rational(floor_half(bs));
  rows[0].tag = "SIDE1" + suffix;

  rows[1].xcoef = inside;
  add_coef(rows[1].xcoef, ej, 1);
  rows[1].ycoef = -1;
  rows[1].rhs = Rational(floor_half(bs + 1));
  rows[1].tag = "SIDE2" + suffix;

  rows[2].xcoef = inside;
  rows[2].ycoef = 1;
  rows[2].rhs = Rational(floor_half(bs + 1));
  rows[2].tag = "SIDE3" + suffix;

  rows[3].xcoef = inside;
  add_coef(rows[3].xcoef, q.e1_index(), 1);
  add_coef(rows[3].xcoef, q.e2_index(), 1);
  rows[3].ycoef = -1;
  rows[3].rhs = Rational(floor_half(bs + 2));
  rows[3].tag = "SIDE4" + suffix;
  return rows;
}

BVerifyReport verify_bmatching_description(const BMatchingProblem& p) {
  return verify_bmatching_description(p, BVerifyOptions{});
}

BVerifyReport verify_bmatching_description(const BMatchingProblem& p,
                                           const BVerifyOptions& opts) {
  const QProblem& q = p.base;
  BVerifyReport report;
  const std::vector<BPoint> pts = enumerate_bmatchings(p, opts.enum_guard);
  report.integer_points = pts.size();
  const std::vector<LinearInequality> rows = bmatching_description(p, opts.max_f);

  // (a) Validity of the whole description on every integer point.
  report.valid = true;
  for (const LinearInequality& row : rows)
    for (const BPoint& pt : pts)
      if (violation(row, as_qpoint(pt)) > 0) {
        report.valid = false;
        std::string note = row.tag + " at (";
        for (const Rational& v : pt.x) note += to_fraction_string(v) + ",";
        note += "y=" + to_fraction_string(pt.y) + ")";
        report.validity_failures.push_back(std::move(note));
      }

  // (b) Completeness: the description's vertices are exactly the extreme
  // integer points.
  std::vector<std::vector<Rational>> dense;
  dense.reserve(pts.size());
  for (const BPoint& pt : pts) dense.push_back(dense_of(pt));
  const std::vector<std::vector<Rational>> verts =
      vertex_enumeration(hpolytope_of(q, rows));
  report.vertex_count = verts.size();
  const std::set<std::vector<Rational>> vert_set(verts.begin(), verts.end());
  const std::set<std::vector<Rational>> point_set(dense.begin(), dense.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<std::vector<Rational>> others;
    others.reserve(dense.size() - 1);
    for (std::size_t j = 0; j < dense.size(); ++j)
      if (j != i) others.push_back(dense[j]);
    const bool extreme = !feasibility_combination(others, dense[i]).feasible;
    if (extreme && !vert_set.count(dense[i])) report.missing.push_back(pts[i]);
  }
  for (const auto& v : verts)
    if (!point_set.count(v)) {
      BPoint pt;
      pt.x.assign(v.begin(), v.end() - 1);
      pt.y = v.back();
      report.extra.push_back(std::move(pt));
    }
  report.complete = report.missing.empty() && report.extra.empty();

  // (c) Half-crossing companion rows: valid on the integer points, implied by
  // the description (their maximum over its vertices stays within the bound),
  // and facet-supporting only where the description already has the facet.
  report.side_rows_valid = true;
  report.side_rows_redundant = true;
  report.side_rows_no_new_facets = true;
  const int facet_rank = q.edge_count();  // affine dimension of a facet
  const auto tight_vertices = [&](const LinearInequality& row) {
    std::vector<std::vector<Rational>> tight;
    for (const auto& v : verts)
      if (violation(row, qpoint_of(v)) == 0) tight.push_back(v);
    return tight;
  };
  std::vector<std::set<std::vector<Rational>>> described_tight_sets;
  std::vector<int> s;
  const auto side_check = [&] {
    if (crosses(q, s, q.e1_index()) == crosses(q, s, q.e2_index())) return;
    for (const LinearInequality& row : half_crossing_rows(p, s)) {
      for (const BPoint& pt : pts)
        if (violation(row, as_qpoint(pt)) > 0) report.side_rows_valid = false;
      for (const auto& v : verts)
        if (violation(row, qpoint_of(v)) > 0) report.side_rows_redundant = false;
      const std::vector<std::vector<Rational>> tight = tight_vertices(row);
      if (affine_rank(tight) < facet_rank) continue;
      // The tight set spans a facet; it must be one the description defines.
      if (described_tight_sets.empty())
        for (const LinearInequality& drow : rows)
          if (drow.sense == Sense::LessEqual) {
            const auto dt = tight_vertices(drow);
            described_tight_sets.emplace_back(dt.begin(), dt.end());
          }
      const std::set<std::vector<Rational>> key(tight.begin(), tight.end());
      if (std::find(described_tight_sets.begin(), described_tight_sets.end(),
                    key) == described_tight_sets.end())
        report.side_rows_no_new_facets = false;
    }
  };
  const auto side_rec = [&](auto&& self, int next) -> void {
    if (!s.empty()) side_check();
    for (int v = next; v < q.node_count(); ++v) {
      s.push_back(v);
      self(self, v + 1);
      s.pop_back();
    }
  };
  side_rec(side_rec, 0);

  // (d) Parity-filtered rows are valid on integer points and implied by the
  // kept system on random fractional points of the described polytope.
  std::vector<LinearInequality> filtered;
  {
    std::vector<int> t;
    const auto emit = [&] {
      if (!crosses(q, t, q.e1_index()) || !crosses(q, t, q.e2_index())) return;
      if (!p.capacitated()) {
        const bool odd = (p.b_sum(t) % 2) != 0;
        filtered.push_back(bmatching_row(
            p, odd ? FamilyKind::BUp : FamilyKind::BDown, t, {}));
        return;
      }
      std::vector<int> boundary;
      for (int e = 0; e < q.edge_count(); ++e)
        if (e != q.e1_index() && e != q.e2_index() && crosses(q, t, e))
          boundary.push_back(e);
      std::vector<int> f;
      const auto emit_f = [&](auto&& self, std::size_t next) -> void {
        const bool odd = ((p.b_sum(t) + p.c_sum(f)) % 2) != 0;
        filtered.push_back(bmatching_row(
            p, odd ? FamilyKind::CapBUp : FamilyKind::CapBDown, t, f));
        if (opts.max_f >= 0 && static_cast<int>(f.size()) == opts.max_f) return;
        for (std::size_t i = next; i < boundary.size(); ++i) {
          f.push_back(boundary[i]);
          self(self, i + 1);
          f.pop_back();
        }
      };
      emit_f(emit_f, 0);
    };
    const auto rec = [&](auto&& self, int next) -> void {
      if (!t.empty()) emit();
      for (int v = next; v < q.node_count(); ++v) {
        t.push_back(v);
        self(self, v + 1);
        t.pop_back();
      }
    };
    rec(rec, 0);
  }
  report.parity_redundancy = true;
  for (const LinearInequality& row : filtered)
    for (const BPoint& pt : pts)
      if (violation(row, as_qpoint(pt)) > 0) report.parity_redundancy = false;
  std::mt19937 rng(opts.seed);
  for (int t = 0; t < opts.samples && report.parity_redundancy; ++t) {
    std::vector<int> weights(pts.size(), 0);
    int total = 0;
    const int picks = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < picks; ++i) {
      const int w = 1 + static_cast<int>(rng() % 4);
      weights[rng() % pts.size()] += w;
      total += w;
    }
    QPoint mix{std::vector<Rational>(q.edge_count(), Rational(0)), Rational(0)};
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (!weights[j]) continue;
      const Rational lam(weights[j], total);
      for (int e = 0; e < q.edge_count(); ++e) mix.x[e] += lam * pts[j].x[e];
      mix.y += lam * pts[j].y;
    }
    for (const LinearInequality& row : filtered)
      if (violation(row, mix) > 0) report.parity_redundancy = false;
  }

  // (e) The pairwise bound used by both validity computations.
  LinearInequality pair_bound;
  pair_bound.xcoef = {{q.e1_index(), Rational(1)}};
  add_coef(pair_bound.xcoef, q.e2_index(), Rational(1));
  pair_bound.ycoef = -2;
  pair_bound.rhs = 1;
  pair_bound.tag = "PAIRBOUND";
  report.pair_bound_valid = true;
  for (const BPoint& pt : pts)
    if (violation(pair_bound, as_qpoint(pt)) > 0)
      report.pair_bound_valid = false;

  return report;
}

}  // namespace qmatch
