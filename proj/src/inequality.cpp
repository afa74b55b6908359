#include "qmatch/inequality.hpp"

#include <algorithm>
#include <stdexcept>

#include "qmatch/errors.hpp"

namespace qmatch {

Rational LinearInequality::lhs(const QPoint& pt) const {
  Rational acc = ycoef * pt.y;
  for (const auto& [e, c] : xcoef) {
    if (e < 0 || e >= static_cast<int>(pt.x.size()))
      throw std::invalid_argument("inequality references edge outside the point");
    acc += c * pt.x[e];
  }
  return acc;
}

Rational violation(const LinearInequality& ineq, const QPoint& pt) {
  return ineq.lhs(pt) - ineq.rhs;
}

FamilyInstance nonneg_instance(int edge) { return {FamilyKind::NonNeg, edge, {}, {}}; }
FamilyInstance degree_instance(int node) { return {FamilyKind::Degree, node, {}, {}}; }
FamilyInstance stdlin_instance(int i) { return {FamilyKind::StdLin, i, {}, {}}; }
FamilyInstance down_instance(std::vector<int> s) {
  return {FamilyKind::Down, -1, std::move(s), {}};
}
FamilyInstance up_instance(std::vector<int> s) {
  return {FamilyKind::Up, -1, std::move(s), {}};
}

namespace {

bool valid_node_set(const QProblem& p, const std::vector<int>& s) {
  if (!std::is_sorted(s.begin(), s.end())) return false;
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  return s.empty() || (s.front() >= 0 && s.back() < p.node_count());
}

// S intersected with {u1,u2,w1,w2}, reported as presence flags.
struct SpecialHits {
  bool u1 = false, u2 = false, w1 = false, w2 = false;
};

SpecialHits special_hits(const QProblem& p, const std::vector<int>& s) {
  SpecialHits h;
  for (int v : s) {
    if (v == p.u1()) h.u1 = true;
    if (v == p.u2()) h.u2 = true;
    if (v == p.w1()) h.w1 = true;
    if (v == p.w2()) h.w2 = true;
  }
  return h;
}

int side_count_u(const QProblem& p, const std::vector<int>& s) {
  int c = 0;
  for (int v : s) c += p.is_unode(v) ? 1 : 0;
  return c;
}

std::string render_node_set(const QProblem& p, const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += p.node_name(s[i]);
  }
  return out + "}";
}

std::string edge_name(const QProblem& p, int edge_index) {
  const BipEdge e = p.edge_of_index(edge_index);
  return "e(u" + std::to_string(e.u + 1) + ",w" + std::to_string(e.w + 1) + ")";
}

// x(E[S]) coefficients.
std::vector<std::pair<int, Rational>> induced_edge_coefs(const QProblem& p,
                                                         const std::vector<int>& s) {
  std::vector<char> in(p.node_count(), 0);
  for (int v : s) in[v] = 1;
  std::vector<std::pair<int, Rational>> coefs;
  for (int i = 0; i < p.m(); ++i)
    for (int j = 0; j < p.n(); ++j)
      if (in[p.unode(i)] && in[p.wnode(j)])
        coefs.emplace_back(p.edge_index({i, j}), Rational(1));
  std::sort(coefs.begin(), coefs.end());
  return coefs;
}

void add_coef(std::vector<std::pair<int, Rational>>& coefs, int e, const Rational& c) {
  for (auto& [idx, val] : coefs)
    if (idx == e) {
      val += c;
      return;
    }
  coefs.emplace_back(e, c);
  std::sort(coefs.begin(), coefs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

bool in_down_family(const QProblem& p, const std::vector<int>& s) {
  if (!valid_node_set(p, s)) return false;
  if (s.size() % 2 == 0) return false;
  const SpecialHits h = special_hits(p, s);
  return (h.u1 && h.u2 && !h.w1 && !h.w2) || (h.w1 && h.w2 && !h.u1 && !h.u2);
}

bool in_down_facet_family(const QProblem& p, const std::vector<int>& s) {
  if (!in_down_family(p, s)) return false;
  const SpecialHits h = special_hits(p, s);
  const int cu = side_count_u(p, s);
  const int cw = static_cast<int>(s.size()) - cu;
  return (h.u1 && h.u2) ? cu == cw + 1 : cw == cu + 1;
}

bool in_up_family(const QProblem& p, const std::vector<int>& s) {
  if (!valid_node_set(p, s)) return false;
  if (s.size() % 2 != 0) return false;
  const SpecialHits h = special_hits(p, s);
  return (h.u1 && h.w2 && !h.u2 && !h.w1) || (h.u2 && h.w1 && !h.u1 && !h.w2);
}

bool in_up_facet_family(const QProblem& p, const std::vector<int>& s) {
  if (!in_up_family(p, s)) return false;
  return 2 * side_count_u(p, s) == static_cast<int>(s.size());
}

LinearInequality build(const QProblem& p, const FamilyInstance& inst) {
  LinearInequality row;
  switch (inst.kind) {
    case FamilyKind::NonNeg: {
      if (inst.index < 0 || inst.index >= p.edge_count())
        throw std::invalid_argument("NonNeg: edge index out of range");
      row.xcoef = {{inst.index, Rational(-1)}};
      row.rhs = 0;
      row.tag = "NONNEG " + edge_name(p, inst.index);
      return row;
    }
    case FamilyKind::Degree:
    case FamilyKind::PerfectDegree: {
      const int v = inst.index;
      if (v < 0 || v >= p.node_count())
        throw std::invalid_argument("Degree: node out of range");
      if (p.is_unode(v))
        for (int j = 0; j < p.n(); ++j)
          row.xcoef.emplace_back(p.edge_index({v, j}), Rational(1));
      else
        for (int i = 0; i < p.m(); ++i)
          row.xcoef.emplace_back(p.edge_index({i, v - p.m()}), Rational(1));
      std::sort(row.xcoef.begin(), row.xcoef.end());
      row.rhs = 1;
      row.sense = inst.kind == FamilyKind::PerfectDegree ? Sense::Equal : Sense::LessEqual;
      row.tag = (inst.kind == FamilyKind::PerfectDegree ? "PERFECT-DEGREE " : "DEGREE ") +
                p.node_name(v);
      return row;
    }
    case FamilyKind::YLower:
      row.ycoef = -1;
      row.rhs = 0;
      row.tag = "YLOWER";
      return row;
    case FamilyKind::YUpper:
      row.ycoef = 1;
      row.rhs = 1;
      row.tag = "YUPPER";
      return row;
    case FamilyKind::StdLin: {
      if (inst.index != 1 && inst.index != 2)
        throw std::invalid_argument("StdLin: i must be 1 or 2");
      const int e = inst.index == 1 ? p.e1_index() : p.e2_index();
      row.xcoef = {{e, Rational(-1)}};
      row.ycoef = 1;
      row.rhs = 0;
      row.tag = "STDLIN i=" + std::to_string(inst.index);
      return row;
    }
    case FamilyKind::Down: {
      if (inst.node_set.size() % 2 == 0)
        throw std::invalid_argument("Down(S): |S| must be odd");
      if (!in_down_family(p, inst.node_set))
        throw std::invalid_argument(
            "Down(S): S must meet the special nodes in exactly {u1,u2} or {w1,w2}");
      row.xcoef = induced_edge_coefs(p, inst.node_set);
      row.ycoef = 1;
      row.rhs = Rational(static_cast<int>(inst.node_set.size()) - 1) / 2;
      row.tag = "DOWN S=" + render_node_set(p, inst.node_set);
      return row;
    }
    case FamilyKind::Up: {
      if (inst.node_set.size() % 2 != 0)
        throw std::invalid_argument("Up(S): |S| must be even");
      if (!in_up_family(p, inst.node_set))
        throw std::invalid_argument(
            "Up(S): S must meet the special nodes in exactly {u1,w2} or {u2,w1}");
      row.xcoef = induced_edge_coefs(p, inst.node_set);
      add_coef(row.xcoef, p.e1_index(), Rational(1));
      add_coef(row.xcoef, p.e2_index(), Rational(1));
      row.ycoef = -1;
      row.rhs = Rational(static_cast<int>(inst.node_set.size())) / 2;
      row.tag = "UP S=" + render_node_set(p, inst.node_set);
      return row;
    }
    case FamilyKind::Blossom: {
      if (!valid_node_set(p, inst.node_set) || inst.node_set.size() % 2 == 0)
        throw std::invalid_argument("Blossom(S): S must be a valid odd node set");
      row.xcoef = induced_edge_coefs(p, inst.node_set);
      row.rhs = Rational(static_cast<int>(inst.node_set.size()) - 1) / 2;
      row.tag = "BLOSSOM S=" + render_node_set(p, inst.node_set);
      return row;
    }
    default:
      throw std::invalid_argument("family requires a b-matching problem");
  }
}

std::vector<FamilyInstance> enumerate_family(const QProblem& p, Family family,
                                             int max_size) {
  if (p.node_count() > 24)
    throw GuardError("family enumeration guard exceeded: more than 24 nodes");
  if (max_size > p.node_count()) max_size = p.node_count();
  std::vector<FamilyInstance> out;
  std::vector<int> s;

  auto matches = [&](const std::vector<int>& set) {
    switch (family) {
      case Family::DownFacets: return in_down_facet_family(p, set);
      case Family::Down: return in_down_family(p, set);
      case Family::UpFacets: return in_up_facet_family(p, set);
      case Family::Up: return in_up_family(p, set);
      case Family::Blossom: return set.size() >= 3 && set.size() % 2 == 1;
    }
    return false;
  };
  auto kind_of = [&] {
    switch (family) {
      case Family::DownFacets:
      case Family::Down: return FamilyKind::Down;
      case Family::UpFacets:
      case Family::Up: return FamilyKind::Up;
      case Family::Blossom: return FamilyKind::Blossom;
    }
    return FamilyKind::Blossom;
  }();

  // Recursive subset enumeration emits sorted sets in lexicographic order.
  auto rec = [&](auto&& self, int next) -> void {
    if (!s.empty() && matches(s)) out.push_back({kind_of, -1, s, {}});
    if (static_cast<int>(s.size()) == max_size) return;
    for (int v = next; v < p.node_count(); ++v) {
      s.push_back(v);
      self(self, v + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<LinearInequality> variant_description(const QProblem& p, Variant variant) {
  const bool perfect = is_perfect_variant(variant);
  const bool with_down = variant != Variant::Up && variant != Variant::PerfectUp;
  const bool with_up = variant != Variant::Down && variant != Variant::PerfectDown;

  std::vector<LinearInequality> rows;
  for (int e = 0; e < p.edge_count(); ++e) rows.push_back(build(p, nonneg_instance(e)));
  for (int v = 0; v < p.node_count(); ++v)
    rows.push_back(build(p, {perfect ? FamilyKind::PerfectDegree : FamilyKind::Degree,
                             v, {}, {}}));
  rows.push_back(build(p, {FamilyKind::YLower, -1, {}, {}}));
  rows.push_back(build(p, {FamilyKind::YUpper, -1, {}, {}}));
  if (with_down) {
    rows.push_back(build(p, stdlin_instance(1)));
    rows.push_back(build(p, stdlin_instance(2)));
    for (const FamilyInstance& inst :
         enumerate_family(p, Family::DownFacets, p.node_count()))
      rows.push_back(build(p, inst));
  }
  if (with_up)
    for (const FamilyInstance& inst :
         enumerate_family(p, Family::UpFacets, p.node_count()))
      rows.push_back(build(p, inst));
  return rows;
}

std::vector<std::pair<LinearInequality, Rational>> derived_up_inequalities(
    const QProblem& p, const QPoint& pt, bool tight_or_violated_premise) {
  std::vector<std::pair<LinearInequality, Rational>> out;
  auto push = [&](LinearInequality row) {
    const Rational v = violation(row, pt);
    out.emplace_back(std::move(row), v);
  };

  LinearInequality a;
  a.xcoef = {{p.e1_index(), Rational(1)}};
  add_coef(a.xcoef, p.e2_index(), Rational(1));
  a.ycoef = -1;
  a.rhs = 1;
  a.tag = "DERIVED-A";
  push(a);

  // (b): even S with e_i in delta(S).
  std::vector<int> s;
  auto rec = [&](auto&& self, int next) -> void {
    if (!s.empty() && s.size() % 2 == 0) {
      const SpecialHits h = special_hits(p, s);
      for (int i : {1, 2}) {
        const bool crossing = i == 1 ? (h.u1 != h.w1) : (h.u2 != h.w2);
        if (!crossing) continue;
        LinearInequality row;
        row.xcoef = induced_edge_coefs(p, s);
        add_coef(row.xcoef, i == 1 ? p.e1_index() : p.e2_index(), Rational(1));
        row.ycoef = Rational(-1) / 2;
        row.rhs = Rational(static_cast<int>(s.size())) / 2;
        row.tag = "DERIVED-B i=" + std::to_string(i) + " S=" + render_node_set(p, s);
        push(row);
      }
    }
    for (int v = next; v < p.node_count(); ++v) {
      s.push_back(v);
      self(self, v + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);

  // (c): the full wider Up family.
  for (const FamilyInstance& inst : enumerate_family(p, Family::Up, p.node_count()))
    push(build(p, inst));

  if (tight_or_violated_premise)
    for (int i : {1, 2}) {
      LinearInequality row = build(p, stdlin_instance(i));
      row.tag = "DERIVED-D i=" + std::to_string(i);
      push(row);
    }
  return out;
}

}  // namespace qmatch
