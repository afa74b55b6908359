#include "qmatch/verify.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmatch/errors.hpp"
#include "qmatch/exactlp.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

namespace {

std::vector<std::vector<Rational>> dense_sorted(const std::vector<QPoint>& pts) {
  std::vector<std::vector<Rational>> out;
  out.reserve(pts.size());
  for (const QPoint& pt : pts) out.push_back(dense_point(pt));
  std::sort(out.begin(), out.end());
  return out;
}

bool violated(const LinearInequality& row, const Rational& gap) {
  return row.sense == Sense::Equal ? gap != 0 : gap > 0;
}

}  // namespace

std::string point_string(const QPoint& pt) {
  std::string out = "x=(";
  for (std::size_t i = 0; i < pt.x.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_fraction_string(pt.x[i]);
  }
  out += "), y=" + to_fraction_string(pt.y);
  return out;
}

ValidityReport check_validity(const QProblem& p, Variant variant,
                              const std::vector<LinearInequality>& rows) {
  ValidityReport rep;
  rep.variant = variant;
  const std::vector<QPoint> verts = vertex_set(p, variant);
  rep.vertex_count = static_cast<int>(verts.size());
  rep.row_count = static_cast<int>(rows.size());
  for (const QPoint& v : verts) {
    for (const LinearInequality& row : rows) {
      const Rational gap = violation(row, v);
      if (violated(row, gap))
        rep.violations.push_back(row.tag + " fails at " + point_string(v) +
                                 " (lhs - rhs = " + to_fraction_string(gap) +
                                 ")");
    }
  }
  return rep;
}

ValidityReport check_validity(const QProblem& p, Variant variant) {
  return check_validity(p, variant, variant_description(p, variant));
}

FacetCheck check_facet(const QProblem& p, const FamilyInstance& inst,
                       Variant variant) {
  FacetCheck out;
  out.needed = p.edge_count();
  const LinearInequality row = build(p, inst);
  std::vector<std::vector<Rational>> tight;
  for (const QPoint& v : vertex_set(p, variant)) {
    const Rational gap = violation(row, v);
    if (violated(row, gap)) {
      out.valid = false;
      out.reason = row.tag + " is violated at " + point_string(v) + " by " +
                   to_fraction_string(gap);
      return out;
    }
    if (gap == 0) tight.push_back(dense_point(v));
  }
  out.tight_count = static_cast<int>(tight.size());
  out.rank = affine_rank(tight);
  out.facet = out.rank == out.needed;
  if (!out.facet)
    out.reason = row.tag + " has tight vertices of affine rank " +
                 std::to_string(out.rank) + ", facets need " +
                 std::to_string(out.needed);
  return out;
}

std::optional<bool> expected_facet(const QProblem& p,
                                   const FamilyInstance& inst,
                                   Variant variant) {
  if (is_perfect_variant(variant))
    throw std::invalid_argument(
        "the facet table covers the full-dimensional polytopes only");
  switch (inst.kind) {
    case FamilyKind::NonNeg:
      if (variant == Variant::Up) return true;
      return inst.index != p.e1_index() && inst.index != p.e2_index();
    case FamilyKind::Degree: {
      const int k = p.is_unode(inst.index) ? p.n() : p.m();
      if (variant == Variant::Up) return true;
      if (variant == Variant::Down) return k >= 3 || p.is_special(inst.index);
      return k >= 3;
    }
    case FamilyKind::YLower:
      return true;
    case FamilyKind::YUpper:
      return variant == Variant::Up;
    case FamilyKind::StdLin:
      if (variant == Variant::Up) return std::nullopt;
      return true;
    case FamilyKind::Down:
      if (variant == Variant::Up) return std::nullopt;
      return in_down_facet_family(p, inst.node_set);
    case FamilyKind::Up:
      if (variant == Variant::Down) return std::nullopt;
      return in_up_facet_family(p, inst.node_set);
    default:
      throw std::invalid_argument("no facet table for this family");
  }
}

CompletenessReport check_completeness(const QProblem& p, Variant variant,
                                      const std::vector<LinearInequality>& rows,
                                      int dim_guard) {
  CompletenessReport rep;
  rep.variant = variant;
  const std::vector<std::vector<Rational>> expected =
      dense_sorted(vertex_set(p, variant));
  const std::vector<std::vector<Rational>> described =
      vertex_enumeration(hpolytope_of(p, rows), dim_guard);
  rep.expected_count = static_cast<int>(expected.size());
  rep.description_count = static_cast<int>(described.size());
  std::vector<std::vector<Rational>> diff;
  std::set_difference(expected.begin(), expected.end(), described.begin(),
                      described.end(), std::back_inserter(diff));
  for (const std::vector<Rational>& z : diff) rep.missing.push_back(qpoint_of(z));
  diff.clear();
  std::set_difference(described.begin(), described.end(), expected.begin(),
                      expected.end(), std::back_inserter(diff));
  for (const std::vector<Rational>& z : diff) rep.extra.push_back(qpoint_of(z));
  return rep;
}

CompletenessReport check_completeness(const QProblem& p, Variant variant,
                                      int dim_guard) {
  return check_completeness(p, variant, variant_description(p, variant),
                            dim_guard);
}

MonotonizationReport check_monotonization_identity(const QProblem& p,
                                                   int dim_guard) {
  MonotonizationReport rep;

  std::vector<LinearInequality> stacked = variant_description(p, Variant::Down);
  const std::vector<LinearInequality> up = variant_description(p, Variant::Up);
  stacked.insert(stacked.end(), up.begin(), up.end());
  const std::vector<std::vector<Rational>> inter =
      vertex_enumeration(hpolytope_of(p, stacked), dim_guard);
  const std::vector<std::vector<Rational>> exact =
      dense_sorted(vertex_set(p, Variant::Exact));
  rep.exact_count = static_cast<int>(exact.size());
  rep.intersection_count = static_cast<int>(inter.size());
  rep.identity = inter == exact;

  // Plane control on P = conv{(0,0),(1,1)}.  Monotonizing both coordinates
  // gives {z <= (1,1)} and {z >= (0,0)}; stacked they cut out the unit
  // square, strictly larger than P.
  HPolytope square;
  square.dim = 2;
  square.rows.push_back({{1, 0}, 1});
  square.rows.push_back({{0, 1}, 1});
  square.rows.push_back({{-1, 0}, 0});
  square.rows.push_back({{0, -1}, 0});
  const std::vector<std::vector<Rational>> sq = vertex_enumeration(square);
  rep.square_vertex_count = static_cast<int>(sq.size());
  const std::vector<std::vector<Rational>> unit_square = {
      {0, 0}, {0, 1}, {1, 0}, {1, 1}};

  // Monotonizing the second coordinate alone gives {0 <= z1 <= 1, z2 <= z1}
  // and {0 <= z1 <= 1, z2 >= z1}; stacked they recover P itself.
  HPolytope segment;
  segment.dim = 2;
  segment.rows.push_back({{1, 0}, 1});
  segment.rows.push_back({{-1, 0}, 0});
  segment.rows.push_back({{-1, 1}, 0});
  segment.rows.push_back({{1, -1}, 0});
  const std::vector<std::vector<Rational>> seg = vertex_enumeration(segment);
  rep.segment_vertex_count = static_cast<int>(seg.size());
  const std::vector<std::vector<Rational>> p_itself = {{0, 0}, {1, 1}};

  rep.plane_control = sq == unit_square && seg == p_itself;
  return rep;
}

}  // namespace qmatch
