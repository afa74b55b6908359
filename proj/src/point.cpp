#include "qmatch/point.hpp"

#include <stdexcept>

namespace qmatch {

bool is_perfect_variant(Variant v) {
  return v == Variant::PerfectExact || v == Variant::PerfectDown ||
         v == Variant::PerfectUp;
}

QPoint vertex_point(const QProblem& p, const Matching& m, int y) {
  const GeneralGraph g = p.graph();
  if (!is_matching(g, m)) throw std::invalid_argument("not a matching of the graph");
  QPoint pt;
  pt.x.assign(g.edge_count(), Rational(0));
  for (int idx : m) pt.x[idx] = 1;
  pt.y = y;
  return pt;
}

std::vector<QPoint> vertex_set(const QProblem& p, Variant variant) {
  return vertex_set(p, variant, default_enum_guard());
}

std::vector<QPoint> vertex_set(const QProblem& p, Variant variant, std::size_t guard) {
  if (is_perfect_variant(variant) && p.m() != p.n())
    throw std::invalid_argument("perfect variants require m == n");
  const GeneralGraph g = p.graph();
  std::vector<QPoint> out;
  for (const Matching& m : enumerate_matchings(g, guard)) {
    if (is_perfect_variant(variant) && !is_perfect_matching(g, m)) continue;
    const int ym = y_of(p, m);
    switch (variant) {
      case Variant::Exact:
      case Variant::PerfectExact:
        out.push_back(vertex_point(p, m, ym));
        break;
      case Variant::Down:
      case Variant::PerfectDown:
        out.push_back(vertex_point(p, m, 0));
        if (ym == 1) out.push_back(vertex_point(p, m, 1));
        break;
      case Variant::Up:
      case Variant::PerfectUp:
        if (ym == 0) out.push_back(vertex_point(p, m, 0));
        out.push_back(vertex_point(p, m, 1));
        break;
    }
  }
  return out;
}

}  // namespace qmatch
