#pragma once

#include <vector>

#include "qmatch/inequality.hpp"
#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

// A dense inequality  a . z <= rhs  over R^dim.
struct DenseRow {
  std::vector<Rational> a;
  Rational rhs;
};

// Intersection of dense <= rows; variables are free.
struct HPolytope {
  int dim = 0;
  std::vector<DenseRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Result of  max c.z  s.t.  A z <= b.  Every certificate is re-checked in
// exact arithmetic before it is returned:
//   Optimal:    solution feasible, dual >= 0, dual^T A = c, dual^T b = objective
//   Infeasible: farkas >= 0, farkas^T A = 0, farkas^T b < 0
//   Unbounded:  solution feasible, A ray <= 0, c . ray > 0
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> solution;
  std::vector<Rational> dual;
  std::vector<Rational> farkas;
  std::vector<Rational> ray;
};

LpResult lp_solve(const HPolytope& poly, const std::vector<Rational>& c);

// Decides whether target lies in conv(points).  If yes, lambda holds convex
// multipliers with sum(lambda_i * points_i) = target.  If not, (hyperplane,
// offset) separate:  hyperplane . p_i <= offset for every point while
// hyperplane . target > offset.
struct CombinationResult {
  bool feasible = false;
  std::vector<Rational> lambda;
  std::vector<Rational> hyperplane;
  Rational offset;
};

CombinationResult feasibility_combination(
    const std::vector<std::vector<Rational>>& points,
    const std::vector<Rational>& target);

// All vertices of the polytope, sorted lexicographically.  Infeasible input
// yields an empty list; an unbounded polyhedron throws std::runtime_error;
// dimensions above the guard throw GuardError.  Exact double description on
// the homogenization.
std::vector<std::vector<Rational>> vertex_enumeration(const HPolytope& poly,
                                                      int dim_guard = 12);

// Dimension of the affine hull: -1 for no points, 0 for a single point.
int affine_rank(const std::vector<std::vector<Rational>>& points);

// Bridges between the library types and dense LP data.  Coordinate order is
// x_0, ..., x_{|E|-1}, y.
std::vector<Rational> dense_point(const QPoint& pt);
QPoint qpoint_of(const std::vector<Rational>& z);
// Equality rows expand to a pair of opposite <= rows.
HPolytope hpolytope_of(const QProblem& p,
                       const std::vector<LinearInequality>& rows);

}  // namespace qmatch
