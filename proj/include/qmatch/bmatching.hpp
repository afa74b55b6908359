#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qmatch/graph.hpp"
#include "qmatch/inequality.hpp"
#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

// A degree-bounded (and optionally capacitated) generalization of the
// quadratic matching instance.  Bounds b are per node, capacities c per edge;
// an absent capacity vector means the uncapacitated variant.
//
// Invariants enforced on construction:
//   - every b_v >= 1 and, if present, every c_e >= 1;
//   - uncapacitated: b_v = 1 for at least one endpoint of each distinguished
//     edge (keeps x_{e1}, x_{e2} binary);
//   - capacitated: c_{e1} = c_{e2} = 1 (replaces the endpoint rule).
struct BMatchingProblem {
  QProblem base;
  std::vector<int> b;                 // node -> degree bound
  std::optional<std::vector<int>> c;  // edge -> capacity (engaged = capacitated)

  BMatchingProblem(QProblem base_, std::vector<int> b_);
  BMatchingProblem(QProblem base_, std::vector<int> b_, std::vector<int> c_);

  bool capacitated() const { return c.has_value(); }
  // Effective upper bound of a single edge variable.
  int upper(int e) const;
  // b(S) and c(F) sums.
  Integer b_sum(const std::vector<int>& s) const;
  Integer c_sum(const std::vector<int>& f) const;
};

struct BPoint {
  std::vector<Rational> x;
  Rational y;
  friend bool operator==(const BPoint&, const BPoint&) = default;
  friend std::weak_ordering operator<=>(const BPoint&, const BPoint&) = default;
};

// All integer vectors x with 0 <= x_e (<= c_e), x(delta(v)) <= b_v, each
// paired with its forced y = [x_{e1} = x_{e2} = 1], in lexicographic order.
// The product of the per-edge ranges must stay within the guard.
std::vector<BPoint> enumerate_bmatchings(const BMatchingProblem& p);
std::vector<BPoint> enumerate_bmatchings(const BMatchingProblem& p,
                                         std::size_t guard);

// Node-splitting reduction of an uncapacitated instance to an ordinary
// quadratic matching instance: node v becomes b_v interchangeable copies
// (the four distinguished nodes stay single, which is why the lift insists
// on b = 1 there), every original edge becomes all copy pairs, and values
// spread uniformly: each copy pair of e = {u,w} carries x_e / (b_u * b_w),
// ybar = y.  copy_of/copy_index record the (node, copy) identity of every
// split node.
struct SplitLift {
  QProblem problem;
  QPoint point;
  std::vector<int> copy_of;     // split node -> original node
  std::vector<int> copy_index;  // split node -> copy number (0-based)
};
// Requires an uncapacitated instance with b = 1 on all four distinguished
// nodes and pt >= 0; violations throw std::invalid_argument.
SplitLift split_nodes_lift(const BMatchingProblem& p, const BPoint& pt);
// Sums each original edge over its copy pairs; y is preserved.  Exact
// inverse of the lift on points.
BPoint project_split(const BMatchingProblem& p, const SplitLift& lift,
                     const QPoint& q);

// Edge-subdivision reduction of a capacitated instance to an uncapacitated
// one: every edge e = {u,w} becomes the 3-path u-(u,e)-(w,e)-w whose interior
// nodes get bound c_e, and the lifted values along the path are
// (x_e, c_e - x_e, x_e); ybar = y.  The distinguished edges map to the first
// path edges {u_i, (u_i,e_i)}.
struct SubdivisionLift {
  GeneralGraph graph;   // subdivided host graph
  std::vector<int> b;   // node bounds: original b, then c_e per interior node
  int e1_edge = -1;     // image of the first distinguished edge
  int e2_edge = -1;     // image of the second distinguished edge
  BPoint point;         // lifted values over graph's edges
  std::vector<std::array<int, 3>> path_edges;  // per original edge
};
// Requires a capacitated instance and 0 <= x <= c; violations throw
// std::invalid_argument.
SubdivisionLift subdivide_edges_lift(const BMatchingProblem& p, const BPoint& pt);
// Reads the first path edge of every original edge; y is preserved.  Exact
// inverse of the lift on points.
BPoint project_subdivision(const BMatchingProblem& p, const SubdivisionLift& lift,
                           const BPoint& lifted);

// Quadratic odd/even cut instances over the index family
// {S : e1, e2 in delta(S)}, in lexicographic node-set order:
//   - uncapacitated: BDown for odd b(S), BUp for even b(S);
//   - capacitated: CapBDown/CapBUp over pairs (S, F) with
//     F a subset of delta(S) minus {e1,e2}, |F| <= max_f, split by the parity
//     of b(S) + c(F); F-sets are enumerated lexicographically per S.
// max_f < 0 means no bound on |F|; it is ignored for uncapacitated input.
std::vector<FamilyInstance> bmatching_families(const BMatchingProblem& p,
                                               int max_s, int max_f);

// Builds a family row without any parity filter (used to examine the rows
// the parity filter discards).  Shape checks still apply.
LinearInequality bmatching_row(const BMatchingProblem& p, FamilyKind kind,
                               const std::vector<int>& s,
                               const std::vector<int>& f);

// Builds the row of a b-matching family instance, validating shape and
// parity.  Also accepts the shared kinds (NonNeg, YLower, YUpper, StdLin).
LinearInequality build(const BMatchingProblem& p, const FamilyInstance& inst);

// The full inequality description of the integer hull: nonnegativity, y-box,
// y <= x_{e_i}, degree bounds, capacities (if any) and the parity-filtered
// quadratic cut rows (max_f as in bmatching_families).
//
// Caveat for capacitated instances: the row list describes the hull when, in
// addition to c_{e1} = c_{e2} = 1, each distinguished edge keeps an endpoint
// with b = 1 (then some S in the cut family has b(S) = 2 and its row implies
// x_{e1} + x_{e2} - y <= 1).  Without that endpoint rule the pair cut can be
// lost and verify_bmatching_description reports the resulting vertex gap
// honestly (see the all-two-bounds K22 test for a concrete witness).
std::vector<LinearInequality> bmatching_description(const BMatchingProblem& p,
                                                    int max_f);

// The four companion rows for a set S crossed by exactly one distinguished
// edge e_j (the other, e_i, not crossing):
//   SIDE1: x(E[S]) - x_{e_i} + y             <= floor(b(S)/2)
//   SIDE2: x(E[S]) + x_{e_j} - y             <= floor((b(S)+1)/2)
//   SIDE3: x(E[S]) + y                       <= floor((b(S)+1)/2)
//   SIDE4: x(E[S]) + x_{e1} + x_{e2} - y     <= floor((b(S)+2)/2)
// All are valid for the integer hull and implied by the full description;
// they contribute no facet beyond it (degenerate sets can reproduce a
// described row verbatim, e.g. SIDE1 for a singleton at a distinguished
// endpoint collapses to y <= x_{e_i}).  Throws std::invalid_argument when S
// is not crossed by exactly one of e1, e2.
std::vector<LinearInequality> half_crossing_rows(const BMatchingProblem& p,
                                                 const std::vector<int>& s);

struct BVerifyOptions {
  int max_f = -1;        // F-size cap for the description; -1 = unbounded
  int samples = 200;     // random fractional points for the redundancy check
  unsigned seed = 20240814;
  std::size_t enum_guard = 1'000'000;
};

struct BVerifyReport {
  std::size_t integer_points = 0;
  std::size_t vertex_count = 0;
  bool valid = false;       // every description row holds on every integer point
  std::vector<std::string> validity_failures;  // row tags with witness points
  bool complete = false;    // description vertices == extreme integer points
  std::vector<BPoint> missing;  // extreme integer points absent from the vertex list
  std::vector<BPoint> extra;    // description vertices that are not integer points
  bool side_rows_valid = false;      // half-crossing rows hold on integer points
  bool side_rows_redundant = false;  // ... and are implied by the description
  bool side_rows_no_new_facets = false;  // ... and support no facet that the
                                         // description does not already define
  bool parity_redundancy = false;    // parity-filtered rows hold on integer
                                     // points and on random fractional points
                                     // of the described polytope
  bool pair_bound_valid = false;     // x_{e1} + x_{e2} - 2y <= 1 on integer points

  bool ok() const {
    return valid && complete && side_rows_valid && side_rows_redundant &&
           side_rows_no_new_facets && parity_redundancy && pair_bound_valid;
  }
};

// Desk-scale verification of the b-matching description: validity of every
// row on the enumerated integer points, completeness via exact vertex
// enumeration against the extreme integer points, the half-crossing rows'
// valid-and-redundant status, and redundancy of the parity-filtered rows.
BVerifyReport verify_bmatching_description(const BMatchingProblem& p);
BVerifyReport verify_bmatching_description(const BMatchingProblem& p,
                                           const BVerifyOptions& opts);

}  // namespace qmatch
