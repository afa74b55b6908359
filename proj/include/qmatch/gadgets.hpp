#pragma once

#include <vector>

#include "qmatch/graph.hpp"
#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

// K_{m,n} plus the two intra-side edges e_u = {u1,u2} and e_w = {w1,w2};
// real edges keep their problem indices, the new edges come last.
//   xbar_e    = x_e            off {e1, e2, e_u, e_w}
//   xbar_{e_i} = x_{e_i} - y
//   xbar_{e_u} = xbar_{e_w} = y
struct DownGadget {
  GeneralGraph graph;
  int e1_edge = -1;  // problem indices of the distinguished edges
  int e2_edge = -1;
  int eu_edge = -1;
  int ew_edge = -1;
  std::vector<Rational> xbar;
};

// K_{m,n} plus nodes a, b and the five edges {a,b}, {u1,a}, {u2,b},
// {w1,b}, {w2,a}; real edges keep their problem indices.  Two vectors:
//   xtilde: copies x on the real edges, xtilde_{ab} = 1, rest 0
//           (the trivial lift, always in the matching polytope)
//   xbar:   xbar_{e_i} = y/2, xbar_{ab} = 1 - x_{e1} - x_{e2} + y,
//           xbar_{u1,a} = xbar_{w1,b} = x_{e1} - y/2,
//           xbar_{u2,b} = xbar_{w2,a} = x_{e2} - y/2, rest copies x.
// In xbar the degree of both a and b is exactly 1.
struct UpGadget {
  GeneralGraph graph;
  int e1_edge = -1;
  int e2_edge = -1;
  int a = -1;
  int b = -1;
  int ab_edge = -1;
  int u1a_edge = -1;
  int u2b_edge = -1;
  int w1b_edge = -1;
  int w2a_edge = -1;
  std::vector<Rational> xtilde;
  std::vector<Rational> xbar;
};

// Throws std::invalid_argument "point violates base constraints: <row>"
// when an entry would come out negative (requires x >= 0, y >= 0 and
// y <= x_{e_i}).
DownGadget build_down_gadget(const QProblem& p, const QPoint& pt);

// Throws std::invalid_argument naming the violated consequence when an
// entry would come out negative: x >= 0 / y >= 0 on copied entries,
// Up({u1,w2}) for xbar_{ab}, y <= x_{e_i} for the special spokes.
UpGadget build_up_gadget(const QProblem& p, const QPoint& pt);

}  // namespace qmatch
