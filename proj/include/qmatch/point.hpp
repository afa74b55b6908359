#pragma once

#include <vector>

#include "qmatch/matching.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

// A point (x, y): one rational per edge of the host graph plus the
// linearization variable y.
struct QPoint {
  std::vector<Rational> x;
  Rational y = 0;

  friend bool operator==(const QPoint&, const QPoint&) = default;
};

// Which polytope a vertex set / description refers to.
enum class Variant {
  Exact,        // y = 1 exactly when e1 and e2 are both picked
  Down,         // y = 1 forces e1, e2 in the matching
  Up,           // y = 0 forces e1 or e2 out of the matching
  PerfectExact,
  PerfectDown,
  PerfectUp,
};

bool is_perfect_variant(Variant v);

// (chi(M), y) for a matching of p with an explicit y value.
QPoint vertex_point(const QProblem& p, const Matching& m, int y);

// The integer vertex list of the chosen polytope, deduplicated, in
// enumeration order.  Perfect variants require m == n.
std::vector<QPoint> vertex_set(const QProblem& p, Variant variant);
std::vector<QPoint> vertex_set(const QProblem& p, Variant variant, std::size_t guard);

}  // namespace qmatch
