#pragma once

#include <optional>

#include "qmatch/inequality.hpp"
#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

// A violated row found by a separation oracle, with its exact violation
// (lhs - rhs > 0).  The instance identifies the family member, the row is
// the concrete built inequality.
struct SeparationCertificate {
  FamilyInstance instance;
  LinearInequality row;
  Rational violation;
};

// Exact separation for the downward polytope: checks the base rows (x >= 0,
// degrees, 0 <= y <= 1, y <= x_{e_i}) first and reports the most violated
// one directly; otherwise builds the two-extra-edges gadget and maps its
// violated blossoms back to quadratic-down rows.  Returns nothing iff the
// point is in the polytope.  The reported violation is the maximum over the
// returned row's family; ties between gadget candidates resolve to the
// lexicographically smallest cut-tree candidate.
std::optional<SeparationCertificate> separate_down(const QProblem& p, const QPoint& pt);

// Exact separation for the upward polytope: checks x >= 0, degrees and
// 0 <= y <= 1 first.  If x_{e_i} < y/2 for some i, every quadratic-up row
// is strictly implied and the point is inside.  If x_{e1}+x_{e2}-y > 1 the
// two-extra-nodes gadget is not constructible and the most violated
// quadratic-up row is found by direct enumeration; otherwise the gadget's
// violated blossoms map back to quadratic-up rows.
std::optional<SeparationCertificate> separate_up(const QProblem& p, const QPoint& pt);

// Separation for the exact linearization polytope: base rows, then the
// downward stage, then the upward stage.  Returns the first violated
// certificate; nothing iff the point is in the polytope.
std::optional<SeparationCertificate> separate_exact(const QProblem& p, const QPoint& pt);

}  // namespace qmatch
