#pragma once

#include <cstddef>
#include <vector>

#include "qmatch/gadgets.hpp"
#include "qmatch/inequality.hpp"
#include "qmatch/matching.hpp"
#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

// An exact convex combination of matchings of a host graph.  k is the least
// common denominator of the multipliers, so the combination can also be read
// as the multiset equation  k * sum = sum of k characteristic vectors.
struct MatchingCombination {
  std::vector<Matching> matchings;  // distinct terms
  std::vector<Rational> lambda;     // positive, sums to 1
  Integer k = 1;

  // k terms, each matching repeated k*lambda_j times, in term order.
  // Throws GuardError when k exceeds the expansion guard.
  std::vector<Matching> multiset() const;

  // Collapses a multiset back to distinct terms with lambda = count/size.
  static MatchingCombination collapse(const std::vector<Matching>& multiset);

  // sum_j lambda_j * chi(M_j) over the edges of g.
  std::vector<Rational> weighted_chi(const GeneralGraph& g) const;
};

// Writes a point of g's matching polytope as a convex combination of at most
// |E|+1 matchings (exact feasibility LP over the enumerated matchings; the
// enumeration guard applies).  Membership is checked first: nonnegativity and
// degrees directly, odd sets via blossom separation; a failure throws
// std::invalid_argument citing the violated inequality.
MatchingCombination decompose_matching(const GeneralGraph& g,
                                       const std::vector<Rational>& xbar);
MatchingCombination decompose_matching(const GeneralGraph& g,
                                       const std::vector<Rational>& xbar,
                                       std::size_t guard);

struct SurgeryResult {
  MatchingCombination combination;
  int exchanges = 0;
};

// Repairs a combination on the down-gadget graph so that every term contains
// either both of e_u, e_w or neither: repeatedly exchanges the component of
// the symmetric difference containing e_u between a term with only e_u and a
// term with only e_w.  The weighted sum is preserved exactly, and the number
// of one-sided terms strictly decreases per exchange.
SurgeryResult surgery_down(const DownGadget& gad, const MatchingCombination& comb);

// Repairs a combination on the up-gadget graph so that no term uses the
// mixed pairs {u1,a},{u2,b} or {w1,b},{w2,a}: exchanges the component of the
// symmetric difference containing {u2,b}.  Requires every term to cover both
// a and b and to use at most one of e1, e2, {a,b}; a violation throws
// HypothesisError (it signals the tightness hypothesis was absent).
SurgeryResult surgery_up(const UpGadget& gad, const MatchingCombination& comb);

// One vertex term of a decomposition over the original problem.
struct LemmaTerm {
  Matching matching;  // edge indices of K_{m,n}
  int y = 0;

  friend bool operator==(const LemmaTerm&, const LemmaTerm&) = default;
};

struct LemmaDecomposition {
  std::vector<LemmaTerm> terms;  // distinct, every one a vertex of the
                                 // exact-linearization polytope
  std::vector<Rational> lambda;  // positive, sums to 1
  Integer k = 1;                 // least common denominator
  FamilyInstance certificate;    // the tight row that licensed the pipeline
  std::vector<Matching> gadget_before;  // multiset on the gadget graph
  std::vector<Matching> gadget_after;   // multiset after the surgery
  int exchanges = 0;
};

// Constructive form of the downward combination lemma.  The point must
// satisfy the full downward description and be tight in y <= x_{e1},
// y <= x_{e2}, or a facet quadratic-down row; otherwise HypothesisError
// ("no tight certificate supplied").  The result reproduces the input
// exactly and every term is a vertex of the exact linearization polytope.
LemmaDecomposition lemma_down_decompose(const QProblem& p, const QPoint& pt);

// Constructive form of the upward combination lemma.  The point must satisfy
// the full upward description and be tight in a facet quadratic-up row.
LemmaDecomposition lemma_up_decompose(const QProblem& p, const QPoint& pt);

}  // namespace qmatch
