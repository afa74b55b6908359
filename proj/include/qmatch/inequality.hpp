#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

enum class Sense { LessEqual, Equal };

// A row  sum_e xcoef_e * x_e + ycoef * y  (<=|=)  rhs.
struct LinearInequality {
  std::vector<std::pair<int, Rational>> xcoef;  // sparse, sorted by edge index
  Rational ycoef = 0;
  Rational rhs = 0;
  Sense sense = Sense::LessEqual;
  std::string tag;

  Rational lhs(const QPoint& pt) const;
};

// violation = lhs - rhs; positive means the point violates the row.
Rational violation(const LinearInequality& ineq, const QPoint& pt);

// The inequality families over a QProblem (and its b-matching extension).
enum class FamilyKind {
  NonNeg,         // x_e >= 0
  Degree,         // x(delta(v)) <= 1
  PerfectDegree,  // x(delta(v)) = 1
  YLower,         // y >= 0
  YUpper,         // y <= 1
  StdLin,         // y <= x_{e_i}, i in {1,2}
  Down,           // x(E[S]) + y <= (|S|-1)/2
  Up,             // x(E[S]) + x_{e1} + x_{e2} - y <= |S|/2
  Blossom,        // x(E[S]) <= (|S|-1)/2 (plain matching blossom)
  BDegree,        // x(delta(v)) <= b_v
  Capacity,       // x_e <= c_e
  BDown,          // x(E[S]) + y <= floor(b(S)/2)
  BUp,            // x(E[S]) + x_{e1} + x_{e2} - y <= floor((b(S)+1)/2)
  CapBDown,       // x(E[S]) + x(F) + y <= floor((b(S)+c(F))/2)
  CapBUp,         // x(E[S]) + x(F) + x_{e1} + x_{e2} - y <= floor((b(S)+c(F)+1)/2)
};

struct FamilyInstance {
  FamilyKind kind;
  int index = -1;             // edge index (NonNeg/Capacity), node id (degrees), i (StdLin)
  std::vector<int> node_set;  // S, sorted node ids
  std::vector<int> edge_set;  // F, sorted edge indices (capacitated families)

  friend bool operator==(const FamilyInstance&, const FamilyInstance&) = default;
  friend std::strong_ordering operator<=>(const FamilyInstance&, const FamilyInstance&) = default;
};

FamilyInstance nonneg_instance(int edge);
FamilyInstance degree_instance(int node);
FamilyInstance stdlin_instance(int i);
FamilyInstance down_instance(std::vector<int> s);
FamilyInstance up_instance(std::vector<int> s);

// Index-set membership tests.  "Facet" families carry the balanced-side
// conditions; the wider families only pin the special-node pattern and the
// parity of |S|.
bool in_down_facet_family(const QProblem& p, const std::vector<int>& s);  // D
bool in_down_family(const QProblem& p, const std::vector<int>& s);        // D-tilde
bool in_up_facet_family(const QProblem& p, const std::vector<int>& s);    // U
bool in_up_family(const QProblem& p, const std::vector<int>& s);          // U-tilde

enum class Family { DownFacets, Down, UpFacets, Up, Blossom };

// Builds the concrete row for an instance; validates membership rules and
// throws std::invalid_argument naming the violated rule.
LinearInequality build(const QProblem& p, const FamilyInstance& inst);

// All instances of the family with |S| <= max_size, in lexicographic order
// of the sorted node sets.
std::vector<FamilyInstance> enumerate_family(const QProblem& p, Family family,
                                             int max_size);

// Full H-description of the chosen polytope variant (facet families only;
// perfect variants use degree equalities).
std::vector<LinearInequality> variant_description(const QProblem& p, Variant variant);

// The consequence inequalities that follow from the base constraints plus
// the minimal Up rows: (a) x_{e1}+x_{e2}-y <= 1; (b) x(E[S])+x_{e_i}-y/2 <=
// |S|/2 for even S with e_i crossing; (c) Up(S) for all S in U-tilde.  The
// two rows y <= x_{e_i} are appended only under the tight-or-violated
// premise flag.
std::vector<std::pair<LinearInequality, Rational>> derived_up_inequalities(
    const QProblem& p, const QPoint& pt, bool tight_or_violated_premise = false);

}  // namespace qmatch
