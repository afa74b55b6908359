#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmatch/inequality.hpp"
#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"

namespace qmatch {

// Desk-scale certification of the polytope descriptions: every check below
// compares two machine-generated sides (integer vertex sets on one side, the
// H-description on the other) in exact arithmetic.

// Every vertex of the chosen variant checked against every description row.
struct ValidityReport {
  Variant variant = Variant::Exact;
  int vertex_count = 0;
  int row_count = 0;
  std::vector<std::string> violations;  // human-readable witnesses; empty = pass

  bool ok() const { return violations.empty(); }
};

ValidityReport check_validity(const QProblem& p, Variant variant);
// Same check against an explicit row list (negative controls).
ValidityReport check_validity(const QProblem& p, Variant variant,
                              const std::vector<LinearInequality>& rows);

// Facet test for one family row against one polytope: the row must be valid
// at every vertex and its tight vertices must span affine rank |E|
// (dimension - 1; all three polytopes are full-dimensional in R^{|E|+1}).
struct FacetCheck {
  bool facet = false;
  bool valid = true;    // row holds at every vertex of the variant
  int tight_count = 0;  // vertices satisfying the row with equality
  int rank = -1;        // affine rank of the tight vertex set
  int needed = 0;       // |E|
  std::string reason;   // empty when facet

  bool ok() const { return facet; }
};

FacetCheck check_facet(const QProblem& p, const FamilyInstance& inst,
                       Variant variant);

// The facet-verdict table of the desk propositions, as data: true/false =
// the row is valid and is/is not facet-defining for the chosen polytope;
// nullopt = the row is not even valid there (wrong-polytope family).  Only
// the plain description families and the three full-dimensional variants
// are covered; anything else throws std::invalid_argument.
std::optional<bool> expected_facet(const QProblem& p,
                                   const FamilyInstance& inst,
                                   Variant variant);

// Vertices of the H-description (double description) against the integer
// vertex set, as exact point sets.  Perfect variants restrict by degree
// equalities.  Guarded: |E| + 1 must stay within the enumeration guard.
struct CompletenessReport {
  Variant variant = Variant::Exact;
  int expected_count = 0;       // |vertex_set(p, variant)|
  int description_count = 0;    // vertices of the H-description
  std::vector<QPoint> missing;  // expected vertices absent from the H-side
  std::vector<QPoint> extra;    // H-side vertices that are not expected

  bool complete() const { return missing.empty() && extra.empty(); }
  bool ok() const { return complete(); }
};

CompletenessReport check_completeness(const QProblem& p, Variant variant,
                                      int dim_guard = 12);
CompletenessReport check_completeness(const QProblem& p, Variant variant,
                                      const std::vector<LinearInequality>& rows,
                                      int dim_guard = 12);

// The monotonization identity: stacking the down- and up-description of the
// same instance describes the exact polytope.  The plane control shows why
// this is a one-variable phenomenon: monotonizing both coordinates of the
// segment conv{(0,0),(1,1)} yields the full unit square (four vertices),
// while monotonizing the second coordinate alone recovers the segment.
struct MonotonizationReport {
  int exact_count = 0;           // vertices of the exact polytope
  int intersection_count = 0;    // vertices of the stacked down+up system
  bool identity = false;         // the two vertex sets coincide
  int square_vertex_count = 0;   // both-coordinate control; expected 4
  int segment_vertex_count = 0;  // one-coordinate control; expected 2
  bool plane_control = false;    // both plane checks behaved as predicted

  bool ok() const { return identity && plane_control; }
};

MonotonizationReport check_monotonization_identity(const QProblem& p,
                                                   int dim_guard = 12);

// Compact rendering used by reports and the command line.
std::string point_string(const QPoint& pt);

}  // namespace qmatch
