#pragma once

#include <cstddef>
#include <vector>

#include "qmatch/graph.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

// A matching is a sorted list of pairwise node-disjoint edge indices of its
// host graph.  The empty matching is {}.
using Matching = std::vector<int>;

bool is_matching(const GeneralGraph& g, const Matching& m);
bool is_perfect_matching(const GeneralGraph& g, const Matching& m);

// 0/1 incidence vector over the edges of g.  Rejects foreign edge indices.
std::vector<int> chi(const GeneralGraph& g, const Matching& m);

// 1 iff both distinguished edges are in m (m indexed like p.graph()).
int y_of(const QProblem& p, const Matching& m);

// Default edge-count guard for matching enumeration: 24, overridable via
// the QMATCH_ENUM_GUARD environment variable.
std::size_t default_enum_guard();

// All matchings of g (including the empty one), each exactly once, in
// lexicographic order of their sorted edge-index lists.  Throws GuardError
// when g has more than `guard` edges.
std::vector<Matching> enumerate_matchings(const GeneralGraph& g);
std::vector<Matching> enumerate_matchings(const GeneralGraph& g, std::size_t guard);

}  // namespace qmatch
