#pragma once

#include <optional>
#include <vector>

#include "qmatch/graph.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

struct BlossomViolation {
  std::vector<int> node_set;  // S, sorted, |S| odd
  Rational violation;         // xbar(E[S]) - (|S|-1)/2 > 0
};

// Every violated odd set arising from a T-odd fundamental cut of the
// slack-apex reduction, deduplicated, most violated first and ties by
// lexicographically smaller node set.  Requires xbar >= 0 and
// xbar(delta(v)) <= 1 for every node.  Whenever any odd set is violated the
// list is nonempty and its front attains the maximum violation over all odd
// sets (the minimum T-odd cut is realized by a fundamental cut).
std::vector<BlossomViolation> blossom_candidates(const GeneralGraph& g,
                                                 const std::vector<Rational>& xbar);

// Finds an odd set S with xbar(E[S]) > (|S|-1)/2 iff one exists: the front
// of blossom_candidates.  The reported violation is the maximum over all
// odd sets; when several sets attain it, the lexicographically smallest
// among the cut-tree candidates is returned (deterministic, but not
// necessarily the global lexicographic minimum).
std::optional<BlossomViolation> separate_blossom(const GeneralGraph& g,
                                                 const std::vector<Rational>& xbar);

}  // namespace qmatch
