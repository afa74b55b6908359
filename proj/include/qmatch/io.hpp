#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmatch/bmatching.hpp"
#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"

namespace qmatch {

// A parsed problem file.  Plain instances carry only the base graph and the
// distinguished edges; a 'b' or 'cap' line promotes the file to a
// degree-bounded (and possibly capacitated) instance.
struct ParsedProblem {
  QProblem base;
  std::optional<std::vector<int>> b;    // node -> bound, set by a 'b' line
  std::optional<std::vector<int>> cap;  // edge -> capacity, by a 'cap' line

  bool plain() const { return !b.has_value() && !cap.has_value(); }
  // Degree-bounded view: b defaults to all ones, capacitated iff 'cap'.
  BMatchingProblem bmatching() const;
};

// Line-oriented problem format:
//   bipartite m n
//   special u<i> w<j> u<k> w<l>
//   b u1=2 w2=3 ...           (optional; unlisted nodes keep bound 1)
//   cap e(u1,w2)=2 ...        (optional; unlisted edges keep capacity 1)
// Blank lines and '#' comments are ignored.  Errors raise InputError with a
// "<name>:<line>:" prefix.
ParsedProblem parse_problem(std::istream& in, const std::string& name);
ParsedProblem parse_problem_file(const std::string& path);

// Point format: one "e(u<i>,w<j>)=p/q" per line plus "y=p/q"; omitted
// entries are zero, duplicates are rejected.
QPoint parse_point(std::istream& in, const QProblem& p,
                   const std::string& name);
QPoint parse_point_file(const std::string& path, const QProblem& p);

// Canonical renderings, read back to identical values by the parsers.  All
// rationals print in lowest terms as p/q; zero point entries are omitted.
std::string format_problem(const ParsedProblem& p);
std::string format_point(const QProblem& p, const QPoint& pt);

// Token helpers shared with the command line ("p/q" values are handled by
// parse_rational from rational.hpp).
int parse_node(const QProblem& p, const std::string& token);  // "u3" / "w1"
int parse_edge(const QProblem& p, const std::string& token);  // "e(u1,w2)"
std::string edge_name(const QProblem& p, int e);

}  // namespace qmatch
