#include "qmatch/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmatch/errors.hpp"

namespace qmatch {

namespace {

[[noreturn]] void fail(const std::string& name, int lineno,
                       const std::string& msg) {
  throw InputError(name + ":" + std::to_string(lineno) + ": " + msg);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line.substr(0, line.find('#')));
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

bool digits_only(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

int parse_int(const std::string& token) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw InputError("expected an integer, got '" + token + "'");
  return value;
}

// Splits "key=value"; rejects missing or repeated '='.
std::pair<std::string, std::string> split_assignment(const std::string& token) {
  const auto eq = token.find('=');
  if (eq == std::string::npos || token.find('=', eq + 1) != std::string::npos)
    throw InputError("expected <key>=<value>, got '" + token + "'");
  return {token.substr(0, eq), token.substr(eq + 1)};
}

// Node token against explicit side sizes; returns the node id.
int parse_node_mn(int m, int n, const std::string& token) {
  if (token.size() < 2 || (token[0] != 'u' && token[0] != 'w') ||
      !digits_only(token.substr(1)))
    throw InputError("bad node '" + token + "' (want u<i> or w<j>)");
  const int idx = parse_int(token.substr(1));
  const int limit = token[0] == 'u' ? m : n;
  if (idx < 1 || idx > limit)
    throw InputError("node '" + token + "' does not exist in K_{" +
                     std::to_string(m) + "," + std::to_string(n) + "}");
  return token[0] == 'u' ? idx - 1 : m + idx - 1;
}

}  // namespace

std::string edge_name(const QProblem& p, int e) {
  const BipEdge be = p.edge_of_index(e);
  return "e(" + p.node_name(p.unode(be.u)) + "," + p.node_name(p.wnode(be.w)) +
         ")";
}

int parse_node(const QProblem& p, const std::string& token) {
  return parse_node_mn(p.m(), p.n(), token);
}

int parse_edge(const QProblem& p, const std::string& token) {
  if (token.size() < 4 || token.compare(0, 2, "e(") != 0 ||
      token.back() != ')')
    throw InputError("bad edge '" + token + "' (want e(u<i>,w<j>))");
  const std::string inner = token.substr(2, token.size() - 3);
  const auto comma = inner.find(',');
  if (comma == std::string::npos)
    throw InputError("bad edge '" + token + "' (want e(u<i>,w<j>))");
  const int a = parse_node(p, inner.substr(0, comma));
  const int b = parse_node(p, inner.substr(comma + 1));
  if (!p.is_unode(a) || p.is_unode(b))
    throw InputError("edge '" + token + "' must pair a u-node with a w-node");
  return p.edge_index({a, b - p.m()});
}

BMatchingProblem ParsedProblem::bmatching() const {
  const std::vector<int> bounds =
      b.value_or(std::vector<int>(base.node_count(), 1));
  if (cap.has_value()) return BMatchingProblem(base, bounds, *cap);
  return BMatchingProblem(base, bounds);
}

ParsedProblem parse_problem(std::istream& in, const std::string& name) {
  std::optional<std::pair<int, int>> size;
  std::optional<QProblem> problem;
  std::optional<std::vector<int>> bounds;
  std::optional<std::vector<int>> capacities;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    try {
      const std::string& keyword = tokens[0];
      if (keyword == "bipartite") {
        if (size.has_value()) throw InputError("duplicate 'bipartite' line");
        if (tokens.size() != 3)
          throw InputError("usage: bipartite <m> <n>");
        const int m = parse_int(tokens[1]);
        const int n = parse_int(tokens[2]);
        if (m < 1 || n < 1)
          throw InputError("bipartite sides must be positive");
        size = {m, n};
      } else if (keyword == "special") {
        if (!size.has_value())
          throw InputError("'special' before 'bipartite'");
        if (problem.has_value()) throw InputError("duplicate 'special' line");
        if (tokens.size() != 5)
          throw InputError("usage: special u<i> w<j> u<k> w<l>");
        const auto [m, n] = *size;
        const int ids[4] = {
            parse_node_mn(m, n, tokens[1]), parse_node_mn(m, n, tokens[2]),
            parse_node_mn(m, n, tokens[3]), parse_node_mn(m, n, tokens[4])};
        if (ids[0] >= m || ids[1] < m || ids[2] >= m || ids[3] < m)
          throw InputError("usage: special u<i> w<j> u<k> w<l>");
        problem.emplace(m, n, BipEdge{ids[0], ids[1] - m},
                        BipEdge{ids[2], ids[3] - m});
      } else if (keyword == "b") {
        if (!problem.has_value()) throw InputError("'b' before 'special'");
        if (bounds.has_value()) throw InputError("duplicate 'b' line");
        bounds.emplace(problem->node_count(), 1);
        std::vector<bool> seen(problem->node_count(), false);
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          const auto [key, value] = split_assignment(tokens[i]);
          const int v = parse_node(*problem, key);
          if (seen[v]) throw InputError("duplicate bound for " + key);
          seen[v] = true;
          (*bounds)[v] = parse_int(value);
        }
      } else if (keyword == "cap") {
        if (!problem.has_value()) throw InputError("'cap' before 'special'");
        if (capacities.has_value()) throw InputError("duplicate 'cap' line");
        capacities.emplace(problem->edge_count(), 1);
        std::vector<bool> seen(problem->edge_count(), false);
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          const auto [key, value] = split_assignment(tokens[i]);
          const int e = parse_edge(*problem, key);
          if (seen[e]) throw InputError("duplicate capacity for " + key);
          seen[e] = true;
          (*capacities)[e] = parse_int(value);
        }
      } else {
        throw InputError("unknown keyword '" + keyword + "'");
      }
    } catch (const InputError& err) {
      fail(name, lineno, err.what());
    } catch (const std::invalid_argument& err) {
      fail(name, lineno, err.what());
    }
  }
  if (!problem.has_value())
    throw InputError(name + ": missing 'bipartite'/'special' lines");
  ParsedProblem out{*problem, std::move(bounds), std::move(capacities)};
  if (!out.plain()) {
    try {
      out.bmatching();  // surface semantic violations at parse time
    } catch (const std::invalid_argument& err) {
      throw InputError(name + ": " + err.what());
    }
  }
  return out;
}

ParsedProblem parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_problem(in, path);
}

QPoint parse_point(std::istream& in, const QProblem& p,
                   const std::string& name) {
  QPoint pt;
  pt.x.assign(p.edge_count(), Rational(0));
  std::vector<bool> seen(p.edge_count(), false);
  bool seen_y = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    try {
      if (tokens.size() != 1)
        throw InputError("expected a single <key>=<value> per line");
      const auto [key, value] = split_assignment(tokens[0]);
      if (key == "y") {
        if (seen_y) throw InputError("duplicate value for y");
        seen_y = true;
        pt.y = parse_rational(value);
      } else {
        const int e = parse_edge(p, key);
        if (seen[e]) throw InputError("duplicate value for " + key);
        seen[e] = true;
        pt.x[e] = parse_rational(value);
      }
    } catch (const InputError& err) {
      fail(name, lineno, err.what());
    }
  }
  return pt;
}

QPoint parse_point_file(const std::string& path, const QProblem& p) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_point(in, p, path);
}

std::string format_problem(const ParsedProblem& p) {
  const QProblem& q = p.base;
  std::ostringstream out;
  out << "bipartite " << q.m() << ' ' << q.n() << '\n';
  out << "special " << q.node_name(q.u1()) << ' ' << q.node_name(q.w1()) << ' '
      << q.node_name(q.u2()) << ' ' << q.node_name(q.w2()) << '\n';
  if (p.b.has_value()) {
    out << 'b';
    for (int v = 0; v < q.node_count(); ++v)
      out << ' ' << q.node_name(v) << '=' << (*p.b)[v];
    out << '\n';
  }
  if (p.cap.has_value()) {
    out << "cap";
    for (int e = 0; e < q.edge_count(); ++e)
      out << ' ' << edge_name(q, e) << '=' << (*p.cap)[e];
    out << '\n';
  }
  return out.str();
}

std::string format_point(const QProblem& p, const QPoint& pt) {
  if (static_cast<int>(pt.x.size()) != p.edge_count())
    throw std::invalid_argument("point has " + std::to_string(pt.x.size()) +
                                " coordinates for " +
                                std::to_string(p.edge_count()) + " edges");
  std::ostringstream out;
  for (int e = 0; e < p.edge_count(); ++e)
    if (pt.x[e] != 0)
      out << edge_name(p, e) << '=' << to_fraction_string(pt.x[e]) << '\n';
  out << "y=" << to_fraction_string(pt.y) << '\n';
  return out.str();
}

}  // namespace qmatch
