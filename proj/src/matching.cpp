#include "qmatch/matching.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "qmatch/errors.hpp"

namespace qmatch {

bool is_matching(const GeneralGraph& g, const Matching& m) {
  std::vector<char> used(g.node_count(), 0);
  int prev = -1;
  for (int idx : m) {
    if (idx < 0 || idx >= g.edge_count() || idx <= prev) return false;
    prev = idx;
    const auto [a, b] = g.edge(idx);
    if (used[a] || used[b]) return false;
    used[a] = used[b] = 1;
  }
  return true;
}

bool is_perfect_matching(const GeneralGraph& g, const Matching& m) {
  return is_matching(g, m) && 2 * static_cast<int>(m.size()) == g.node_count();
}

std::vector<int> chi(const GeneralGraph& g, const Matching& m) {
  if (!is_matching(g, m)) throw std::invalid_argument("not a matching of the graph");
  std::vector<int> v(g.edge_count(), 0);
  for (int idx : m) v[idx] = 1;
  return v;
}

int y_of(const QProblem& p, const Matching& m) {
  const bool has1 = std::binary_search(m.begin(), m.end(), p.e1_index());
  const bool has2 = std::binary_search(m.begin(), m.end(), p.e2_index());
  return (has1 && has2) ? 1 : 0;
}

std::size_t default_enum_guard() {
  static const std::size_t guard = [] {
    if (const char* env = std::getenv("QMATCH_ENUM_GUARD")) {
      const long v = std::atol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(24);
  }();
  return guard;
}

namespace {

void extend(const GeneralGraph& g, int from, Matching& current,
            std::vector<char>& used, std::vector<Matching>& out) {
  out.push_back(current);
  for (int idx = from; idx < g.edge_count(); ++idx) {
    const auto [a, b] = g.edge(idx);
    if (used[a] || used[b]) continue;
    used[a] = used[b] = 1;
    current.push_back(idx);
    extend(g, idx + 1, current, used, out);
    current.pop_back();
    used[a] = used[b] = 0;
  }
}

}  // namespace

std::vector<Matching> enumerate_matchings(const GeneralGraph& g) {
  return enumerate_matchings(g, default_enum_guard());
}

std::vector<Matching> enumerate_matchings(const GeneralGraph& g, std::size_t guard) {
  if (static_cast<std::size_t>(g.edge_count()) > guard)
    throw GuardError("matching enumeration guard exceeded: " +
                     std::to_string(g.edge_count()) + " edges > " +
                     std::to_string(guard));
  std::vector<Matching> out;
  Matching current;
  std::vector<char> used(g.node_count(), 0);
  extend(g, 0, current, used, out);
  return out;
}

}  // namespace qmatch
