#include "qmatch/problem.hpp"

#include <stdexcept>

namespace qmatch {

QProblem::QProblem(int m, int n, BipEdge e1, BipEdge e2)
    : m_(m), n_(n), e1_(e1), e2_(e2) {
  if (m < 2 || n < 2) throw std::invalid_argument("K_{m,n} requires m, n >= 2");
  for (const BipEdge& e : {e1, e2})
    if (e.u < 0 || e.u >= m || e.w < 0 || e.w >= n)
      throw std::invalid_argument("distinguished edge out of range");
  if (e1.u == e2.u || e1.w == e2.w)
    throw std::invalid_argument("distinguished edges must be node-disjoint");
}

bool QProblem::is_special(int v) const {
  return v == u1() || v == u2() || v == w1() || v == w2();
}

GeneralGraph QProblem::graph() const {
  GeneralGraph g(m_ + n_);
  for (int i = 0; i < m_; ++i) g.set_label(unode(i), "u" + std::to_string(i + 1));
  for (int j = 0; j < n_; ++j) g.set_label(wnode(j), "w" + std::to_string(j + 1));
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j) g.add_edge(unode(i), wnode(j));
  return g;
}

std::string QProblem::node_name(int v) const {
  if (v < 0 || v >= node_count()) throw std::invalid_argument("node out of range");
  if (is_unode(v)) return "u" + std::to_string(v + 1);
  return "w" + std::to_string(v - m_ + 1);
}

}  // namespace qmatch
