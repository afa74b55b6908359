#include "qmatch/separate.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qmatch/blossom.hpp"
#include "qmatch/gadgets.hpp"

namespace qmatch {

namespace {

// Most violated base row, first-in-description-order on ties.  StdLin rows
// participate only for the down/exact variants.
std::optional<SeparationCertificate> base_certificate(const QProblem& p,
                                                      const QPoint& pt,
                                                      bool with_stdlin) {
  std::vector<FamilyInstance> rows;
  for (int e = 0; e < p.edge_count(); ++e) rows.push_back(nonneg_instance(e));
  for (int v = 0; v < p.node_count(); ++v) rows.push_back(degree_instance(v));
  rows.push_back(FamilyInstance{FamilyKind::YLower});
  rows.push_back(FamilyInstance{FamilyKind::YUpper});
  if (with_stdlin) {
    rows.push_back(stdlin_instance(1));
    rows.push_back(stdlin_instance(2));
  }
  std::optional<SeparationCertificate> best;
  for (const FamilyInstance& inst : rows) {
    LinearInequality row = build(p, inst);
    const Rational viol = violation(row, pt);
    if (viol <= 0) continue;
    if (!best || viol > best->violation)
      best = SeparationCertificate{inst, std::move(row), viol};
  }
  return best;
}

SeparationCertificate certify(const QProblem& p, FamilyInstance inst,
                              const QPoint& pt) {
  LinearInequality row = build(p, inst);
  const Rational viol = violation(row, pt);
  return {std::move(inst), std::move(row), viol};
}

// Most violated quadratic-down / quadratic-up row by direct enumeration
// over the full index family (exponential; fallback and test oracle).
std::optional<SeparationCertificate> enumerate_most_violated(const QProblem& p,
                                                             const QPoint& pt,
                                                             Family family) {
  std::optional<SeparationCertificate> best;
  for (FamilyInstance& inst : enumerate_family(p, family, p.node_count())) {
    SeparationCertificate cert = certify(p, std::move(inst), pt);
    if (cert.violation <= 0) continue;
    if (!best || cert.violation > best->violation) best = std::move(cert);
  }
  return best;
}

bool contains_all(const std::vector<int>& sorted_set, std::initializer_list<int> nodes) {
  for (int v : nodes)
    if (!std::binary_search(sorted_set.begin(), sorted_set.end(), v)) return false;
  return true;
}

// Maps the gadget's violated blossoms to down rows.  Every violated cut-tree
// candidate must enclose exactly one of e_u, e_w and form a quadratic-down
// index set; the blossom violation equals the row violation.
std::optional<SeparationCertificate> down_gadget_stage(const QProblem& p,
                                                       const QPoint& pt) {
  const DownGadget gad = build_down_gadget(p, pt);
  const std::vector<BlossomViolation> cands = blossom_candidates(gad.graph, gad.xbar);
  std::optional<SeparationCertificate> best;
  bool kept = false;
  for (const BlossomViolation& cand : cands) {
    const bool has_eu = contains_all(cand.node_set, {p.u1(), p.u2()});
    const bool has_ew = contains_all(cand.node_set, {p.w1(), p.w2()});
    if (has_eu == has_ew) continue;  // both or neither: not a down pattern
    kept = true;
    if (!in_down_family(p, cand.node_set))
      throw std::logic_error("gadget cut does not induce a down row");
    SeparationCertificate cert = certify(p, down_instance(cand.node_set), pt);
    if (cert.violation != cand.violation)
      throw std::logic_error("down gadget violation accounting mismatch");
    if (!best) best = std::move(cert);  // candidates are pre-sorted
  }
  if (!cands.empty() && !kept)
    throw std::logic_error("no gadget cut survives the down pattern filter");
  return best;
}

// Gadget stage for the up rows; requires the gadget preconditions
// x_{e_i} >= y/2 and x_{e1}+x_{e2}-y <= 1 to hold.
std::optional<SeparationCertificate> up_gadget_stage(const QProblem& p,
                                                     const QPoint& pt) {
  const UpGadget gad = build_up_gadget(p, pt);
  const std::vector<BlossomViolation> cands = blossom_candidates(gad.graph, gad.xbar);
  std::optional<SeparationCertificate> best;
  bool kept = false;
  for (const BlossomViolation& cand : cands) {
    const bool has_a = std::binary_search(cand.node_set.begin(), cand.node_set.end(), gad.a);
    const bool has_b = std::binary_search(cand.node_set.begin(), cand.node_set.end(), gad.b);
    if (has_a == has_b) continue;  // both or neither: not an up pattern
    kept = true;
    std::vector<int> s;
    for (int v : cand.node_set)
      if (v != gad.a && v != gad.b) s.push_back(v);
    if (!in_up_family(p, s))
      throw std::logic_error("gadget cut does not induce an up row");
    SeparationCertificate cert = certify(p, up_instance(std::move(s)), pt);
    if (cert.violation != cand.violation)
      throw std::logic_error("up gadget violation accounting mismatch");
    if (!best) best = std::move(cert);
  }
  if (!cands.empty() && !kept)
    throw std::logic_error("no gadget cut survives the up pattern filter");
  return best;
}

// The up stage shared by separate_up and separate_exact; assumes the base
// rows (x >= 0, degrees, 0 <= y <= 1) hold.
std::optional<SeparationCertificate> up_stage(const QProblem& p, const QPoint& pt) {
  // x_{e_i} < y/2 strictly implies every up row:  x(E[S]) + x_{e_j} - y/2
  // <= |S|/2 already follows from nonnegativity and the degree rows.
  if (pt.x[p.e1_index()] < pt.y / 2 || pt.x[p.e2_index()] < pt.y / 2)
    return std::nullopt;
  if (pt.x[p.e1_index()] + pt.x[p.e2_index()] - pt.y > 1) {
    // Gadget not constructible; Up({u1,w2}) is violated, so enumeration
    // must return a certificate.
    auto best = enumerate_most_violated(p, pt, Family::Up);
    if (!best) throw std::logic_error("up enumeration missed a violated row");
    return best;
  }
  return up_gadget_stage(p, pt);
}

}  // namespace

std::optional<SeparationCertificate> separate_down(const QProblem& p, const QPoint& pt) {
  if (static_cast<int>(pt.x.size()) != p.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
  if (auto base = base_certificate(p, pt, /*with_stdlin=*/true)) return base;
  return down_gadget_stage(p, pt);
}

std::optional<SeparationCertificate> separate_up(const QProblem& p, const QPoint& pt) {
  if (static_cast<int>(pt.x.size()) != p.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
  if (auto base = base_certificate(p, pt, /*with_stdlin=*/false)) return base;
  return up_stage(p, pt);
}

std::optional<SeparationCertificate> separate_exact(const QProblem& p, const QPoint& pt) {
  if (static_cast<int>(pt.x.size()) != p.edge_count())
    throw std::invalid_argument("point has wrong number of edge values");
  if (auto base = base_certificate(p, pt, /*with_stdlin=*/true)) return base;
  if (auto down = down_gadget_stage(p, pt)) return down;
  return up_stage(p, pt);
}

}  // namespace qmatch
