#include "qmatch/exactlp.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "qmatch/errors.hpp"

namespace qmatch {

namespace {

// ---------------------------------------------------------------------------
// Standard-form core:  max c.z  s.t.  E z = f,  z >= 0.
//
// Dense tableau, two phases, Bland's rule.  The artificial columns are kept
// through phase 2 (barred from entering) so that the inverse basis block is
// always available for dual extraction.  Every certificate handed back is
// re-checked against the input data; a failed check is a bug, not an input
// condition, hence std::logic_error.
// ---------------------------------------------------------------------------

struct StandardResult {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> z;
  std::vector<Rational> dual;    // pi with pi.E_j >= c_j for all j, pi.f = objective
  std::vector<Rational> farkas;  // pi with pi.E_j >= 0 for all j, pi.f < 0
  std::vector<Rational> ray;     // d >= 0, E d = 0, c.d > 0
};

class StandardSimplex {
 public:
  StandardSimplex(const std::vector<std::vector<Rational>>& e,
                  const std::vector<Rational>& f, std::vector<Rational> c)
      : E_(e), f_(f), c_(std::move(c)), m_(static_cast<int>(e.size())),
        n_(static_cast<int>(c_.size())) {
    sign_.assign(m_, 1);
    T_.assign(m_, std::vector<Rational>(n_ + m_, Rational(0)));
    rhs_.assign(m_, Rational(0));
    basis_.assign(m_, 0);
    for (int i = 0; i < m_; ++i) {
      if (static_cast<int>(E_[i].size()) != n_)
        throw std::invalid_argument("lp: row length does not match column count");
      if (f_[i] < 0) sign_[i] = -1;
      for (int j = 0; j < n_; ++j) T_[i][j] = sign_[i] * E_[i][j];
      T_[i][n_ + i] = 1;
      rhs_[i] = sign_[i] * f_[i];
      basis_[i] = n_ + i;
    }
  }

  StandardResult solve() {
    StandardResult out;
    std::vector<Rational> phase1(n_ + m_, Rational(0));
    for (int i = 0; i < m_; ++i) phase1[n_ + i] = -1;
    run(phase1, /*allow_artificial=*/true);
    if (objective_value(phase1) < 0) {
      out.status = LpStatus::Infeasible;
      out.farkas = row_multipliers(phase1);
      validate_farkas(out.farkas);
      return out;
    }
    drive_out_artificials();
    std::vector<Rational> phase2(n_ + m_, Rational(0));
    for (int j = 0; j < n_; ++j) phase2[j] = c_[j];
    int escape = run(phase2, /*allow_artificial=*/false);
    if (escape >= 0) {
      out.status = LpStatus::Unbounded;
      out.z = primal();
      out.ray = ray_of(escape);
      validate_point(out.z);
      validate_ray(out.ray);
      return out;
    }
    out.status = LpStatus::Optimal;
    out.z = primal();
    out.objective = 0;
    for (int j = 0; j < n_; ++j) out.objective += c_[j] * out.z[j];
    out.dual = row_multipliers(phase2);
    validate_point(out.z);
    validate_dual(out.dual, out.objective);
    return out;
  }

 private:
  // Runs one phase to optimality under Bland's rule; returns -1, or the
  // entering column for which no ratio row exists (an unbounded direction).
  int run(const std::vector<Rational>& cost, bool allow_artificial) {
    const int limit = allow_artificial ? n_ + m_ : n_;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (reduced_cost(cost, j) > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return -1;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (T_[i][enter] <= 0) continue;
        Rational ratio = rhs_[i] / T_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return enter;
      pivot(leave, enter);
    }
  }

  Rational reduced_cost(const std::vector<Rational>& cost, int j) const {
    Rational rc = cost[j];
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb != 0 && T_[i][j] != 0) rc -= cb * T_[i][j];
    }
    return rc;
  }

  Rational objective_value(const std::vector<Rational>& cost) const {
    Rational val = 0;
    for (int i = 0; i < m_; ++i) val += cost[basis_[i]] * rhs_[i];
    return val;
  }

  void pivot(int r, int j) {
    const Rational piv = T_[r][j];
    for (auto& t : T_[r]) t /= piv;
    rhs_[r] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || T_[i][j] == 0) continue;
      const Rational factor = T_[i][j];
      for (int k = 0; k < n_ + m_; ++k) T_[i][k] -= factor * T_[r][k];
      rhs_[i] -= factor * rhs_[r];
    }
    basis_[r] = j;
  }

  // Swaps any basic artificial for a structural column when possible; rows
  // where none exists are redundant and stay inert (all structural entries
  // zero, right-hand side zero), so later pivots never touch them.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      if (rhs_[i] != 0)
        throw std::logic_error("lp: basic artificial with nonzero value");
      for (int j = 0; j < n_; ++j) {
        if (T_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> z(n_, Rational(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) z[basis_[i]] = rhs_[i];
    return z;
  }

  // Row multipliers from the carried inverse block, mapped back to the
  // original row orientation.
  std::vector<Rational> row_multipliers(const std::vector<Rational>& cost) const {
    std::vector<Rational> pi(m_, Rational(0));
    for (int i = 0; i < m_; ++i) {
      Rational y = 0;
      for (int r = 0; r < m_; ++r) {
        const Rational& cb = cost[basis_[r]];
        if (cb != 0) y += cb * T_[r][n_ + i];
      }
      pi[i] = sign_[i] * y;
    }
    return pi;
  }

  std::vector<Rational> ray_of(int enter) const {
    std::vector<Rational> d(n_, Rational(0));
    d[enter] = 1;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) d[basis_[i]] = -T_[i][enter];
    return d;
  }

  void validate_point(const std::vector<Rational>& z) const {
    for (const auto& v : z)
      if (v < 0) throw std::logic_error("lp: negative primal component");
    for (int i = 0; i < m_; ++i) {
      Rational lhs = 0;
      for (int j = 0; j < n_; ++j) lhs += E_[i][j] * z[j];
      if (lhs != f_[i]) throw std::logic_error("lp: primal point misses a row");
    }
  }

  void validate_dual(const std::vector<Rational>& pi, const Rational& objective) const {
    for (int j = 0; j < n_; ++j) {
      Rational col = 0;
      for (int i = 0; i < m_; ++i) col += pi[i] * E_[i][j];
      if (col < c_[j]) throw std::logic_error("lp: dual misses a column bound");
    }
    Rational val = 0;
    for (int i = 0; i < m_; ++i) val += pi[i] * f_[i];
    if (val != objective) throw std::logic_error("lp: duality gap");
  }

  void validate_farkas(const std::vector<Rational>& pi) const {
    for (int j = 0; j < n_; ++j) {
      Rational col = 0;
      for (int i = 0; i < m_; ++i) col += pi[i] * E_[i][j];
      if (col < 0) throw std::logic_error("lp: invalid infeasibility certificate");
    }
    Rational val = 0;
    for (int i = 0; i < m_; ++i) val += pi[i] * f_[i];
    if (val >= 0) throw std::logic_error("lp: invalid infeasibility certificate");
  }

  void validate_ray(const std::vector<Rational>& d) const {
    Rational gain = 0;
    for (int j = 0; j < n_; ++j) {
      if (d[j] < 0) throw std::logic_error("lp: invalid ray");
      gain += c_[j] * d[j];
    }
    if (gain <= 0) throw std::logic_error("lp: invalid ray");
    for (int i = 0; i < m_; ++i) {
      Rational lhs = 0;
      for (int j = 0; j < n_; ++j) lhs += E_[i][j] * d[j];
      if (lhs != 0) throw std::logic_error("lp: invalid ray");
    }
  }

  const std::vector<std::vector<Rational>>& E_;
  const std::vector<Rational>& f_;
  std::vector<Rational> c_;
  int m_, n_;
  std::vector<int> sign_;
  std::vector<std::vector<Rational>> T_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
};

// Greedy maximal independent row set (indices in input order).
std::vector<int> independent_rows(const std::vector<std::vector<Rational>>& mat) {
  std::vector<std::vector<Rational>> reduced;
  std::vector<int> pivot_col;
  std::vector<int> picked;
  for (int r = 0; r < static_cast<int>(mat.size()); ++r) {
    std::vector<Rational> v = mat[r];
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      const Rational factor = v[pivot_col[k]];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= factor * reduced[k][j];
    }
    int pc = -1;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] != 0) {
        pc = static_cast<int>(j);
        break;
      }
    }
    if (pc < 0) continue;
    const Rational piv = v[pc];
    for (auto& x : v) x /= piv;
    reduced.push_back(std::move(v));
    pivot_col.push_back(pc);
    picked.push_back(r);
  }
  return picked;
}

std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int pr = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) throw std::logic_error("lp: singular basis matrix");
    std::swap(a[col], a[pr]);
    std::swap(inv[col], inv[pr]);
    const Rational piv = a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] /= piv;
      inv[col][j] /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

// Scales to a primitive integer vector (coprime entries, direction kept).
void normalize_ray(std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& x : v)
    den = boost::multiprecision::lcm(den, rational_den(x));
  std::vector<Integer> ints(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = rational_num(v[i]) * (den / rational_den(v[i]));
    g = boost::multiprecision::gcd(g, ints[i]);
  }
  if (g == 0) return;
  if (g < 0) g = -g;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(ints[i] / g);
}

struct Ray {
  std::vector<Rational> v;
  std::vector<std::uint64_t> tight;
};

bool mask_subset(const std::vector<std::uint64_t>& a,
                 const std::vector<std::uint64_t>& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & ~b[w]) return false;
  return true;
}

}  // namespace

LpResult lp_solve(const HPolytope& poly, const std::vector<Rational>& c) {
  const int d = poly.dim;
  if (d < 0) throw std::invalid_argument("lp_solve: negative dimension");
  if (static_cast<int>(c.size()) != d)
    throw std::invalid_argument("lp_solve: objective length does not match dimension");
  const int m = static_cast<int>(poly.rows.size());
  for (const auto& row : poly.rows)
    if (static_cast<int>(row.a.size()) != d)
      throw std::invalid_argument("lp_solve: row length does not match dimension");

  // Free variables split into a difference of nonnegatives, one slack per row.
  const int cols = 2 * d + m;
  std::vector<std::vector<Rational>> e(m, std::vector<Rational>(cols, Rational(0)));
  std::vector<Rational> f(m);
  std::vector<Rational> cost(cols, Rational(0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j) {
      e[i][j] = poly.rows[i].a[j];
      e[i][d + j] = -poly.rows[i].a[j];
    }
    e[i][2 * d + i] = 1;
    f[i] = poly.rows[i].rhs;
  }
  for (int j = 0; j < d; ++j) {
    cost[j] = c[j];
    cost[d + j] = -c[j];
  }

  StandardResult core = StandardSimplex(e, f, std::move(cost)).solve();
  auto fold = [&](const std::vector<Rational>& z) {
    std::vector<Rational> x(d);
    for (int j = 0; j < d; ++j) x[j] = z[j] - z[d + j];
    return x;
  };

  LpResult out;
  out.status = core.status;
  switch (core.status) {
    case LpStatus::Optimal:
      out.solution = fold(core.z);
      out.objective = core.objective;
      out.dual = core.dual;
      break;
    case LpStatus::Infeasible:
      out.farkas = core.farkas;
      break;
    case LpStatus::Unbounded:
      out.solution = fold(core.z);
      out.ray = fold(core.ray);
      break;
  }
  return out;
}

CombinationResult feasibility_combination(
    const std::vector<std::vector<Rational>>& points,
    const std::vector<Rational>& target) {
  const int d = static_cast<int>(target.size());
  const int k = static_cast<int>(points.size());
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != d)
      throw std::invalid_argument(
          "feasibility_combination: point length does not match target");

  std::vector<std::vector<Rational>> e(d + 1, std::vector<Rational>(k, Rational(0)));
  std::vector<Rational> f(d + 1);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < k; ++j) e[i][j] = points[j][i];
    f[i] = target[i];
  }
  for (int j = 0; j < k; ++j) e[d][j] = 1;
  f[d] = 1;

  StandardResult core =
      StandardSimplex(e, f, std::vector<Rational>(k, Rational(0))).solve();
  CombinationResult out;
  if (core.status == LpStatus::Optimal) {
    out.feasible = true;
    out.lambda = core.z;
    return out;
  }
  if (core.status != LpStatus::Infeasible)
    throw std::logic_error("feasibility_combination: unexpected lp status");

  out.feasible = false;
  out.hyperplane.assign(d, Rational(0));
  for (int i = 0; i < d; ++i) out.hyperplane[i] = -core.farkas[i];
  out.offset = core.farkas[d];
  for (const auto& p : points) {
    Rational val = 0;
    for (int i = 0; i < d; ++i) val += out.hyperplane[i] * p[i];
    if (val > out.offset)
      throw std::logic_error("feasibility_combination: invalid separating hyperplane");
  }
  Rational val = 0;
  for (int i = 0; i < d; ++i) val += out.hyperplane[i] * target[i];
  if (val <= out.offset)
    throw std::logic_error("feasibility_combination: invalid separating hyperplane");
  return out;
}

std::vector<std::vector<Rational>> vertex_enumeration(const HPolytope& poly,
                                                      int dim_guard) {
  const int d = poly.dim;
  if (d < 1) throw std::invalid_argument("vertex_enumeration: dimension must be positive");
  if (d > dim_guard)
    throw GuardError("vertex_enumeration: dimension " + std::to_string(d) +
                     " exceeds guard " + std::to_string(dim_guard));
  for (const auto& row : poly.rows)
    if (static_cast<int>(row.a.size()) != d)
      throw std::invalid_argument("vertex_enumeration: row length does not match dimension");

  // The homogenization cannot tell an empty polytope from an unbounded one,
  // so settle emptiness up front.
  if (lp_solve(poly, std::vector<Rational>(d, Rational(0))).status ==
      LpStatus::Infeasible)
    return {};

  // Cone over the polytope: rows (a, -rhs) plus t >= 0; vertices are the
  // rays with positive last coordinate, rescaled to t = 1.
  const int hd = d + 1;
  std::vector<std::vector<Rational>> hrows;
  hrows.reserve(poly.rows.size() + 1);
  for (const auto& row : poly.rows) {
    std::vector<Rational> h(hd);
    for (int j = 0; j < d; ++j) h[j] = row.a[j];
    h[d] = -row.rhs;
    hrows.push_back(std::move(h));
  }
  {
    std::vector<Rational> h(hd, Rational(0));
    h[d] = -1;
    hrows.push_back(std::move(h));
  }
  const int nrows = static_cast<int>(hrows.size());

  std::vector<int> base = independent_rows(hrows);
  if (static_cast<int>(base.size()) < hd)
    throw std::runtime_error("vertex_enumeration: polytope is unbounded");

  // Initial simplicial cone from hd independent rows; its extreme rays are
  // the columns of the negated inverse, each tight on every base row but one.
  std::vector<std::vector<Rational>> r0(hd);
  for (int i = 0; i < hd; ++i) r0[i] = hrows[base[i]];
  std::vector<std::vector<Rational>> inv = invert(std::move(r0));

  const int words = (nrows + 63) / 64;
  auto set_bit = [](std::vector<std::uint64_t>& mask, int row) {
    mask[row / 64] |= std::uint64_t{1} << (row % 64);
  };
  std::vector<Ray> rays;
  for (int j = 0; j < hd; ++j) {
    Ray r;
    r.v.resize(hd);
    for (int i = 0; i < hd; ++i) r.v[i] = -inv[i][j];
    normalize_ray(r.v);
    r.tight.assign(words, 0);
    for (int i = 0; i < hd; ++i)
      if (i != j) set_bit(r.tight, base[i]);
    rays.push_back(std::move(r));
  }

  std::vector<char> in_base(nrows, 0);
  for (int b : base) in_base[b] = 1;
  for (int m = 0; m < nrows; ++m) {
    if (in_base[m]) continue;
    const int count = static_cast<int>(rays.size());
    std::vector<Rational> vals(count);
    for (int i = 0; i < count; ++i) {
      vals[i] = 0;
      for (int j = 0; j < hd; ++j) vals[i] += hrows[m][j] * rays[i].v[j];
    }
    std::vector<Ray> next;
    for (int i = 0; i < count; ++i) {
      if (vals[i] > 0) continue;
      Ray keep = rays[i];
      if (vals[i] == 0) set_bit(keep.tight, m);
      next.push_back(std::move(keep));
    }
    for (int ip = 0; ip < count; ++ip) {
      if (vals[ip] <= 0) continue;
      for (int in = 0; in < count; ++in) {
        if (vals[in] >= 0) continue;
        std::vector<std::uint64_t> common(words);
        for (int w = 0; w < words; ++w)
          common[w] = rays[ip].tight[w] & rays[in].tight[w];
        bool adjacent = true;
        for (int k = 0; k < count; ++k) {
          if (k == ip || k == in) continue;
          if (mask_subset(common, rays[k].tight)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Ray nr;
        nr.v.resize(hd);
        for (int j = 0; j < hd; ++j)
          nr.v[j] = vals[ip] * rays[in].v[j] - vals[in] * rays[ip].v[j];
        normalize_ray(nr.v);
        nr.tight = std::move(common);
        set_bit(nr.tight, m);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }

  std::vector<std::vector<Rational>> vertices;
  for (const auto& r : rays) {
    const Rational& t = r.v[d];
    if (t == 0) throw std::runtime_error("vertex_enumeration: polytope is unbounded");
    std::vector<Rational> v(d);
    for (int j = 0; j < d; ++j) v[j] = r.v[j] / t;
    vertices.push_back(std::move(v));
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

int affine_rank(const std::vector<std::vector<Rational>>& points) {
  if (points.empty()) return -1;
  const std::size_t d = points[0].size();
  for (const auto& p : points)
    if (p.size() != d)
      throw std::invalid_argument("affine_rank: inconsistent point dimensions");
  std::vector<std::vector<Rational>> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<Rational> v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(v));
  }
  if (diffs.empty()) return 0;
  return static_cast<int>(independent_rows(diffs).size());
}

std::vector<Rational> dense_point(const QPoint& pt) {
  std::vector<Rational> z(pt.x.size() + 1);
  std::copy(pt.x.begin(), pt.x.end(), z.begin());
  z.back() = pt.y;
  return z;
}

QPoint qpoint_of(const std::vector<Rational>& z) {
  if (z.empty()) throw std::invalid_argument("qpoint_of: empty coordinate vector");
  QPoint pt;
  pt.x.assign(z.begin(), z.end() - 1);
  pt.y = z.back();
  return pt;
}

HPolytope hpolytope_of(const QProblem& p,
                       const std::vector<LinearInequality>& rows) {
  HPolytope poly;
  poly.dim = p.edge_count() + 1;
  for (const auto& row : rows) {
    DenseRow dr;
    dr.a.assign(poly.dim, Rational(0));
    for (const auto& [edge, coef] : row.xcoef) {
      if (edge < 0 || edge >= p.edge_count())
        throw std::invalid_argument("hpolytope_of: row references an unknown edge");
      dr.a[edge] = coef;
    }
    dr.a[poly.dim - 1] = row.ycoef;
    dr.rhs = row.rhs;
    const bool equality = row.sense == Sense::Equal;
    poly.rows.push_back(std::move(dr));
    if (equality) {
      const DenseRow& just = poly.rows.back();
      DenseRow neg;
      neg.a.resize(poly.dim);
      for (int j = 0; j < poly.dim; ++j) neg.a[j] = -just.a[j];
      neg.rhs = -just.rhs;
      poly.rows.push_back(std::move(neg));
    }
  }
  return poly;
}

}  // namespace qmatch
