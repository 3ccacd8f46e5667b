#include "ht/enumerate.hpp"

#include <cmath>

namespace ht {

namespace {

FElem pi_pow(int k, const FieldConfig& cfg) { return FElem(p_power(cfg.p, k), Rat(0), cfg); }

// Column echelon with rows processed in the given order. Pivots are chosen
// among columns not yet used as pivots (minimal valuation); the pivot row is
// cleared in every other column. Rows whose remaining entries are all zero
// are skipped. Returns the pivot column set; `ops` (if non-null) accumulates
// the same column operations from identity.
std::vector<bool> column_echelon(MatF& a, const std::vector<int>& row_order, MatF* ops) {
  const int m = static_cast<int>(a.cols());
  std::vector<bool> is_piv(m, false);
  for (int r : row_order) {
    int best = -1, bestval = 0;
    for (int j = 0; j < m; ++j) {
      if (is_piv[j] || a(r, j).is_zero()) continue;
      int v = a(r, j).val();
      if (best < 0 || v < bestval) {
        best = j;
        bestval = v;
      }
    }
    if (best < 0) continue;
    is_piv[best] = true;
    for (int j = 0; j < m; ++j) {
      if (j == best || a(r, j).is_zero()) continue;
      FElem f = a(r, j) / a(r, best);
      a.col(j) -= (a.col(best) * f).eval();
      if (ops) ops->col(j) -= (ops->col(best) * f).eval();
    }
  }
  return is_piv;
}

struct SmithAdapted {
  MatF e;               // adapted basis of hi: lo = e * diag(pi^c) * O^n
  std::vector<int> c;   // quotient exponents, nondecreasing
};

SmithAdapted smith_adapted(const Lattice& lo, const Lattice& hi) {
  const FieldConfig& cfg = lo.field();
  MatF bh = hi.basis();
  MatF t = inverse_exact(bh) * lo.basis();
  const int n = static_cast<int>(t.rows());

  MatF r_acc = identityF(n, cfg);  // accumulated row operations
  std::vector<int> c(n);
  std::vector<FElem> units(n);
  for (int top = 0; top < n; ++top) {
    int bi = -1, bj = -1, bv = 0;
    for (int i = top; i < n; ++i)
      for (int j = top; j < n; ++j) {
        if (t(i, j).is_zero()) continue;
        int v = t(i, j).val();
        if (bi < 0 || v < bv) {
          bi = i;
          bj = j;
          bv = v;
        }
      }
    if (bi < 0) throw std::domain_error("smith_adapted: singular quotient");
    t.row(bi).swap(t.row(top));
    r_acc.row(bi).swap(r_acc.row(top));
    t.col(bj).swap(t.col(top));
    FElem piv = t(top, top);
    for (int i = top + 1; i < n; ++i) {
      if (t(i, top).is_zero()) continue;
      FElem f = t(i, top) / piv;
      t.row(i) -= (t.row(top) * f).eval();
      r_acc.row(i) -= (r_acc.row(top) * f).eval();
    }
    for (int j = top + 1; j < n; ++j) {
      if (t(top, j).is_zero()) continue;
      FElem f = t(top, j) / piv;
      t.col(j) -= (t.col(top) * f).eval();
    }
    c[top] = bv;
    units[top] = piv / pi_pow(bv, cfg);
  }
  MatF u = inverse_exact(r_acc);
  for (int j = 0; j < n; ++j) u.col(j) *= units[j];
  return SmithAdapted{(hi.basis() * u).eval(), c};
}

// Residue representatives 0..p^k-1 (both components for O_F).
void residue_reps(std::vector<FElem>& out, int k, Ring ring, const FieldConfig& cfg) {
  out.clear();
  long pk = 1;
  for (int i = 0; i < k; ++i) pk *= cfg.p;
  if (ring == Ring::OF0) {
    for (long a = 0; a < pk; ++a) out.push_back(FElem(Rat(a), Rat(0), cfg));
  } else {
    for (long a = 0; a < pk; ++a)
      for (long b = 0; b < pk; ++b) out.push_back(FElem(Rat(a), Rat(b), cfg));
  }
}

// Forward substitution check: is S^{-1} diag(pi^c) integral for lower
// triangular S with pivot powers b?
bool contains_core(const MatF& s, const std::vector<int>& b, const std::vector<int>& c,
                   const FieldConfig& cfg) {
  const int n = static_cast<int>(s.rows());
  for (int j = 0; j < n; ++j) {
    // solve S x = pi^{c_j} e_j
    std::vector<FElem> x(n, FElem(0));
    for (int i = 0; i < n; ++i) {
      FElem rhs = (i == j) ? pi_pow(c[j], cfg) : FElem(0);
      for (int k = 0; k < i; ++k)
        if (!x[k].is_zero() && !s(i, k).is_zero()) rhs -= s(i, k) * x[k];
      if (rhs.is_zero()) continue;
      if (rhs.val() < b[i]) return false;
      x[i] = rhs / s(i, i);
    }
  }
  return true;
}

}  // namespace

std::vector<Lattice> intermediate_lattices(const Lattice& lo, const Lattice& hi,
                                           const std::function<bool(const Lattice&)>& pred,
                                           const EnumBudget& budget) {
  if (lo.ring() != hi.ring() || lo.dim() != hi.dim())
    throw std::invalid_argument("intermediate_lattices: incompatible lattices");
  if (!hi.contains(lo)) throw std::invalid_argument("intermediate_lattices: Lo not inside Hi");

  const FieldConfig& cfg = lo.field();
  const Ring ring = lo.ring();
  const int deg = ring == Ring::OF ? 2 : 1;
  SmithAdapted ad = smith_adapted(lo, hi);
  const int n = static_cast<int>(ad.c.size());
  int csum = 0, cmax = 0;
  for (int x : ad.c) {
    csum += x;
    cmax = std::max(cmax, x);
  }
  if (deg * csum > budget.budget_exponent)
    throw BudgetExceeded("enumeration budget exceeded: index exponent " +
                         std::to_string(deg * csum));

  std::vector<Lattice> out;
  MatF s = MatF::Zero(n, n);
  std::vector<int> b(n, 0);
  std::vector<std::vector<FElem>> reps_cache(cmax + 1);
  for (int k = 0; k <= cmax; ++k) residue_reps(reps_cache[k], k, ring, cfg);

  long long visited = 0;
  const long long cap = 1LL << 26;

  // Recursive generation of lower-triangular Hermite candidates.
  std::function<void(int, int)> rec = [&](int row, int bsum) {
    if (++visited > cap) throw BudgetExceeded("enumeration budget exceeded: candidate cap");
    if (row == n) {
      if (!contains_core(s, b, ad.c, cfg)) return;
      Lattice m = Lattice::from_basis((ad.e * s).eval(), ring, cfg);
      if (!pred || pred(m)) out.push_back(m);
      return;
    }
    for (int br = 0; br <= cmax && bsum + br <= csum; ++br) {
      b[row] = br;
      s(row, row) = pi_pow(br, cfg);
      // entries left of the pivot, reduced mod pi^{br}
      std::function<void(int)> fill = [&](int col) {
        if (col == row) {
          rec(row + 1, bsum + br);
          return;
        }
        for (const FElem& rep : reps_cache[br]) {
          s(row, col) = rep;
          fill(col + 1);
        }
      };
      fill(0);
      for (int j = 0; j <= row; ++j) s(row, j) = FElem(0);
    }
  };
  rec(0, 0);
  return out;
}

std::vector<Lattice> window_lattices(int n, Ring ring, const FieldConfig& cfg, int B,
                                     const EnumBudget& budget) {
  Lattice std_lat = Lattice::standard(n, ring, cfg);
  Lattice lo = std_lat.scaled(pi_pow(B, cfg));
  Lattice hi = std_lat.scaled(pi_pow(-B, cfg));
  return intermediate_lattices(lo, hi, nullptr, budget);
}

Lattice rational_points(const Lattice& N) {
  if (N.ring() != Ring::OF) throw std::invalid_argument("rational_points: O_F lattice expected");
  const FieldConfig& cfg = N.field();
  const int m = N.dim();
  MatF basis = N.basis();

  // x = B(c1 + delta c2) is rational iff B2 c1 + B1 c2 = 0 where B = B1 + delta B2.
  MatF a = MatF::Zero(m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      a(i, j) = FElem(basis(i, j).im(), Rat(0), cfg);
      a(i, m + j) = FElem(basis(i, j).re(), Rat(0), cfg);
    }
  MatF ops = identityF(2 * m, cfg);
  std::vector<int> rows(m);
  for (int i = 0; i < m; ++i) rows[i] = i;
  std::vector<bool> piv = column_echelon(a, rows, &ops);

  MatF gens = MatF::Zero(m, m);
  int k = 0;
  FElem delta = FElem(Rat(0), Rat(1), cfg);
  for (int j = 0; j < 2 * m; ++j) {
    if (piv[j]) continue;
    if (k >= m) throw std::logic_error("rational_points: kernel rank too large");
    for (int i = 0; i < m; ++i) {
      FElem c = ops(i, j) + delta * ops(m + i, j);  // c1 + delta c2 componentwise
      for (int r = 0; r < m; ++r) gens(r, k) += basis(r, i) * c;
    }
    ++k;
  }
  if (k != m) throw std::logic_error("rational_points: kernel rank too small");
  return Lattice::from_basis(gens, Ring::OF0, cfg);
}

Lattice complexify(const Lattice& xi) {
  return Lattice::from_basis(xi.basis(), Ring::OF, xi.field());
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  const int n = a.dim();
  MatF gens(n, 2 * n);
  gens << a.basis(), b.basis();
  return Lattice::from_span(gens, a.ring(), a.field());
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
  // x = B_a c = B_b c': kernel of [B_a | -B_b] over the valuation ring gives
  // the coefficient lattice of the intersection.
  const FieldConfig& cfg = a.field();
  const int n = a.dim();
  MatF m(n, 2 * n);
  m << a.basis(), (-b.basis());
  MatF ops = identityF(2 * n, cfg);
  std::vector<int> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i;
  std::vector<bool> piv = column_echelon(m, rows, &ops);
  MatF gens(n, n);
  int k = 0;
  MatF ba = a.basis();
  for (int j = 0; j < 2 * n; ++j) {
    if (piv[j]) continue;
    if (k >= n) throw std::logic_error("lattice_intersect: kernel too large");
    for (int r = 0; r < n; ++r) {
      FElem s(0);
      for (int i = 0; i < n; ++i) s += ba(r, i) * ops(i, j);
      gens(r, k) = s;
    }
    ++k;
  }
  if (k != n) throw std::logic_error("lattice_intersect: kernel rank deficiency");
  return Lattice::from_basis(gens, a.ring(), cfg);
}

Lattice coordinate_block(const Lattice& N, int k) {
  const int m = N.dim();
  MatF a = N.basis();
  std::vector<int> rows;
  for (int r = m - 1; r >= k; --r) rows.push_back(r);
  std::vector<bool> piv = column_echelon(a, rows, nullptr);
  MatF gens(k, k);
  int c = 0;
  for (int j = 0; j < m; ++j) {
    if (piv[j]) continue;
    if (c >= k) throw std::logic_error("coordinate_block: unexpected rank");
    for (int i = 0; i < k; ++i) gens(i, c) = a(i, j);
    ++c;
  }
  if (c != k) throw std::logic_error("coordinate_block: rank deficiency");
  return Lattice::from_basis(gens, N.ring(), N.field());
}

}  // namespace ht
