#include "ht/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ht {

namespace {

// Canonical representative of an integral element modulo pi^k, component-wise
// integers in [0, p^k).
FElem rep_mod(const FElem& x, int k, const FieldConfig& cfg) {
  if (k <= 0) return FElem(0);
  Rat a(mpq_class(x.re().residue(cfg.p, k)));
  Rat b(mpq_class(x.im().residue(cfg.p, k)));
  return FElem(a, b, cfg);
}

FElem pi_pow(int k, const FieldConfig& cfg) { return FElem(p_power(cfg.p, k), Rat(0), cfg); }

}  // namespace

Lattice Lattice::from_basis(const MatF& basis, Ring ring, const FieldConfig& cfg) {
  return from_span(basis, ring, cfg);
}

Lattice Lattice::from_span(const MatF& gens, Ring ring, const FieldConfig& cfg) {
  const int n = static_cast<int>(gens.rows());
  const int m = static_cast<int>(gens.cols());
  if (m < n) throw std::invalid_argument("Lattice: not full rank");

  // Attach the field to bare literals, then scale integral by a global pi power.
  MatF h(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) h(i, j) = FElem(gens(i, j).re(), gens(i, j).im(), cfg);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (!h(i, j).is_zero()) k = std::max(k, -h(i, j).val());
  h = (h * pi_pow(k, cfg)).eval();

  // Lower-triangular column Hermite form over the valuation ring: pivot for
  // row r is the minimal-valuation entry among columns >= r; normalize its
  // unit part away and clear row r to the right. Columns beyond the n pivots
  // end up zero and are dropped.
  std::vector<int> piv_val(n, 0);
  for (int r = 0; r < n; ++r) {
    int best = -1, bestval = 0;
    for (int j = r; j < m; ++j) {
      if (h(r, j).is_zero()) continue;
      int v = h(r, j).val();
      if (best < 0 || v < bestval) {
        best = j;
        bestval = v;
      }
    }
    if (best < 0) throw std::invalid_argument("Lattice: not full rank");
    if (best != r) h.col(best).swap(h.col(r));
    FElem unit = h(r, r) / pi_pow(bestval, cfg);
    h.col(r) *= unit.inverse();
    for (int j = r + 1; j < m; ++j) {
      if (h(r, j).is_zero()) continue;
      FElem f = h(r, j) / h(r, r);
      h.col(j) -= (h.col(r) * f).eval();
    }
    piv_val[r] = bestval;
  }
  MatF sq = h.leftCols(n).eval();

  // Reduce the entries left of each pivot modulo the pivot power; column r
  // is zero above row r, so earlier rows stay reduced.
  for (int r = 1; r < n; ++r) {
    for (int j = 0; j < r; ++j) {
      FElem rep = rep_mod(sq(r, j), piv_val[r], cfg);
      FElem c = (sq(r, j) - rep) / pi_pow(piv_val[r], cfg);
      if (!c.is_zero()) sq.col(j) -= (sq.col(r) * c).eval();
    }
  }

  // Normalize the global denominator.
  if (k > 0) {
    int minv = piv_val[0];
    for (int i = 0; i < n; ++i) {
      minv = std::min(minv, piv_val[i]);
      for (int j = i + 1; j < n; ++j)
        if (!sq(i, j).is_zero()) minv = std::min(minv, sq(i, j).val());
    }
    int drop = std::min(k, minv);
    if (drop > 0) {
      sq *= pi_pow(-drop, cfg);
      k -= drop;
    }
  }

  Lattice L;
  L.ring_ = ring;
  L.cfg_ = cfg;
  L.n_ = n;
  L.denom_ = k;
  L.h_ = sq;
  return L;
}

Lattice Lattice::standard(int n, Ring ring, const FieldConfig& cfg) {
  return from_basis(identityF(n, cfg), ring, cfg);
}

MatF Lattice::basis() const { return (h_ * pi_pow(-denom_, cfg_)).eval(); }

int Lattice::det_val() const {
  int s = -n_ * denom_;
  for (int i = 0; i < n_; ++i) s += h_(i, i).val();
  return s;
}

bool Lattice::contains(const Lattice& other) const {
  MatF t = inverse_exact(basis()) * other.basis();
  return is_integral(t);
}

bool Lattice::operator==(const Lattice& o) const {
  if (ring_ != o.ring_ || n_ != o.n_ || denom_ != o.denom_) return false;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (h_(i, j) != o.h_(i, j)) return false;
  return true;
}

std::string Lattice::key() const {
  std::ostringstream os;
  os << (ring_ == Ring::OF ? "F" : "Q") << denom_ << ";";
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) os << h_(i, j).str() << ",";
  return os.str();
}

Lattice Lattice::transformed(const MatF& g) const {
  return from_basis((g * basis()).eval(), ring_, cfg_);
}

Lattice Lattice::scaled(const FElem& c) const {
  return from_basis((basis() * c).eval(), ring_, cfg_);
}

bool Lattice::stabilized_by(const MatF& g) const {
  MatF b = basis();
  MatF t = inverse_exact(b) * g * b;
  if (!is_integral(t)) return false;
  FElem d = det_exact<FElem>(t);
  return !d.is_zero() && d.val() == 0;
}

std::vector<int> snf_vals(MatF m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> out;
  int top = 0;
  while (top < n) {
    int bi = -1, bj = -1, bv = 0;
    for (int i = top; i < n; ++i)
      for (int j = top; j < n; ++j) {
        if (m(i, j).is_zero()) continue;
        int v = m(i, j).val();
        if (bi < 0 || v < bv) {
          bi = i;
          bj = j;
          bv = v;
        }
      }
    if (bi < 0) throw std::domain_error("snf_vals: singular matrix");
    m.row(bi).swap(m.row(top));
    m.col(bj).swap(m.col(top));
    FElem piv = m(top, top);
    for (int i = top + 1; i < n; ++i) {
      if (m(i, top).is_zero()) continue;
      FElem f = m(i, top) / piv;
      m.row(i) -= (m.row(top) * f).eval();
    }
    for (int j = top + 1; j < n; ++j) {
      if (m(top, j).is_zero()) continue;
      FElem f = m(top, j) / piv;
      m.col(j) -= (m.col(top) * f).eval();
    }
    out.push_back(bv);
    ++top;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Lattice dual(const Lattice& L, const MatF& gram) {
  FElem dg = det_exact<FElem>(gram);
  if (dg.is_zero()) throw std::domain_error("dual: degenerate form");
  MatF gt = (gram * conj(L.basis())).transpose();
  MatF d = inverse_exact(gt);
  return Lattice::from_basis(d, L.ring(), L.field());
}

InvariantProfile invariants(const Lattice& L, const MatF& gram) {
  Lattice Lv = dual(L, gram);
  MatF t = inverse_exact(Lv.basis()) * L.basis();
  return InvariantProfile{snf_vals(std::move(t))};
}

bool is_selfdual(const Lattice& L, const MatF& gram) { return L == dual(L, gram); }

bool is_vertex(const Lattice& L, const MatF& gram) {
  Lattice Lv = dual(L, gram);
  if (!Lv.contains(L)) return false;
  FElem pinv = FElem(Rat(1, L.field().p), Rat(0), L.field());
  return L.scaled(pinv).contains(Lv);
}

std::vector<int> relative_divisors(const Lattice& outer, const Lattice& inner) {
  MatF t = inverse_exact(outer.basis()) * inner.basis();
  return snf_vals(std::move(t));
}

}  // namespace ht
