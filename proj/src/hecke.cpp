#include "ht/hecke.hpp"

#include <stdexcept>

namespace ht {

namespace {

FElem pi_pow(int k, const FieldConfig& cfg) { return FElem(p_power(cfg.p, k), Rat(0), cfg); }

}  // namespace

HermPlane HermPlane::make(const FieldConfig& cfg) {
  MatF g = MatF::Zero(2, 2);
  g(0, 0) = FElem(1);
  g(1, 1) = FElem(-1);
  return HermPlane{cfg, g};
}

MatF HermPlane::torus(int a) const {
  // isometry T: Witt model [[0,1],[1,0]] -> diag(1,-1)
  MatF T(2, 2), Tinv(2, 2);
  T << FElem(1), FElem(Rat(1, 2), Rat(0), cfg), FElem(1), FElem(Rat(-1, 2), Rat(0), cfg);
  Tinv = inverse_exact(T);
  MatF d = MatF::Zero(2, 2);
  d(0, 0) = pi_pow(a, cfg);
  d(1, 1) = pi_pow(-a, cfg);
  return (T * d * Tinv).eval();
}

Lattice HermPlane::std_lattice() const { return Lattice::standard(2, Ring::OF, cfg); }

Lattice HermPlane::type2_lattice() const {
  Lattice std2 = std_lattice();
  Lattice lo = std2.scaled(pi_pow(1, cfg));
  auto cands = intermediate_lattices(lo, std2, [&](const Lattice& m) {
    return invariants(m, gram).a == std::vector<int>{1, 1};
  });
  if (cands.empty()) throw std::logic_error("type2_lattice: none found");
  return cands.front();
}

long count_vertex_below(const HermPlane& pl, const Lattice& base, int r,
                        const EnumBudget& budget) {
  Lattice lo = base.scaled(pi_pow(1, pl.cfg));
  auto found = intermediate_lattices(lo, base, [&](const Lattice& m) {
    auto prof = invariants(m, pl.gram);
    return prof.type() == r && is_vertex(m, pl.gram);
  }, budget);
  return static_cast<long>(found.size());
}

namespace {

// lattices with prescribed relative elementary divisors to `base`
std::vector<Lattice> position_orbit(const HermPlane& pl, const Lattice& base,
                                    const std::vector<int>& divisors, bool require_selfdual,
                                    const EnumBudget& budget) {
  int lo_e = divisors.back(), hi_e = divisors.front();
  Lattice lo = base.scaled(pi_pow(lo_e, pl.cfg));
  Lattice hi = base.scaled(pi_pow(hi_e, pl.cfg));
  return intermediate_lattices(lo, hi, [&](const Lattice& m) {
    if (relative_divisors(base, m) != divisors) return false;
    if (require_selfdual && !is_selfdual(m, pl.gram)) return false;
    return true;
  }, budget);
}

}  // namespace

Rat convolve_eval(const HermPlane& pl, const Lattice& lamA, const Lattice& lamB, const MatF& x,
                  const EnumBudget& budget) {
  Lattice xB = lamB.transformed(x);
  std::vector<int> pos = relative_divisors(lamA, xB);
  if (pos != relative_divisors(lamA, lamB)) return Rat(0);  // x outside K_A K_B
  auto profB = invariants(lamB, pl.gram).a;
  long orbit = 0;
  Lattice lo = lamA.scaled(pi_pow(pos.back(), pl.cfg));
  Lattice hi = lamA.scaled(pi_pow(pos.front(), pl.cfg));
  auto all = intermediate_lattices(lo, hi, [&](const Lattice& m) {
    return relative_divisors(lamA, m) == pos && invariants(m, pl.gram).a == profB;
  }, budget);
  orbit = static_cast<long>(all.size());
  if (orbit == 0) throw std::logic_error("convolve_eval: empty position orbit");
  return Rat(1, orbit);
}

HeckeU2 atomic_phi2(const FieldConfig& cfg, const EnumBudget& budget) {
  HermPlane pl = HermPlane::make(cfg);
  Lattice lam0 = pl.std_lattice();
  HeckeU2 out;
  for (int a = 0; a <= 3; ++a) {
    MatF x = pl.torus(a);
    // phi_2(x) = #{type-2 vertex M inside Lambda_0 and x Lambda_0}
    Lattice xl = lam0.transformed(x);
    Lattice lo = lattice_sum(lam0.scaled(pi_pow(1, cfg)), xl.scaled(pi_pow(1, cfg)));
    Lattice hi = lattice_intersect(lam0, xl);
    long cnt = 0;
    if (hi.contains(lo)) {
      auto found = intermediate_lattices(lo, hi, [&](const Lattice& m) {
        return invariants(m, pl.gram).a == std::vector<int>{1, 1};
      }, budget);
      cnt = static_cast<long>(found.size());
    }
    if (cnt != 0) out.coeff[a] = Rat(cnt);
  }
  return out;
}

namespace {

// Horocycle invariant: val of the intersection with the isotropic line F e,
// e = (1, 1) in the diagonal model.
int horocycle_val(const HermPlane& pl, const Lattice& lam) {
  // move e to the first coordinate axis, then cut the block
  MatF T(2, 2);
  T << FElem(1), FElem(Rat(1, 2), Rat(0), pl.cfg), FElem(1), FElem(Rat(-1, 2), Rat(0), pl.cfg);
  Lattice inT = lam.transformed(inverse_exact(T));
  return coordinate_block(inT, 1).det_val();
}

}  // namespace

XLaurent satake_u2_cochar(int a, const FieldConfig& cfg, const EnumBudget& budget) {
  HermPlane pl = HermPlane::make(cfg);
  if (a == 0) return XLaurent(1);
  std::vector<int> pos;
  pos.push_back(-a);
  pos.push_back(a);
  auto lats = position_orbit(pl, pl.std_lattice(), pos, true, budget);
  XLaurent sum;
  for (const Lattice& lam : lats) {
    int d = horocycle_val(pl, lam);
    sum += XLaurent::monomial(p_power(cfg.p, -d), d);
  }
  return sum;
}

XLaurent satake_u2(const HeckeU2& f, const FieldConfig& cfg, const EnumBudget& budget) {
  XLaurent out;
  for (auto& [a, c] : f.coeff) out += XLaurent(c) * satake_u2_cochar(a, cfg, budget);
  return out;
}

XLaurent satake_gl2_cochar(int k1, int k2, const FieldConfig& cfg, const EnumBudget& budget) {
  // lattices at relative position (k1, k2) to the standard lattice; no form
  Lattice std2 = Lattice::standard(2, Ring::OF, cfg);
  std::vector<int> pos{std::min(k1, k2), std::max(k1, k2)};
  Lattice lo = std2.scaled(pi_pow(pos[1], cfg));
  Lattice hi = std2.scaled(pi_pow(pos[0], cfg));
  auto lats = intermediate_lattices(lo, hi, [&](const Lattice& m) {
    return relative_divisors(std2, m) == pos;
  }, budget);
  XLaurent sum;
  for (const Lattice& lam : lats) {
    int d1 = coordinate_block(lam, 1).det_val();
    int d2 = lam.det_val() - d1;
    // X^{d1-d2} q_F^{-(d1-d2)/2}, q_F^{1/2} = q
    sum += XLaurent::monomial(p_power(cfg.p, -(d1 - d2)), d1 - d2);
  }
  return sum;
}

SatakeMismatch bc_mismatch_check(const FieldConfig& cfg) {
  SatakeMismatch out;
  out.gl_side = satake_gl2_cochar(1, 0, cfg);
  out.u_side = satake_u2(atomic_phi2(cfg), cfg);
  out.differ = !(out.gl_side == out.u_side);
  return out;
}

}  // namespace ht
