#ifndef HT_HECKE_HPP
#define HT_HECKE_HPP

#include "ht/enumerate.hpp"
#include "ht/lattice.hpp"
#include "ht/xlaurent.hpp"

#include <map>

namespace ht {

/// The split hermitian plane used for the rank-2 Hecke computations, in the
/// diagonal model diag(1, -1); Witt vectors e = (1,1), f = (1/2, -1/2).
struct HermPlane {
  FieldConfig cfg;
  MatF gram;
  static HermPlane make(const FieldConfig& cfg);
  /// torus element T diag(pi^a, pi^{-a}) T^{-1} in the diagonal model
  MatF torus(int a) const;
  Lattice std_lattice() const;
  /// a fixed type-2 vertex sublattice of the standard self-dual lattice
  Lattice type2_lattice() const;
};

/// Element of the spherical Hecke algebra of split U_2 at hyperspecial level:
/// sum of coeff[a] * 1_{K pi^{(a,-a)} K}.
struct HeckeU2 {
  std::map<int, Rat> coeff;
  bool operator==(const HeckeU2& o) const { return coeff == o.coeff; }
};

/// Number of vertex lattices of type r below (type 0 above, if r < 0) the
/// given base lattice, by sandwich enumeration.
long count_vertex_below(const HermPlane& pl, const Lattice& base, int r,
                        const EnumBudget& budget = {});

/// (1_{K_A} * 1_{K_B})(x) with vol(K_A) = 1, for stabilizer levels of the
/// given vertex lattices; zero off K_A K_B.
Rat convolve_eval(const HermPlane& pl, const Lattice& lamA, const Lattice& lamB, const MatF& x,
                  const EnumBudget& budget = {});

/// The atomic function vol(K^{[2]})^{-1} 1_{K K^{[2]}} * 1_{K^{[2]} K} of the
/// n = 2 hyperspecial pair, expanded in double cosets by lattice counting.
HeckeU2 atomic_phi2(const FieldConfig& cfg, const EnumBudget& budget = {});

/// Satake transforms normalized by Sat(1_K) = 1, through horocycle
/// coordinates of coset lattices; X is the rank-1 torus parameter.
XLaurent satake_u2(const HeckeU2& f, const FieldConfig& cfg, const EnumBudget& budget = {});
XLaurent satake_u2_cochar(int a, const FieldConfig& cfg, const EnumBudget& budget = {});
/// Sat(1_{K' pi^{(k1,k2)} K'}) for GL_2 over F (half-power q_F^{1/2} = q).
XLaurent satake_gl2_cochar(int k1, int k2, const FieldConfig& cfg,
                           const EnumBudget& budget = {});

struct SatakeMismatch {
  XLaurent gl_side;   // Sat of 1_{K' pi^{(1,0)} K'}
  XLaurent u_side;    // Sat of phi_2
  bool differ = false;
};
/// The base-change comparison of the two quoted transforms.
SatakeMismatch bc_mismatch_check(const FieldConfig& cfg);

}  // namespace ht

#endif
