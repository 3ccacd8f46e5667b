#ifndef HT_ORBITAL_HPP
#define HT_ORBITAL_HPP

#include "ht/enumerate.hpp"
#include "ht/orbits.hpp"
#include "ht/xlaurent.hpp"

#include <vector>

namespace ht {

/// Indicator atoms on the symmetric space S_{n+1}(F0). Translate atoms are
/// t * 1_{S(O)} with (t * f)(x) = f(t^{-1} x t); the two named translates
/// carry fast paths, a general rational t is averaged over deep residue
/// classes.
struct AtomS {
  enum class Kind { IndS, TransU, TransUPrime, TransGeneral, IndKSpi };
  Kind kind = Kind::IndS;
  MatF t;  // TransGeneral only
};

struct TestFunctionS {
  std::vector<std::pair<XLaurent, AtomS>> terms;
  TestFunctionS& add(const XLaurent& c, AtomS::Kind k) {
    terms.push_back({c, AtomS{k, MatF()}});
    return *this;
  }
};

struct OrbitalValue {
  XLaurent poly;
  Rat at_zero() const { return poly.value_at_zero(); }
  Rat d_at_zero() const { return poly.d_at_zero(); }
};

struct OrbOptions {
  int max_window = 9;
  EnumBudget budget{};
};

/// omega_{S,s}(gamma) = eta~_{-s}(Delta+(gamma)) = (-1)^v X^{-v}.
XLaurent transfer_factor_S(const MatF& gamma);
/// Literal semi-Lie transfer factor eta~_{-s}(Delta+(gamma, e)).
XLaurent transfer_factor_semilie(const MatF& gamma, const VecF& e);
/// omega_{G',s} for a pair (gamma_n, gamma_{n+1}), gamma_n block-embedded.
XLaurent transfer_factor_Gprime(const MatF& gamma_n, const MatF& gamma_n1);

/// Weighted orbital integral on S_{n+1} as a Laurent polynomial in X = q^{-s},
/// computed over Hermite windows grown until two consecutive sums agree.
OrbitalValue orb_S(const MatF& gamma, const TestFunctionS& f, int n, const FieldConfig& cfg,
                   const OrbOptions& opts = {});

/// Semi-Lie orbital integral of 1_{K' x Lambda'} at (gamma, (e, e*)); exact
/// sandwich enumeration. The transfer factor follows the convention matching
/// the reduction to S_{n+1}: literal factor times (-1)^{n+1} X^{n+1}.
OrbitalValue orb_semilie(const MatF& gamma, const VecF& e, const RowF& estar, int n,
                         const FieldConfig& cfg, const OrbOptions& opts = {});
/// Windowed brute-force oracle for the same integral.
OrbitalValue orb_semilie_window(const MatF& gamma, const VecF& e, const RowF& estar, int n,
                                const FieldConfig& cfg, int B, const OrbOptions& opts = {});

/// Unitary orbital integral of 1_{K} at g: the number of self-dual g-stable
/// lattices containing the special vector (vol normalizations of the text).
Rat orb_U(const MatF& g, const SpecialSetup& setup, const OrbOptions& opts = {});
Rat orb_U_semilie(const MatF& g, const VecF& v, const SpecialSetup& setup,
                  const OrbOptions& opts = {});
/// Windowed oracle counting the same lattices.
Rat orb_U_window(const MatF& g, const VecF& v, const SpecialSetup& setup, int B,
                 const OrbOptions& opts = {});
/// Unitary side of the type-(0,1) comparison at n = 1: indicator of the
/// almost-self-dual level.
Rat orb_U_type01(const MatF& g, const SpecialSetup& setup);

/// The explicit functions transferring the almost-self-dual level: for odd r
/// phi'_s = (q^{2(n+1)}-1) u*1_{S(O)} + ((-1)^{n+1} X^{n+1} + 1) 1_{S(O)},
/// for even r the unit; the correction term is (n+1) 1_{S(O)} log q for even n.
struct PhiPrime {
  TestFunctionS phi_s;
  TestFunctionS phi_zero;
  Rat corr_coeff;  // coefficient of 1_{S(O)} log q
};
PhiPrime phi_prime_r(int n, int r, const FieldConfig& cfg);

/// Atoms on G' = GL_n(F) x GL_{n+1}(F) with a known reduction to S_{n+1}.
enum class GprimeAtom {
  UnitCross,  // 1_{K'_n x K'dagger_{n+1}} = 1_{G'(O)}
  TildeCross  // 1_{K~'[1]_n x K'_{n+1}}
};
using GprimeFunction = std::vector<std::pair<Rat, GprimeAtom>>;

/// The index c'_1 = [K'_n : K~'^[1]_n] at n = 1, by residue enumeration.
Rat c_prime1_index_n1(const FieldConfig& cfg);
/// The fixed self-dual lattice Lambda_0 used for the odd-level G'-groups at
/// n = 1 (coordinates of the split space with a norm-pi special vector).
Lattice lambda0_n1(const FieldConfig& cfg);

TestFunctionS natural_sharp(GprimeAtom atom, int n, const FieldConfig& cfg);

/// Orb(gamma, phi', s) computed through the reduction
/// Orb(gamma, phi', s) = Orb(r(gamma), phi'_natural, 2s).
OrbitalValue orb_Gprime_reduced(const MatF& gamma_n, const MatF& gamma_n1,
                                const GprimeFunction& f, int n, const FieldConfig& cfg,
                                const OrbOptions& opts = {});
/// Direct double-coset integration at n = 1 (independent cross-check).
OrbitalValue orb_Gprime_direct_n1(const FElem& gamma1, const MatF& gamma2, GprimeAtom atom,
                                  const FieldConfig& cfg, const OrbOptions& opts = {});

}  // namespace ht

#endif
