#ifndef HT_FINITE_HERMITIAN_HPP
#define HT_FINITE_HERMITIAN_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ht {

/// F_{q^2} = F_p(dbar), dbar^2 = eps, with conjugation x -> x^q realized as
/// a + b dbar -> a - b dbar. Elements are (a, b) with 0 <= a, b < p.
struct FF {
  int a = 0, b = 0;
  bool operator==(const FF& o) const { return a == o.a && b == o.b; }
  bool operator!=(const FF& o) const { return !(*this == o); }
  bool is_zero() const { return a == 0 && b == 0; }
};

class FinField {
public:
  FinField(long p, long eps) : p_(static_cast<int>(p)), eps_(static_cast<int>(eps)) {}
  int p() const { return p_; }
  long q2() const { return static_cast<long>(p_) * p_; }

  FF zero() const { return FF{0, 0}; }
  FF one() const { return FF{1, 0}; }
  FF make(long a, long b) const { return FF{mod(a), mod(b)}; }
  FF add(FF x, FF y) const { return FF{mod(x.a + y.a), mod(x.b + y.b)}; }
  FF sub(FF x, FF y) const { return FF{mod(x.a - y.a), mod(x.b - y.b)}; }
  FF neg(FF x) const { return FF{mod(-x.a), mod(-x.b)}; }
  FF mul(FF x, FF y) const {
    long a = static_cast<long>(x.a) * y.a + static_cast<long>(eps_) * x.b % p_ * y.b;
    long b = static_cast<long>(x.a) * y.b + static_cast<long>(x.b) * y.a;
    return FF{mod(a), mod(b)};
  }
  FF conj(FF x) const { return FF{x.a, mod(-x.b)}; }
  int norm(FF x) const {  // to F_p
    long n = static_cast<long>(x.a) * x.a - static_cast<long>(eps_) * x.b % p_ * x.b;
    return mod(n);
  }
  int trace(FF x) const { return mod(2L * x.a); }
  FF inv(FF x) const;
  long encode(FF x) const { return x.a + static_cast<long>(p_) * x.b; }
  FF decode(long v) const { return FF{static_cast<int>(v % p_), static_cast<int>(v / p_)}; }

  /// All scalars of norm one (the q+1 element kernel of Nm).
  std::vector<FF> norm_one_scalars() const;

private:
  int mod(long v) const {
    int r = static_cast<int>(v % p_);
    return r < 0 ? r + p_ : r;
  }
  int p_, eps_;
};

using FVec = std::vector<FF>;
using FMat = std::vector<FVec>;  // row major

/// Hermitian space over F_{q^2}/F_q with pairing (x, y) = x^T G conj(y).
struct FinHermSpace {
  FinField f;
  int dim;
  FMat gram;

  FF pair(const FVec& x, const FVec& y) const;
  bool is_isotropic(const FVec& x) const { return pair(x, x).is_zero(); }
  static FinHermSpace diagonal(long p, long eps, const std::vector<int>& diag);
  /// Nondegenerate split space of even dimension 2k (hyperbolic planes).
  static FinHermSpace hyperbolic(long p, long eps, int k);
};

long encode_vec(const FinField& f, const FVec& v);
FVec decode_vec(const FinField& f, long code, int dim);
FVec mat_apply(const FinField& f, const FMat& m, const FVec& v);
FMat mat_mul(const FinField& f, const FMat& a, const FMat& b);
FMat mat_identity(const FinField& f, int n);
bool mat_is_unitary(const FinHermSpace& V, const FMat& m);

/// Subspace in canonical reduced row echelon form (rows are basis vectors).
struct FinSubspace {
  FMat rows;
  std::string key(const FinField& f) const;
};

FinSubspace rref(const FinField& f, FMat rows);
FinSubspace subspace_apply(const FinField& f, const FMat& g, const FinSubspace& s);

/// All totally isotropic k-dimensional subspaces, each exactly once.
std::vector<FinSubspace> enumerate_isotropic(const FinHermSpace& V, int k,
                                             long budget = 100000000L);

/// All k-dimensional subspaces (no isotropy condition).
std::vector<FinSubspace> enumerate_subspaces(const FinHermSpace& V, int k,
                                             long budget = 100000000L);

/// Deterministic Schreier-Sims for a matrix group acting on encoded nonzero
/// vectors. Base points may be prescribed (prefix); the chain then exposes
/// generators of pointwise stabilizers of base prefixes.
class MatGroup {
public:
  MatGroup(const FinField& f, int dim, std::vector<FMat> gens,
           const std::vector<FVec>& base_prefix = {});

  unsigned long long order() const { return order_; }
  /// Generators of the pointwise stabilizer of the first k prescribed base
  /// points.
  std::vector<FMat> stabilizer_gens(int k) const;
  const std::vector<FMat>& gens() const { return gens_; }

private:
  void build();
  const FinField f_;
  int dim_;
  std::vector<FMat> gens_;
  std::vector<FVec> base_;
  std::vector<std::vector<FMat>> level_gens_;
  unsigned long long order_ = 1;
};

/// Order of U(V) by the classical formula.
unsigned long long unitary_order_formula(int n, long q);

/// The finite unitary group of V: reflection generators whose closure is
/// certified against the order formula via Schreier-Sims.
struct UnitaryGroup {
  std::vector<FMat> gens;
  unsigned long long order;
};
UnitaryGroup unitary_group(const FinHermSpace& V);

/// Number of orbits of the group generated by `gens` on the given points
/// (acting by subspace_apply).
int orbit_count_subspaces(const FinField& f, const std::vector<FMat>& gens,
                          const std::vector<FinSubspace>& points);

/// Number of type 0 lattices over a fixed type 2 lattice (q+1), and the
/// isotropic-line count in the perp of an anisotropic line (q+1), both
/// computed by finite enumeration.
int count_type0_over_type2(long p, long eps);
int count_isotropic_lines_in_perp(long p, long eps);

/// Index of the mirabolic subgroup in GL_2(F_{q^2}), by orbit enumeration;
/// equals (q^2+1)(q^2-1).
long mirabolic_index(long p, long eps);
/// Brute-force validation of the same index by counting group elements
/// (only sensible for tiny q).
long mirabolic_index_bruteforce(long p, long eps);

}  // namespace ht

#endif
