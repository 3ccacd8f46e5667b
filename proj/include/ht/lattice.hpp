#ifndef HT_LATTICE_HPP
#define HT_LATTICE_HPP

#include "ht/matrix.hpp"

#include <string>
#include <vector>

namespace ht {

enum class Ring { OF, OF0 };

/// Full-rank O_F- or O_{F0}-lattice in F^n (resp. F0^n), kept in a canonical
/// column Hermite form over the valuation ring: basis = pi^{-denom} * H with
/// H integral upper triangular, pivots pi^{a_i}, off-pivot entries reduced
/// modulo the pivot. Two lattices are equal iff their canonical data agree.
class Lattice {
public:
  Lattice() = default;

  static Lattice from_basis(const MatF& basis, Ring ring, const FieldConfig& cfg);
  /// Lattice spanned by the columns of a (possibly rectangular) matrix of
  /// full row rank.
  static Lattice from_span(const MatF& gens, Ring ring, const FieldConfig& cfg);
  static Lattice standard(int n, Ring ring, const FieldConfig& cfg);

  int dim() const { return n_; }
  Ring ring() const { return ring_; }
  const FieldConfig& field() const { return cfg_; }
  /// Canonical basis matrix pi^{-denom} H, columns spanning the lattice.
  MatF basis() const;
  const MatF& numerator() const { return h_; }
  int denom() const { return denom_; }

  /// Valuation of det(basis): the signed colength relative to the standard
  /// lattice, in pi-adic units of the underlying ring.
  int det_val() const;

  bool contains(const Lattice& other) const;
  bool operator==(const Lattice& o) const;
  bool operator!=(const Lattice& o) const { return !(*this == o); }
  std::string key() const;

  Lattice transformed(const MatF& g) const;
  Lattice scaled(const FElem& c) const;

  /// gL = L, decided through B^{-1} g B.
  bool stabilized_by(const MatF& g) const;

private:
  Ring ring_ = Ring::OF;
  FieldConfig cfg_{};
  int n_ = 0;
  int denom_ = 0;
  MatF h_;
};

struct InvariantProfile {
  std::vector<int> a;  // nondecreasing
  int type() const {
    int t = 0;
    for (int x : a) t += (x != 0);
    return t;
  }
  int valuation() const {
    int s = 0;
    for (int x : a) s += x;
    return s;
  }
  bool operator==(const InvariantProfile& o) const { return a == o.a; }
};

/// Dual lattice of an O_F-lattice with respect to a nondegenerate sigma-
/// hermitian Gram matrix, for the pairing (x, y) = x^T G conj(y).
Lattice dual(const Lattice& L, const MatF& gram);

/// Fundamental invariants (a_1 <= ... <= a_n) with L^dual / L = + O/pi^{a_i}.
InvariantProfile invariants(const Lattice& L, const MatF& gram);

bool is_selfdual(const Lattice& L, const MatF& gram);
bool is_vertex(const Lattice& L, const MatF& gram);

/// Elementary-divisor exponents of `inner` relative to `outer`
/// (inner = outer * U diag(pi^{c_i}) V). Requires same ring/ambient.
std::vector<int> relative_divisors(const Lattice& outer, const Lattice& inner);

/// Smith-normal-form valuation exponents of a nonsingular matrix over the
/// valuation ring's fraction field, ascending.
std::vector<int> snf_vals(MatF m);

}  // namespace ht

#endif
