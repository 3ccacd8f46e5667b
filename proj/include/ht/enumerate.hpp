#ifndef HT_ENUMERATE_HPP
#define HT_ENUMERATE_HPP

#include "ht/lattice.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ht {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration guard, measured as an exponent bound: a quotient Hi/Lo (or a
/// candidate count) of size larger than p^budget_exponent aborts.
struct EnumBudget {
  int budget_exponent = 24;
};

/// All lattices M with Lo <= M <= Hi satisfying pred, each exactly once.
/// Enumerated through canonical Hermite forms of submodules of the finite
/// quotient Hi/Lo after an elementary-divisor change of basis.
std::vector<Lattice> intermediate_lattices(const Lattice& lo, const Lattice& hi,
                                           const std::function<bool(const Lattice&)>& pred,
                                           const EnumBudget& budget = {});

/// All lattices between pi^B std and pi^{-B} std (the Hermite window with
/// column valuations in [-B, B]).
std::vector<Lattice> window_lattices(int n, Ring ring, const FieldConfig& cfg, int B,
                                     const EnumBudget& budget = {});

/// O_{F0}-lattice N ∩ F0^n of an O_F-lattice N (full rank).
Lattice rational_points(const Lattice& N);

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);

/// O_F-span of an O_{F0}-lattice (same basis matrix, extended ring).
Lattice complexify(const Lattice& xi);

/// Sublattice of N cut out by the first k coordinates, as a k-dimensional
/// lattice: N ∩ (F^k x 0).
Lattice coordinate_block(const Lattice& N, int k);

}  // namespace ht

#endif
