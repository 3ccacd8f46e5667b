#ifndef HT_ORBITS_HPP
#define HT_ORBITS_HPP

#include "ht/lattice.hpp"
#include "ht/matrix.hpp"
#include "ht/xlaurent.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace ht {

enum class Side { Split, Nonsplit };

/// Nondegenerate sigma-hermitian space with pairing (x, y) = x^T G conj(y).
struct HermSpace {
  FieldConfig cfg;
  int dim = 0;
  MatF gram;

  FElem pair(const VecF& x, const VecF& y) const;
  /// Split iff val(det gram) is even (every unit is a norm here).
  bool is_split() const;
};

/// The rank-n comparison setup: W of dimension n+1 with a special vector
/// u = e_{n+1} of norm pi^eps, and W_flat its orthogonal complement spanned
/// by e_1..e_n. Standard Gram matrices are diagonal; the nonsplit space
/// multiplies the (n,n) entry by an extra pi.
struct SpecialSetup {
  HermSpace W;
  int n = 0;
  int eps = 0;

  VecF u() const;
  MatF flat_gram() const;
  HermSpace flat_space() const;
  /// The fixed vertex lattice giving the compact level: for the self-dual
  /// count this is a self-dual lattice containing u.
  Lattice level_lattice() const;
};

SpecialSetup make_setup(const FieldConfig& cfg, int n, Side side, int eps);

/// gamma gamma-bar = 1 check for membership in the symmetric space.
bool in_symmetric_space(const MatF& gamma);

/// r(gamma') = gamma' conj(gamma')^{-1}.
MatF r_map(const MatF& gamma_prime);

FElem delta_plus(const MatF& gamma);
FElem delta_plus_vec(const MatF& gamma, const VecF& e);

bool is_rss_S(const MatF& gamma);
bool is_rss_semilie(const MatF& gamma, const VecF& e, const RowF& estar);
bool is_rss_U(const MatF& g, const SpecialSetup& setup);

struct MatchingInvariants {
  std::vector<FElem> charpoly;
  std::vector<FElem> pairing;  // indices 0..n
  bool operator==(const MatchingInvariants& o) const {
    return charpoly == o.charpoly && pairing == o.pairing;
  }
};

MatchingInvariants invariants_S(const MatF& gamma);
MatchingInvariants invariants_U(const MatF& g, const SpecialSetup& setup);

/// Isomorphism class of the hermitian space carrying the unitary orbit
/// matching gamma, read off from the Gram matrix of the cyclic vectors.
Side matching_side(const MatF& gamma, int eps);

/// Deterministic seeded sampling. Sub-streams are derived by mixing the seed
/// with tags, so parallel consumers see disjoint streams.
class Sampler {
public:
  Sampler(uint64_t seed, const FieldConfig& cfg, int height_bound = 2)
      : rng_(seed), cfg_(cfg), height_(height_bound) {}

  static uint64_t derive(uint64_t seed, const std::string& tag, uint64_t index);

  Rat rat(int maxnum, int maxval = 0);
  FElem felem(int height);
  MatF matrixF(int n, int height);
  /// random element of GL_n(F0) (rational entries), invertible
  MatF gl_rational(int n, int height);
  /// random unimodular element of GL_n(O_{F0})
  MatF gl_unimodular_rational(int n);

  /// rss element of S_{n+1}(F0), with val(Delta+) bounded when possible.
  MatF sample_S(int n, int val_cap = 6, int tries = 4000);
  /// rss semi-Lie pair (gamma, w0) at rank n.
  MatF sample_S_semilie(int n, const VecF& e, const RowF& estar, int val_cap = 6,
                        int tries = 4000);
  /// rss unitary element via the Cayley transform.
  MatF sample_U(const SpecialSetup& setup, int tries = 4000);
  /// matching pair (gamma, g) at n = 1, by the closed-form construction.
  std::pair<MatF, MatF> sample_pair_n1(const SpecialSetup& setup, int tries = 4000);

  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
  FieldConfig cfg_;
  int height_;
};

/// gamma in S_2(F0) with the invariants of g (n = 1 closed form).
MatF match_gamma_n1(const MatF& g, const SpecialSetup& setup);

}  // namespace ht

#endif
