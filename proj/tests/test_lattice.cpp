#include "ht/enumerate.hpp"
#include "ht/lattice.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ht;

namespace {

FElem fq(long a, long b, const FieldConfig& cfg) { return FElem(Rat(a), Rat(b), cfg); }
FElem pi_pow(int k, const FieldConfig& cfg) { return FElem(p_power(cfg.p, k), Rat(0), cfg); }

MatF random_invertible(int n, std::mt19937_64& rng, const FieldConfig& cfg, int height = 4) {
  for (;;) {
    MatF m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(i, j) = fq(static_cast<long>(rng() % (2 * height + 1)) - height,
                     static_cast<long>(rng() % (2 * height + 1)) - height, cfg);
    if (!det_exact<FElem>(m).is_zero()) return m;
  }
}

MatF random_unimodular(int n, std::mt19937_64& rng, const FieldConfig& cfg) {
  for (;;) {
    MatF m = random_invertible(n, rng, cfg, 3);
    FElem d = det_exact<FElem>(m);
    if (is_integral(m) && d.val() == 0) return m;
  }
}

}  // namespace

TEST_CASE("canonical form: identity, unimodular invariance, scaling") {
  auto cfg = FieldConfig::make(3);
  Lattice std2 = Lattice::standard(2, Ring::OF, cfg);
  CHECK(mats_equal(std2.basis(), identityF(2, cfg)));
  CHECK(std2.det_val() == 0);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 25; ++t) {
    int n = 2 + static_cast<int>(rng() % 2);
    MatF b = random_invertible(n, rng, cfg);
    Lattice L = Lattice::from_basis(b, Ring::OF, cfg);
    MatF u = random_unimodular(n, rng, cfg);
    CHECK(Lattice::from_basis((b * u).eval(), Ring::OF, cfg) == L);
    // canonicalization is idempotent
    CHECK(Lattice::from_basis(L.basis(), Ring::OF, cfg) == L);
    CHECK(L.det_val() == det_exact<FElem>(b).val());
  }

  // pi * identity vs permuted and unit-scaled columns span the same lattice
  MatF a(2, 2), b(2, 2);
  a << fq(3, 0, cfg), fq(0, 0, cfg), fq(0, 0, cfg), fq(3, 0, cfg);
  b << fq(0, 0, cfg), fq(3, 3, cfg), fq(6, 0, cfg), fq(0, 0, cfg);
  CHECK(Lattice::from_basis(a, Ring::OF, cfg) == Lattice::from_basis(b, Ring::OF, cfg));
}

TEST_CASE("dual lattices for explicit forms") {
  auto cfg = FieldConfig::make(3);
  int n = 3;
  Lattice std3 = Lattice::standard(n, Ring::OF, cfg);

  MatF gram = identityF(n, cfg);
  CHECK(dual(std3, gram) == std3);
  CHECK(is_selfdual(std3, gram));

  // Gram diag(1,...,1,pi): dual has basis diag(1,...,1,pi^{-1})
  MatF gram2 = identityF(n, cfg);
  gram2(n - 1, n - 1) = fq(3, 0, cfg);
  Lattice d2 = dual(std3, gram2);
  MatF expect = identityF(n, cfg);
  expect(n - 1, n - 1) = FElem(Rat(1, 3), Rat(0), cfg);
  CHECK(d2 == Lattice::from_basis(expect, Ring::OF, cfg));

  auto profile = invariants(std3, gram2);
  CHECK(profile.a == std::vector<int>{0, 0, 1});
  CHECK(profile.type() == 1);
  CHECK(is_vertex(std3, gram2));
  CHECK(!is_selfdual(std3, gram2));

  MatF gram3 = identityF(2, cfg) * fq(3, 0, cfg);
  Lattice std2 = Lattice::standard(2, Ring::OF, cfg);
  auto prof3 = invariants(std2, gram3);
  CHECK(prof3.a == std::vector<int>{1, 1});
  CHECK(prof3.type() == 2);
  CHECK(prof3.valuation() == 2);
  CHECK(!is_vertex(Lattice::standard(2, Ring::OF, cfg).scaled(fq(3, 0, cfg)), gram3));

  // profile (0,2) is not a vertex lattice
  MatF gram02 = identityF(2, cfg);
  gram02(1, 1) = fq(9, 0, cfg);
  CHECK(invariants(std2, gram02).a == std::vector<int>{0, 2});
  CHECK(!is_vertex(std2, gram02));

  std::mt19937_64 rng(5);
  MatF gram2b = identityF(2, cfg);
  gram2b(1, 1) = fq(3, 0, cfg);
  for (int t = 0; t < 15; ++t) {
    MatF b = random_invertible(2, rng, cfg);
    Lattice L = Lattice::from_basis(b, Ring::OF, cfg);
    // dual is an involution and reverses-negates invariants
    CHECK(dual(dual(L, gram2b), gram2b) == L);
    auto a1 = invariants(L, gram2b).a;
    auto a2 = invariants(dual(L, gram2b), gram2b).a;
    std::vector<int> rev;
    for (auto it = a1.rbegin(); it != a1.rend(); ++it) rev.push_back(-*it);
    CHECK(a2 == rev);
    // scaling law: dual(pi L) = pi^{-1} dual(L)
    CHECK(dual(L.scaled(fq(3, 0, cfg)), gram2b) ==
          dual(L, gram2b).scaled(FElem(Rat(1, 3), Rat(0), cfg)));
  }
}

TEST_CASE("stabilizes") {
  auto cfg = FieldConfig::make(3);
  std::mt19937_64 rng(7);
  Lattice std2 = Lattice::standard(2, Ring::OF, cfg);
  CHECK(std2.stabilized_by(identityF(2, cfg)));
  CHECK(!std2.stabilized_by((identityF(2, cfg) * fq(3, 0, cfg)).eval()));
  for (int t = 0; t < 10; ++t) {
    MatF u = random_unimodular(2, rng, cfg);
    Lattice L = Lattice::from_basis(random_invertible(2, rng, cfg), Ring::OF, cfg);
    CHECK(Lattice::standard(2, Ring::OF, cfg).stabilized_by(u));
    CHECK(L.transformed(u).dim() == 2);
  }
}

TEST_CASE("intermediate lattice enumeration with brute-force oracle") {
  auto cfg = FieldConfig::make(3);
  Lattice L = Lattice::standard(2, Ring::OF, cfg);
  Lattice piL = L.scaled(fq(3, 0, cfg));

  CHECK(intermediate_lattices(L, L, nullptr).size() == 1);

  // pi L <= M <= L over O_F at q = 3: 12 = 2 + (q^2 + 1) lattices
  auto mids = intermediate_lattices(piL, L, nullptr);
  CHECK(mids.size() == 12);

  // self-dual count among them, against a direct scan of the same 12
  MatF gram = identityF(2, cfg);
  auto sd = intermediate_lattices(piL, L, [&](const Lattice& M) { return is_selfdual(M, gram); });
  int direct = 0;
  for (const auto& M : mids)
    if (dual(M, gram) == M) ++direct;
  CHECK(static_cast<int>(sd.size()) == direct);
  CHECK(direct == 1);  // only L itself: pi L <= M = M^dual <= L forces M = L here

  // completeness against an independent dedup-based echelon scan
  std::mt19937_64 rng(13);
  for (int t = 0; t < 6; ++t) {
    MatF u1 = random_unimodular(2, rng, cfg);
    Lattice hi = Lattice::from_basis(u1, Ring::OF, cfg);
    MatF shrink(2, 2);
    shrink << fq(3, 0, cfg), fq(0, 0, cfg), fq(static_cast<long>(rng() % 9), 0, cfg),
        fq(9, 0, cfg);
    Lattice lo = Lattice::from_basis((u1 * shrink).eval(), Ring::OF, cfg);
    auto fast = intermediate_lattices(lo, hi, nullptr);

    std::set<std::string> keys;
    for (long b0 = 0; b0 <= 3; ++b0)
      for (long b1 = 0; b1 <= 3; ++b1)
        for (long xa = 0; xa < 27; ++xa)
          for (long xb = 0; xb < 27; ++xb) {
            MatF s(2, 2);
            s << pi_pow(static_cast<int>(b0), cfg), fq(0, 0, cfg), fq(xa, xb, cfg),
                pi_pow(static_cast<int>(b1), cfg);
            Lattice M = Lattice::from_basis((hi.basis() * s).eval(), Ring::OF, cfg);
            if (hi.contains(M) && M.contains(lo)) keys.insert(M.key());
          }
    std::set<std::string> fk;
    for (const auto& M : fast) fk.insert(M.key());
    CHECK(fk == keys);
  }
}

TEST_CASE("rational points and complexify round trip") {
  auto cfg = FieldConfig::make(3);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    // start from a rational lattice, complexify, cut back
    MatF b(2, 2);
    do {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          b(i, j) = fq(static_cast<long>(rng() % 9) - 4, 0, cfg);
    } while (det_exact<FElem>(b).is_zero());
    Lattice xi = Lattice::from_basis(b, Ring::OF0, cfg);
    Lattice xiF = complexify(xi);
    CHECK(rational_points(xiF) == xi);
  }

  // a non-sigma-stable lattice still has full-rank rational points
  MatF m(2, 2);
  m << fq(1, 1, cfg), fq(0, 0, cfg), fq(0, 0, cfg), fq(1, 0, cfg);
  Lattice N = Lattice::from_basis(m, Ring::OF, cfg);
  Lattice R = rational_points(N);
  CHECK(R.dim() == 2);
  CHECK(N.contains(complexify(R)));
}

TEST_CASE("coordinate block") {
  auto cfg = FieldConfig::make(3);
  MatF m(3, 3);
  m << fq(1, 0, cfg), fq(0, 0, cfg), FElem(Rat(1, 3), Rat(0), cfg), fq(0, 0, cfg), fq(1, 0, cfg),
      fq(0, 1, cfg), fq(0, 0, cfg), fq(0, 0, cfg), fq(1, 0, cfg);
  Lattice N = Lattice::from_basis(m, Ring::OF, cfg);
  Lattice blk = coordinate_block(N, 2);
  CHECK(blk.dim() == 2);
  // N cap (F^2 x 0) contains the standard plane
  CHECK(blk.contains(Lattice::standard(2, Ring::OF, cfg)));
}
