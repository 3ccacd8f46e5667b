#include "ht/finite_hermitian.hpp"

#include <doctest.h>

using namespace ht;

namespace {
long nonres(long p) { return p == 7 ? 3 : 2; }
}

TEST_CASE("finite field arithmetic") {
  FinField f(3, 2);
  CHECK(f.q2() == 9);
  for (long v = 1; v < 9; ++v) {
    FF x = f.decode(v);
    CHECK(f.mul(x, f.inv(x)) == f.one());
    CHECK(f.conj(f.conj(x)) == x);
    FF xxbar = f.mul(x, f.conj(x));
    CHECK(xxbar.b == 0);
    CHECK(f.norm(x) == xxbar.a);
  }
  CHECK(static_cast<int>(f.norm_one_scalars().size()) == 4);  // q + 1
  FinField f5(5, 2);
  CHECK(static_cast<int>(f5.norm_one_scalars().size()) == 6);
}

TEST_CASE("isotropic subspace counts") {
  // nondegenerate dim-2 space: q+1 isotropic lines
  for (long p : {3L, 5L, 7L}) {
    FinHermSpace V = FinHermSpace::diagonal(p, nonres(p), {1, 1});
    CHECK(static_cast<long>(enumerate_isotropic(V, 1).size()) == p + 1);
  }
  // k = 0 gives the zero subspace only
  FinHermSpace V3 = FinHermSpace::diagonal(3, 2, {1, 1});
  CHECK(enumerate_isotropic(V3, 0).size() == 1);
  // anisotropic line has no isotropic vectors
  FinHermSpace V1 = FinHermSpace::diagonal(3, 2, {1});
  CHECK(enumerate_isotropic(V1, 1).empty());
  // hyperbolic model agrees
  FinHermSpace H = FinHermSpace::hyperbolic(3, 2, 1);
  CHECK(enumerate_isotropic(H, 1).size() == 4);
}

TEST_CASE("unitary group orders") {
  // dim 1: norm-one scalars, order q+1, against brute force
  for (long p : {3L, 5L}) {
    FinHermSpace V = FinHermSpace::diagonal(p, nonres(p), {1});
    UnitaryGroup U = unitary_group(V);
    CHECK(U.order == static_cast<unsigned long long>(p + 1));
    long direct = 0;
    FinField f(p, nonres(p));
    for (long v = 1; v < f.q2(); ++v)
      if (f.norm(f.decode(v)) == 1) ++direct;
    CHECK(U.order == static_cast<unsigned long long>(direct));
  }

  {  // dim 2, q = 3: exhaustive matrix enumeration oracle
    FinHermSpace V = FinHermSpace::diagonal(3, 2, {1, 1});
    UnitaryGroup U = unitary_group(V);
    FinField f(3, 2);
    long direct = 0;
    for (long a = 0; a < 9; ++a)
      for (long b = 0; b < 9; ++b)
        for (long c = 0; c < 9; ++c)
          for (long d = 0; d < 9; ++d) {
            FMat m = {{f.decode(a), f.decode(b)}, {f.decode(c), f.decode(d)}};
            if (mat_is_unitary(V, m)) ++direct;
          }
    CHECK(U.order == static_cast<unsigned long long>(direct));
    CHECK(U.order == unitary_order_formula(2, 3));
    for (const auto& g : U.gens) CHECK(mat_is_unitary(V, g));
  }

  {  // dim 3, q = 3: formula vs Schreier-Sims closure
    FinHermSpace V = FinHermSpace::diagonal(3, 2, {1, 1, 1});
    UnitaryGroup U = unitary_group(V);
    CHECK(U.order == unitary_order_formula(3, 3));
  }
}

TEST_CASE("witt transitivity on isotropic lines") {
  FinHermSpace V = FinHermSpace::diagonal(3, 2, {1, 1});
  UnitaryGroup U = unitary_group(V);
  std::vector<FinSubspace> iso = enumerate_isotropic(V, 1);
  CHECK(orbit_count_subspaces(V.f, U.gens, iso) == 1);
}

TEST_CASE("stabilizer chains expose pointwise stabilizers") {
  FinHermSpace V = FinHermSpace::diagonal(3, 2, {1, 1, 1});
  UnitaryGroup U = unitary_group(V);
  FVec u0(3, V.f.zero());
  u0[2] = V.f.one();
  MatGroup chain(V.f, 3, U.gens, {u0});
  CHECK(chain.order() == U.order);
  auto stab = chain.stabilizer_gens(1);
  for (const auto& g : stab) {
    CHECK(mat_apply(V.f, g, u0) == u0);
    CHECK(mat_is_unitary(V, g));
  }
  // the stabilizer of an anisotropic vector is the unitary group of the perp
  MatGroup sub(V.f, 3, stab);
  CHECK(sub.order() == unitary_order_formula(2, 3));
}

TEST_CASE("finite counts quoted in the text") {
  for (long p : {3L, 5L, 7L}) {
    CHECK(count_type0_over_type2(p, nonres(p)) == p + 1);
    CHECK(count_isotropic_lines_in_perp(p, nonres(p)) == p + 1);
    CHECK(mirabolic_index(p, nonres(p)) == (p * p + 1) * (p * p - 1));
  }
  CHECK(mirabolic_index_bruteforce(3, 2) == 80);
  CHECK(mirabolic_index_bruteforce(5, 2) == 624);
}
