#include "ht/field.hpp"
#include "ht/matrix.hpp"
#include "ht/rational.hpp"
#include "ht/xlaurent.hpp"

#include <doctest.h>

#include <random>

using namespace ht;

TEST_CASE("rational valuation and eta") {
  long p = 3;
  CHECK(Rat(3).val(p) == 1);
  CHECK(Rat(1, 3).val(p) == -1);
  CHECK(Rat(18).val(p) == 2);
  CHECK(Rat(5, 7).val(p) == 0);
  CHECK_THROWS_AS(Rat(0).val(p), std::domain_error);

  CHECK(eta(Rat(3), p) == -1);
  CHECK(eta(Rat(2), p) == 1);
  CHECK(eta(Rat(9), p) == 1);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    Rat x(static_cast<long>(rng() % 200) + 1, static_cast<long>(rng() % 50) + 1);
    Rat y(static_cast<long>(rng() % 200) + 1, static_cast<long>(rng() % 50) + 1);
    CHECK((x * y).val(p) == x.val(p) + y.val(p));
    CHECK(eta(x * y, p) == eta(x, p) * eta(y, p));
  }
}

TEST_CASE("field of p^2 elements inside F") {
  auto cfg = FieldConfig::make(3);
  CHECK(cfg.eps == 2);
  auto cfg5 = FieldConfig::make(5);
  CHECK(cfg5.eps == 2);
  auto cfg7 = FieldConfig::make(7);
  CHECK(cfg7.eps == 3);

  FElem d(Rat(0), Rat(1), cfg);  // delta
  CHECK(d.val() == 0);
  CHECK((d * d) == FElem::from_rat(Rat(cfg.eps), cfg));
  CHECK(d.conj() == -d);

  FElem pi = FElem::from_rat(Rat(3), cfg);
  CHECK(pi.val() == 1);
  CHECK(FElem::from_rat(Rat(1, 3), cfg).val() == -1);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    FElem z(Rat(static_cast<long>(rng() % 40) + 1, static_cast<long>(rng() % 9) + 1),
            Rat(static_cast<long>(rng() % 40), static_cast<long>(rng() % 9) + 1), cfg);
    if (z.is_zero()) continue;
    // conj is an involution, Nm lands in F0 and is multiplicative with val.
    CHECK(z.conj().conj() == z);
    CHECK(z.norm() == (z * z.conj()).re());
    CHECK((z * z.conj()).im().is_zero());
    CHECK(z.norm().val(3) == 2 * z.val());
    CHECK(eta(z.norm(), 3) == 1);
    CHECK((z * z.inverse()) == FElem(1));
  }
}

TEST_CASE("XLaurent ring and s=0 accessors") {
  XLaurent x = XLaurent::X();
  CHECK(x.d_at_zero() == Rat(-1));
  CHECK(XLaurent(Rat(3)).d_at_zero() == Rat(0));
  XLaurent p = XLaurent::X(2) - XLaurent::X(-1);
  CHECK(p.d_at_zero() == Rat(-3));
  CHECK(p.value_at_zero() == Rat(0));

  XLaurent a = XLaurent::monomial(Rat(2), 1) + XLaurent::monomial(Rat(1, 2), -3);
  XLaurent b = XLaurent::monomial(Rat(-1), 2) + XLaurent(Rat(7));
  CHECK((a * b).value_at_zero() == a.value_at_zero() * b.value_at_zero());
  CHECK((a + b) - b == a);
  CHECK(a.subst_power(2).coeff(2) == Rat(2));
  CHECK(a.subst_power(-1).coeff(-1) == Rat(2));

  auto cfg = FieldConfig::make(3);
  FElem pi = FElem::from_rat(Rat(3), cfg);
  CHECK(eta_tilde_s(pi) == XLaurent::monomial(Rat(-1), 1));
  FElem d(Rat(0), Rat(1), cfg);
  CHECK(eta_tilde_s(d) == XLaurent(1));
  CHECK(eta_tilde_s(pi * pi) == XLaurent::X(2));
  // eta-tilde at X=1 is the unramified character
  FElem z(Rat(6), Rat(15), cfg);
  CHECK(eta_tilde_s(z).value_at_zero() == Rat(z.val() % 2 == 0 ? 1 : -1));
}

TEST_CASE("exact determinant, inverse, charpoly") {
  auto cfg = FieldConfig::make(5);
  std::mt19937_64 rng(3);
  auto rnd = [&](int lo, int hi) {
    return static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)) + lo;
  };
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    MatF m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = FElem(Rat(rnd(-4, 4)), Rat(rnd(-2, 2)), cfg);
    FElem d = det_exact<FElem>(m);
    if (d.is_zero()) continue;
    MatF mi = inverse_exact(m);
    CHECK(is_zero_mat((m * mi - identityF(n, cfg)).eval()));
    CHECK(det_exact<FElem>(mi) * d == FElem(1));

    auto cp = charpoly(m);
    // Cayley-Hamilton
    MatF acc = MatF::Zero(n, n);
    MatF pw = identityF(n, cfg);
    for (int k = 0; k <= n; ++k) {
      acc += (pw * cp[k]).eval();
      pw = (pw * m).eval();
    }
    CHECK(is_zero_mat(acc));
    CHECK(cp[0] == (n % 2 == 0 ? d : -d));
  }
}
