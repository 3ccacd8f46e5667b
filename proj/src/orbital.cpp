#include "ht/orbital.hpp"

#include <stdexcept>

namespace ht {

namespace {

FElem pi_pow(int k, const FieldConfig& cfg) { return FElem(p_power(cfg.p, k), Rat(0), cfg); }

XLaurent eta_tilde_minus_s(const FElem& z) { return eta_tilde_s(z).subst_power(-1); }

VecF last_vector(int m, const FieldConfig& cfg) {
  VecF e = VecF::Zero(m);
  for (int i = 0; i < m; ++i) e(i) = FElem(0);
  e(m - 1) = FElem::from_rat(Rat(1), cfg);
  return e;
}

RowF last_covector_row(int m, const FieldConfig& cfg) {
  RowF r = RowF::Zero(m);
  for (int i = 0; i < m; ++i) r(i) = FElem(0);
  r(m - 1) = FElem::from_rat(Rat(1), cfg);
  return r;
}

// Cyclic lattice span_{O_F}{gamma^i e}.
Lattice cyclic_lattice(const MatF& gamma, const VecF& e, const FieldConfig& cfg) {
  const int m = static_cast<int>(gamma.rows());
  MatF cols(m, m);
  VecF v = e;
  for (int i = 0; i < m; ++i) {
    cols.col(i) = v;
    v = (gamma * v).eval();
  }
  return Lattice::from_basis(cols, Ring::OF, cfg);
}

// {x : e* gamma^i x integral for all i} as an O_F-lattice.
Lattice row_dual_lattice(const MatF& gamma, const RowF& estar, const FieldConfig& cfg) {
  const int m = static_cast<int>(gamma.rows());
  MatF rows(m, m);
  RowF r = estar;
  for (int i = 0; i < m; ++i) {
    rows.row(i) = r;
    r = (r * gamma).eval();
  }
  return Lattice::from_basis(inverse_exact(rows), Ring::OF, cfg);
}

struct GammaBlocks {
  MatF A;   // n x n
  VecF y;   // n
  RowF z;   // 1 x n
  FElem d;
};

GammaBlocks split_blocks(const MatF& gamma, int n) {
  GammaBlocks b;
  b.A = gamma.topLeftCorner(n, n).eval();
  b.y = gamma.topRightCorner(n, 1).eval();
  b.z = gamma.bottomLeftCorner(1, n).eval();
  b.d = gamma(n, n);
  return b;
}

// gamma stabilizes the lattice with basis [[B, c],[0, 1]]; pass c = 0 for the
// product lattice Xi_F + O e.
bool stab_with_column(const GammaBlocks& g, const MatF& B, const MatF& Binv, const VecF& c,
                      bool has_c) {
  RowF zB = (g.z * B).eval();
  if (!is_integral(zB)) return false;
  FElem corner = g.d;
  if (has_c) corner += (g.z * c)(0, 0);
  if (!corner.is_integral()) return false;
  MatF t11 = (g.A * B).eval();
  if (has_c) t11 -= (c * zB).eval();
  t11 = (Binv * t11).eval();
  if (!is_integral(t11)) return false;
  VecF t12 = g.y;
  if (has_c) {
    t12 += (g.A * c).eval();
    t12 -= (c * corner).eval();
  }
  t12 = (Binv * t12).eval();
  return is_integral(t12);
}

// measure of {k in GL_n(O) : membership of the atom at coset basis B k}
Rat atom_measure(const AtomS& atom, const GammaBlocks& g, const Lattice& xi,
                 const FieldConfig& cfg, int n) {
  MatF B = xi.basis();
  MatF Binv = inverse_exact(B);
  VecF zero = VecF::Zero(n);
  for (int i = 0; i < n; ++i) zero(i) = FElem(0);

  switch (atom.kind) {
    case AtomS::Kind::IndS:
      return stab_with_column(g, B, Binv, zero, false) ? Rat(1) : Rat(0);
    case AtomS::Kind::IndKSpi: {
      if (!stab_with_column(g, B, Binv, zero, false)) return Rat(0);
      // second lattice Xi_F + pi O e
      RowF zB = (g.z * B).eval();
      VecF py = (g.y * pi_pow(1, cfg)).eval();
      if (!is_integral((Binv * py).eval())) return Rat(0);
      RowF zBp = (zB * pi_pow(-1, cfg)).eval();
      return is_integral(zBp) ? Rat(1) : Rat(0);
    }
    case AtomS::Kind::TransU:
    case AtomS::Kind::TransUPrime: {
      MatF Bt = B, Btinv = Binv;
      if (atom.kind == AtomS::Kind::TransUPrime) {
        Bt = (B * pi_pow(1, cfg)).eval();
        Btinv = (Binv * pi_pow(-1, cfg)).eval();
      }
      long cnt = 0, total = 0;
      std::vector<int> w(n, 0);
      for (;;) {
        int i = 0;
        while (i < n && ++w[i] == cfg.p) w[i++] = 0;
        if (i == n) break;
        ++total;
        VecF wt = zero;
        for (int r = 0; r < n; ++r) {
          FElem s(0);
          for (int j = 0; j < n; ++j)
            if (w[j] != 0) s += Bt(r, j) * FElem(w[j]);
          wt(r) = s;
        }
        VecF c = (wt * pi_pow(-1, cfg)).eval();
        if (stab_with_column(g, Bt, Btinv, c, true)) ++cnt;
      }
      return Rat(cnt) / Rat(total);
    }
    case AtomS::Kind::TransGeneral: {
      // average over GL_n(O / pi^m) classes, m from the valuation spread of t
      int spread = 0;
      for (int i = 0; i < n + 1; ++i)
        for (int j = 0; j < n + 1; ++j)
          if (!atom.t(i, j).is_zero()) spread = std::max(spread, -atom.t(i, j).val());
      MatF tinv = inverse_exact(atom.t);
      for (int i = 0; i < n + 1; ++i)
        for (int j = 0; j < n + 1; ++j)
          if (!tinv(i, j).is_zero()) spread += std::max(0, -tinv(i, j).val());
      int m = std::max(1, spread);
      long pm = 1;
      for (int i = 0; i < m; ++i) pm *= cfg.p;
      long cnt = 0, total = 0;
      std::vector<long> entries(n * n, 0);
      std::function<void(int)> rec = [&](int idx) {
        if (idx == n * n) {
          MatF k(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) k(i, j) = FElem(Rat(entries[i * n + j]), Rat(0), cfg);
          FElem dk = det_exact<FElem>(k);
          if (dk.is_zero() || dk.val() != 0) return;
          ++total;
          MatF P = MatF::Zero(n + 1, n + 1);
          P.topLeftCorner(n, n) = (B * k).eval();
          P(n, n) = FElem(1);
          P = (P * atom.t).eval();
          MatF gamma(n + 1, n + 1);
          gamma.topLeftCorner(n, n) = g.A;
          gamma.topRightCorner(n, 1) = g.y;
          gamma.bottomLeftCorner(1, n) = g.z;
          gamma(n, n) = g.d;
          MatF T = (inverse_exact(P) * gamma * P).eval();
          if (is_integral(T)) ++cnt;
          return;
        }
        for (long v = 0; v < pm; ++v) {
          entries[idx] = v;
          rec(idx + 1);
        }
      };
      rec(0);
      if (total == 0) throw std::logic_error("TransGeneral: empty class set");
      return Rat(cnt) / Rat(total);
    }
  }
  return Rat(0);
}

}  // namespace

XLaurent transfer_factor_S(const MatF& gamma) {
  FElem d = delta_plus(gamma);
  if (d.is_zero()) throw std::domain_error("transfer_factor_S: not regular semisimple");
  return eta_tilde_minus_s(d);
}

XLaurent transfer_factor_semilie(const MatF& gamma, const VecF& e) {
  FElem d = delta_plus_vec(gamma, e);
  if (d.is_zero()) throw std::domain_error("transfer_factor_semilie: degenerate pair");
  return eta_tilde_minus_s(d);
}

XLaurent transfer_factor_Gprime(const MatF& gamma_n, const MatF& gamma_n1) {
  const int n = static_cast<int>(gamma_n.rows());
  const int m = n + 1;
  FElem dn = det_exact<FElem>(gamma_n);
  if (dn.is_zero()) throw std::domain_error("transfer_factor_Gprime: singular gamma_n");
  // block embed gamma_n^{-1} gamma_{n+1}
  MatF emb = gamma_n1;
  MatF gninv = inverse_exact(gamma_n);
  MatF top = (gninv * gamma_n1.topRows(n)).eval();
  emb.topRows(n) = top;
  MatF r = r_map(emb);
  FElem det_emb = det_exact<FElem>(emb);
  int sgn = (n * det_emb.val()) % 2 == 0 ? 1 : -1;
  XLaurent w = transfer_factor_S(r).subst_power(2);
  return XLaurent::monomial(Rat(sgn), -2 * dn.val()) * w;
}

OrbitalValue orb_S(const MatF& gamma, const TestFunctionS& f, int n, const FieldConfig& cfg,
                   const OrbOptions& opts) {
  const int m = n + 1;
  if (!is_rss_S(gamma)) throw std::domain_error("orb_S: not regular semisimple");
  GammaBlocks blocks = split_blocks(gamma, n);
  VecF e = last_vector(m, cfg);
  RowF estar = last_covector_row(m, cfg);

  Lattice cyc = cyclic_lattice(gamma, e, cfg);
  Lattice nmax = row_dual_lattice(gamma, estar, cfg);
  Lattice xlo = rational_points(coordinate_block(cyc.scaled(pi_pow(1, cfg)), n));
  Lattice xhi = rational_points(coordinate_block(nmax, n));
  Lattice stdn = Lattice::standard(n, Ring::OF0, cfg);

  // Support bounds: any coset with a nonzero atom measure satisfies
  // xlo <= Xi <= xhi, except that the u'-translate shifts the upper bound by
  // pi^{-1} and a general translate carries no a-priori bound.
  bool prune = true;
  int hi_shift = 0;
  for (const auto& [coeff, atom] : f.terms) {
    if (atom.kind == AtomS::Kind::TransGeneral) prune = false;
    if (atom.kind == AtomS::Kind::TransUPrime) hi_shift = 1;
  }
  if (prune && hi_shift) xhi = xhi.scaled(pi_pow(-hi_shift, cfg));

  XLaurent omega = transfer_factor_S(gamma);
  int B = std::max(1, delta_plus(gamma).val() + 2);

  XLaurent prev;
  bool have_prev = false;
  for (; B <= opts.max_window + 4; B += 2) {
    Lattice lo = stdn.scaled(pi_pow(B, cfg));
    Lattice hi = stdn.scaled(pi_pow(-B, cfg));
    if (prune) {
      lo = lattice_sum(xlo, lo);
      hi = lattice_intersect(xhi, hi);
    }
    XLaurent sum;
    if (hi.contains(lo)) {
      auto mids = intermediate_lattices(lo, hi, nullptr, opts.budget);
      for (const Lattice& xi : mids) {
        int v = xi.det_val();
        XLaurent w = XLaurent::monomial(Rat(v % 2 == 0 ? 1 : -1), v);
        for (const auto& [coeff, atom] : f.terms) {
          Rat meas = atom_measure(atom, blocks, xi, cfg, n);
          if (!meas.is_zero()) sum += coeff * w * XLaurent(meas);
        }
      }
    }
    if (have_prev && sum == prev) return OrbitalValue{omega * sum};
    prev = sum;
    have_prev = true;
  }
  throw std::runtime_error("orb_S: support window not stabilized");
}

namespace {

// shared core for the semi-Lie sum: conditions gamma-stable, e in Xi,
// e* in Xi^*; weight (-X)^{val det}
XLaurent semilie_sum(const MatF& gamma, const VecF& e, const RowF& estar,
                     const std::vector<Lattice>& lattices) {
  XLaurent sum;
  for (const Lattice& xi : lattices) {
    MatF B = xi.basis();
    MatF Binv = inverse_exact(B);
    if (!is_integral((Binv * gamma * B).eval())) continue;
    if (!is_integral((Binv * e).eval())) continue;
    if (!is_integral((estar * B).eval())) continue;
    int v = xi.det_val();
    sum += XLaurent::monomial(Rat(v % 2 == 0 ? 1 : -1), v);
  }
  return sum;
}

XLaurent semilie_omega(const MatF& gamma, const VecF& e, int n) {
  // literal factor normalized by the w0 convention (times (-1)^{n+1} X^{n+1})
  XLaurent lit = transfer_factor_semilie(gamma, e);
  return lit * XLaurent::monomial(Rat((n + 1) % 2 == 0 ? 1 : -1), n + 1);
}

}  // namespace

OrbitalValue orb_semilie(const MatF& gamma, const VecF& e, const RowF& estar, int n,
                         const FieldConfig& cfg, const OrbOptions& opts) {
  if (!is_rss_semilie(gamma, e, estar)) throw std::domain_error("orb_semilie: not rss");
  Lattice cyc = cyclic_lattice(gamma, e, cfg);
  Lattice lo = rational_points(cyc);
  Lattice hi = rational_points(row_dual_lattice(gamma, estar, cfg));
  XLaurent omega = semilie_omega(gamma, e, n);
  if (!hi.contains(lo)) return OrbitalValue{XLaurent()};
  auto mids = intermediate_lattices(lo, hi, nullptr, opts.budget);
  return OrbitalValue{omega * semilie_sum(gamma, e, estar, mids)};
}

OrbitalValue orb_semilie_window(const MatF& gamma, const VecF& e, const RowF& estar, int n,
                                const FieldConfig& cfg, int B, const OrbOptions& opts) {
  if (!is_rss_semilie(gamma, e, estar)) throw std::domain_error("orb_semilie_window: not rss");
  auto lats = window_lattices(n + 1, Ring::OF0, cfg, B, opts.budget);
  XLaurent omega = semilie_omega(gamma, e, n);
  return OrbitalValue{omega * semilie_sum(gamma, e, estar, lats)};
}

namespace {

Rat count_selfdual_stable(const MatF& g, const VecF& v, const SpecialSetup& setup,
                          const std::vector<Lattice>* windowed, const OrbOptions& opts) {
  const FieldConfig& cfg = setup.W.cfg;
  long cnt = 0;
  auto pred = [&](const Lattice& lam) {
    if (!is_selfdual(lam, setup.W.gram)) return false;
    if (!lam.stabilized_by(g)) return false;
    MatF coords = (inverse_exact(lam.basis()) * v).eval();
    return is_integral(coords);
  };
  if (windowed) {
    for (const Lattice& lam : *windowed)
      if (pred(lam)) ++cnt;
    return Rat(cnt);
  }
  Lattice locyc = cyclic_lattice(g, v, cfg);
  Lattice hi = dual(locyc, setup.W.gram);
  if (!hi.contains(locyc)) return Rat(0);
  auto mids = intermediate_lattices(locyc, hi, pred, opts.budget);
  return Rat(static_cast<long>(mids.size()));
}

}  // namespace

Rat orb_U(const MatF& g, const SpecialSetup& setup, const OrbOptions& opts) {
  if (!is_rss_U(g, setup)) throw std::domain_error("orb_U: not regular semisimple");
  return count_selfdual_stable(g, setup.u(), setup, nullptr, opts);
}

Rat orb_U_semilie(const MatF& g, const VecF& v, const SpecialSetup& setup,
                  const OrbOptions& opts) {
  if (delta_plus_vec(g, v).is_zero()) throw std::domain_error("orb_U_semilie: not rss");
  return count_selfdual_stable(g, v, setup, nullptr, opts);
}

Rat orb_U_window(const MatF& g, const VecF& v, const SpecialSetup& setup, int B,
                 const OrbOptions& opts) {
  auto lats = window_lattices(setup.n + 1, Ring::OF, setup.W.cfg, B, opts.budget);
  return count_selfdual_stable(g, v, setup, &lats, opts);
}

Rat orb_U_type01(const MatF& g, const SpecialSetup& setup) {
  const FieldConfig& cfg = setup.W.cfg;
  if (setup.n != 1 || setup.eps != 1 || setup.W.is_split())
    throw std::logic_error("orb_U_type01: expects the nonsplit n=1 eps=1 setup");
  if (!is_rss_U(g, setup)) throw std::domain_error("orb_U_type01: not regular semisimple");
  // Lambda = Lambda_0^flat + O u0 with Lambda_0^flat the self-dual line
  int k = setup.W.gram(0, 0).val() / 2;
  MatF b = identityF(2, cfg);
  b(0, 0) = pi_pow(-k, cfg);
  Lattice lam = Lattice::from_basis(b, Ring::OF, cfg);
  return Rat(lam.stabilized_by(g) ? 1 : 0);
}

PhiPrime phi_prime_r(int n, int r, const FieldConfig& cfg) {
  PhiPrime out;
  if (r % 2 == 0) {
    out.phi_s.add(XLaurent(1), AtomS::Kind::IndS);
    out.phi_zero = out.phi_s;
    out.corr_coeff = Rat(0);
    return out;
  }
  // The translate coefficient is q^n - 1: the measure of the nonintegral part
  // of N(pi^{-1}O)/N(O) in the Iwasawa unfolding. It is pinned by two
  // identities checked in the test suites: the reduction of the semi-Lie
  // integral of 1_{K' x Lambda'} to Orb(gamma, phi'_s, s), and the self-dual
  // lattice count the function transfers to.
  Rat big = p_power(cfg.p, n) - Rat(1);
  XLaurent unit_coeff_s =
      XLaurent::monomial(Rat((n + 1) % 2 == 0 ? 1 : -1), n + 1) + XLaurent(1);
  out.phi_s.add(XLaurent(big), AtomS::Kind::TransU);
  out.phi_s.add(unit_coeff_s, AtomS::Kind::IndS);
  out.phi_zero.add(XLaurent(big), AtomS::Kind::TransU);
  out.phi_zero.add(XLaurent(Rat(((n + 1) % 2 == 0 ? 1 : -1) + 1)), AtomS::Kind::IndS);
  out.corr_coeff = (n % 2 == 0) ? Rat(n + 1) : Rat(0);
  return out;
}

Lattice lambda0_n1(const FieldConfig& cfg) {
  SpecialSetup s = make_setup(cfg, 1, Side::Split, 1);
  return s.level_lattice();
}

Rat c_prime1_index_n1(const FieldConfig& cfg) {
  Lattice lam0 = lambda0_n1(cfg);
  long stab = 0, total = 0;
  for (long a = 0; a < cfg.p; ++a)
    for (long b = 0; b < cfg.p; ++b) {
      if (a == 0 && b == 0) continue;
      ++total;
      MatF t = identityF(2, cfg);
      t(0, 0) = FElem(Rat(a), Rat(b), cfg);
      if (lam0.stabilized_by(t)) ++stab;
    }
  if (total % stab != 0) throw std::logic_error("c_prime1_index_n1: index not integral");
  return Rat(total / stab);
}

TestFunctionS natural_sharp(GprimeAtom atom, int n, const FieldConfig& cfg) {
  TestFunctionS f;
  switch (atom) {
    case GprimeAtom::UnitCross:
      f.add(XLaurent(1), AtomS::Kind::IndS);
      return f;
    case GprimeAtom::TildeCross: {
      if (n != 1) throw std::logic_error("natural_sharp: TildeCross only set up at n = 1");
      Rat c = c_prime1_index_n1(cfg);
      Rat sgn = (n % 2 == 0) ? Rat(1) : Rat(-1);
      f.add(XLaurent(sgn / c), AtomS::Kind::TransUPrime);
      return f;
    }
  }
  throw std::logic_error("natural_sharp: unsupported atom");
}

OrbitalValue orb_Gprime_reduced(const MatF& gamma_n, const MatF& gamma_n1,
                                const GprimeFunction& f, int n, const FieldConfig& cfg,
                                const OrbOptions& opts) {
  MatF emb = gamma_n1;
  MatF top = (inverse_exact(gamma_n) * gamma_n1.topRows(n)).eval();
  emb.topRows(n) = top;
  MatF delta = r_map(emb);
  XLaurent total;
  for (const auto& [coeff, atom] : f) {
    OrbitalValue part = orb_S(delta, natural_sharp(atom, n, cfg), n, cfg, opts);
    total += XLaurent(coeff) * part.poly.subst_power(2);
  }
  return OrbitalValue{total};
}

OrbitalValue orb_Gprime_direct_n1(const FElem& gamma1, const MatF& gamma2, GprimeAtom atom,
                                  const FieldConfig& cfg, const OrbOptions& opts) {
  MatF g1(1, 1);
  g1(0, 0) = gamma1;
  XLaurent omega = transfer_factor_Gprime(g1, gamma2);

  Lattice target = (atom == GprimeAtom::UnitCross) ? Lattice::standard(2, Ring::OF, cfg)
                                                   : lambda0_n1(cfg);
  int vg1 = gamma1.val();
  bool tilde_ok = true;
  if (atom == GprimeAtom::TildeCross) {
    MatF t = identityF(2, cfg);
    t(0, 0) = gamma1 * pi_pow(-vg1, cfg);
    tilde_ok = lambda0_n1(cfg).stabilized_by(t);
  }

  int dv_target = target.det_val();
  XLaurent prev;
  bool have_prev = false;
  for (int B = 2; B <= opts.max_window + 6; B += 2) {
    XLaurent sum;
    if (tilde_ok) {
      auto lats = window_lattices(2, Ring::OF0, cfg, B, opts.budget);
      for (const Lattice& xi : lats) {
        Lattice img = complexify(xi).transformed(gamma2);
        int dv = img.det_val() - dv_target;
        if (dv % 2 != 0) continue;
        int a = dv / 2;
        if (img != target.scaled(pi_pow(a, cfg))) continue;
        int v = xi.det_val();
        sum += XLaurent::monomial(Rat(v % 2 == 0 ? 1 : -1), 2 * a);
      }
    }
    if (have_prev && sum == prev) return OrbitalValue{omega * sum};
    prev = sum;
    have_prev = true;
  }
  throw std::runtime_error("orb_Gprime_direct_n1: window not stabilized");
}

}  // namespace ht
