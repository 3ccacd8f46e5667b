#include "ht/orbits.hpp"

#include <stdexcept>

namespace ht {

namespace {

FElem fq(const Rat& a, const Rat& b, const FieldConfig& cfg) { return FElem(a, b, cfg); }
FElem pi_pow(int k, const FieldConfig& cfg) { return FElem(p_power(cfg.p, k), Rat(0), cfg); }

}  // namespace

FElem HermSpace::pair(const VecF& x, const VecF& y) const {
  return (x.transpose() * gram * ht::conj(y))(0, 0);
}

bool HermSpace::is_split() const {
  FElem d = det_exact<FElem>(gram);
  return d.val() % 2 == 0;
}

VecF SpecialSetup::u() const {
  VecF v = VecF::Zero(n + 1);
  for (int i = 0; i < n + 1; ++i) v(i) = FElem(0);
  v(n) = FElem::from_rat(Rat(1), W.cfg);
  return v;
}

MatF SpecialSetup::flat_gram() const { return W.gram.topLeftCorner(n, n).eval(); }

HermSpace SpecialSetup::flat_space() const { return HermSpace{W.cfg, n, flat_gram()}; }

Lattice SpecialSetup::level_lattice() const {
  const FieldConfig& cfg = W.cfg;
  if (eps == 0) return Lattice::standard(n + 1, Ring::OF, cfg);
  if (n != 1 || !W.is_split())
    throw std::logic_error("level_lattice: eps=1 level only set up at n=1 on the split space");
  // self-dual overlattice of O^2 for gram diag(-pi, pi): O^2 + O pi^{-1}(1,1)
  MatF gens(2, 3);
  gens << FElem(1), FElem(0), fq(Rat(1, cfg.p), Rat(0), cfg), FElem(0), FElem(1),
      fq(Rat(1, cfg.p), Rat(0), cfg);
  return Lattice::from_span(gens, Ring::OF, cfg);
}

SpecialSetup make_setup(const FieldConfig& cfg, int n, Side side, int eps) {
  MatF g = MatF::Zero(n + 1, n + 1);
  for (int i = 0; i < n - 1; ++i) g(i, i) = FElem(1);
  int tw = (side == Side::Nonsplit) ? 1 : 0;
  g(n - 1, n - 1) = -pi_pow(eps + tw, cfg);
  g(n, n) = pi_pow(eps, cfg);
  SpecialSetup s{HermSpace{cfg, n + 1, g}, n, eps};
  if ((side == Side::Split) != s.W.is_split()) throw std::logic_error("make_setup: wrong class");
  return s;
}

bool in_symmetric_space(const MatF& gamma) {
  const int m = static_cast<int>(gamma.rows());
  MatF t = gamma * ht::conj(gamma);
  for (int i = 0; i < m; ++i) t(i, i) -= FElem(1);
  return is_zero_mat(t);
}

MatF r_map(const MatF& gamma_prime) {
  FElem d = det_exact<FElem>(gamma_prime);
  if (d.is_zero()) throw std::domain_error("r_map: singular input");
  return (gamma_prime * inverse_exact(ht::conj(gamma_prime).eval())).eval();
}

FElem delta_plus_vec(const MatF& gamma, const VecF& e) {
  const int m = static_cast<int>(gamma.rows());
  MatF cols(m, m);
  VecF v = e;
  for (int i = 0; i < m; ++i) {
    cols.col(i) = v;
    v = (gamma * v).eval();
  }
  return det_exact<FElem>(cols);
}

FElem delta_plus(const MatF& gamma) {
  const int m = static_cast<int>(gamma.rows());
  VecF e = VecF::Zero(m);
  for (int i = 0; i < m; ++i) e(i) = FElem(0);
  e(m - 1) = FElem(1);
  return delta_plus_vec(gamma, e);
}

namespace {

FElem row_delta(const MatF& gamma, const RowF& estar) {
  const int m = static_cast<int>(gamma.rows());
  MatF rows(m, m);
  RowF r = estar;
  for (int i = 0; i < m; ++i) {
    rows.row(i) = r;
    r = (r * gamma).eval();
  }
  return det_exact<FElem>(rows);
}

RowF last_covector(int m) {
  RowF r = RowF::Zero(m);
  for (int i = 0; i < m; ++i) r(i) = FElem(0);
  r(m - 1) = FElem(1);
  return r;
}

}  // namespace

bool is_rss_S(const MatF& gamma) {
  const int m = static_cast<int>(gamma.rows());
  if (delta_plus(gamma).is_zero()) return false;
  return !row_delta(gamma, last_covector(m)).is_zero();
}

bool is_rss_semilie(const MatF& gamma, const VecF& e, const RowF& estar) {
  if (delta_plus_vec(gamma, e).is_zero()) return false;
  return !row_delta(gamma, estar).is_zero();
}

bool is_rss_U(const MatF& g, const SpecialSetup& setup) {
  return !delta_plus_vec(g, setup.u()).is_zero();
}

namespace {

FieldConfig field_of(const MatF& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j).p() != 0) return FieldConfig::make(m(i, j).p());
  throw std::logic_error("field_of: no field information");
}

}  // namespace

MatchingInvariants invariants_S(const MatF& gamma) {
  const int m = static_cast<int>(gamma.rows());
  MatchingInvariants inv;
  inv.charpoly = charpoly(gamma);
  inv.pairing.push_back(FElem(1));
  MatF cur = gamma;
  for (int i = 1; i < m; ++i) {
    inv.pairing.push_back(cur(m - 1, m - 1));
    cur = (cur * gamma).eval();
  }
  return inv;
}

MatchingInvariants invariants_U(const MatF& g, const SpecialSetup& setup) {
  const int m = setup.n + 1;
  MatchingInvariants inv;
  inv.charpoly = charpoly(g);
  VecF u = setup.u();
  FElem uu = setup.W.pair(u, u);
  VecF cur = u;
  for (int i = 0; i < m; ++i) {
    inv.pairing.push_back(setup.W.pair(cur, u) / uu);
    cur = (g * cur).eval();
  }
  return inv;
}

Side matching_side(const MatF& gamma, int eps) {
  const int m = static_cast<int>(gamma.rows());
  if (!is_rss_S(gamma)) throw std::domain_error("matching_side: not regular semisimple");
  FieldConfig cfg = field_of(gamma);
  // beta_k = e* gamma^k e, extended to negative k through gamma^{-1} = conj(gamma)
  std::vector<FElem> beta_pos(m), beta_neg(m);
  MatF cur = identityF(m, cfg);
  for (int k = 0; k < m; ++k) {
    beta_pos[k] = cur(m - 1, m - 1);
    cur = (cur * gamma).eval();
  }
  for (int k = 0; k < m; ++k) beta_neg[k] = beta_pos[k].conj();
  MatF gm(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int k = i - j;
      gm(i, j) = (k >= 0 ? beta_pos[k] : beta_neg[-k]) * pi_pow(eps, cfg);
    }
  FElem d = det_exact<FElem>(gm);
  if (d.is_zero()) throw std::domain_error("matching_side: degenerate cyclic Gram");
  return d.val() % 2 == 0 ? Side::Split : Side::Nonsplit;
}

uint64_t Sampler::derive(uint64_t seed, const std::string& tag, uint64_t index) {
  // splitmix64-style mixing; stable across platforms
  uint64_t x = seed;
  auto mix = [&x](uint64_t v) {
    x += 0x9e3779b97f4a7c15ULL + v;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    x = z ^ (z >> 31);
  };
  for (char c : tag) mix(static_cast<uint64_t>(static_cast<unsigned char>(c)));
  mix(index);
  return x;
}

Rat Sampler::rat(int maxnum, int maxval) {
  long num = static_cast<long>(rng_() % static_cast<unsigned long>(2 * maxnum + 1)) - maxnum;
  Rat r(num);
  if (maxval > 0) {
    int v = static_cast<int>(rng_() % static_cast<unsigned long>(2 * maxval + 1)) - maxval;
    r *= p_power(cfg_.p, v);
  }
  return r;
}

FElem Sampler::felem(int height) { return FElem(rat(height), rat(height), cfg_); }

MatF Sampler::matrixF(int n, int height) {
  MatF m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = felem(height);
  return m;
}

MatF Sampler::gl_rational(int n, int height) {
  for (;;) {
    MatF m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = FElem(rat(height, 1), Rat(0), cfg_);
    if (!det_exact<FElem>(m).is_zero()) return m;
  }
}

MatF Sampler::gl_unimodular_rational(int n) {
  for (;;) {
    MatF m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = FElem(rat(2 * cfg_.p), Rat(0), cfg_);
    FElem d = det_exact<FElem>(m);
    if (!d.is_zero() && d.val() == 0) return m;
  }
}

MatF Sampler::sample_S(int n, int val_cap, int tries) {
  for (int t = 0; t < tries; ++t) {
    MatF gp = matrixF(n + 1, height_);
    if (det_exact<FElem>(gp).is_zero()) continue;
    MatF g = r_map(gp);
    if (!is_rss_S(g)) continue;
    if (delta_plus(g).val() > val_cap || delta_plus(g).val() < -val_cap) continue;
    return g;
  }
  throw std::runtime_error("sample_S: retry limit exceeded");
}

MatF Sampler::sample_S_semilie(int n, const VecF& e, const RowF& estar, int val_cap, int tries) {
  for (int t = 0; t < tries; ++t) {
    MatF gp = matrixF(n + 1, height_);
    if (det_exact<FElem>(gp).is_zero()) continue;
    MatF g = r_map(gp);
    if (!is_rss_semilie(g, e, estar)) continue;
    int v = delta_plus_vec(g, e).val();
    if (v > val_cap || v < -val_cap) continue;
    return g;
  }
  throw std::runtime_error("sample_S_semilie: retry limit exceeded");
}

MatF Sampler::sample_U(const SpecialSetup& setup, int tries) {
  const int m = setup.n + 1;
  const FieldConfig& cfg = setup.W.cfg;
  for (int t = 0; t < tries; ++t) {
    // Cayley transform of a skew-hermitian T = J^{-1} H, H* = -H
    MatF a = matrixF(m, height_);
    MatF h = (a - conj_transpose(a)).eval();
    for (int i = 0; i < m; ++i) h(i, i) += FElem(Rat(0), rat(height_), cfg);
    MatF T = inverse_exact(setup.W.gram) * h;
    MatF one = identityF(m, cfg);
    MatF denom = (one + T).eval();
    if (det_exact<FElem>(denom).is_zero()) continue;
    MatF g = ((one - T) * inverse_exact(denom)).eval();
    if (!is_rss_U(g, setup)) continue;
    return g;
  }
  throw std::runtime_error("sample_U: retry limit exceeded");
}

MatF match_gamma_n1(const MatF& g, const SpecialSetup& setup) {
  const FieldConfig& cfg = setup.W.cfg;
  auto cp = charpoly(g);
  FElem nu = cp[0];        // det
  FElem tr = -cp[1];       // trace
  VecF u = setup.u();
  FElem uu = setup.W.pair(u, u);
  FElem beta = setup.W.pair((g * u).eval(), u) / uu;
  FElem rho = (tr - beta) * beta - nu;
  if (rho.is_zero()) throw std::domain_error("match_gamma_n1: not regular semisimple");

  // b with conj(b)/b = -1/nu (norm-one by det of a unitary matrix)
  FElem w = -nu.inverse();
  FElem b = FElem(1) + w.conj();
  if (b.is_zero()) b = FElem(Rat(0), Rat(1), cfg);
  MatF gamma(2, 2);
  gamma << tr - beta, b, rho / b, beta;
  if (!in_symmetric_space(gamma)) throw std::logic_error("match_gamma_n1: not in S_2");
  return gamma;
}

std::pair<MatF, MatF> Sampler::sample_pair_n1(const SpecialSetup& setup, int tries) {
  for (int t = 0; t < tries; ++t) {
    MatF g = sample_U(setup, tries);
    MatF gamma;
    try {
      gamma = match_gamma_n1(g, setup);
    } catch (const std::domain_error&) {
      continue;
    }
    if (!is_rss_S(gamma)) continue;
    if (delta_plus(gamma).val() > 6 || delta_plus(gamma).val() < -6) continue;
    if (!(invariants_S(gamma) == invariants_U(g, setup)))
      throw std::logic_error("sample_pair_n1: invariant mismatch");
    return {gamma, g};
  }
  throw std::runtime_error("sample_pair_n1: retry limit exceeded");
}

}  // namespace ht
