#include "ht/finite_hermitian.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ht {

namespace {

int inv_mod(int a, int p) {
  int t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    int q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  return t < 0 ? t + p : t;
}

}  // namespace

FF FinField::inv(FF x) const {
  if (x.is_zero()) throw std::domain_error("FinField: inverse of zero");
  int n = norm(x);
  int ni = inv_mod(n, p_);
  FF c = conj(x);
  return FF{mod(static_cast<long>(c.a) * ni), mod(static_cast<long>(c.b) * ni)};
}

std::vector<FF> FinField::norm_one_scalars() const {
  std::vector<FF> out;
  for (long v = 0; v < q2(); ++v) {
    FF x = decode(v);
    if (!x.is_zero() && norm(x) == 1) out.push_back(x);
  }
  return out;
}

FF FinHermSpace::pair(const FVec& x, const FVec& y) const {
  FF s = f.zero();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) s = f.add(s, f.mul(f.mul(x[i], gram[i][j]), f.conj(y[j])));
  return s;
}

FinHermSpace FinHermSpace::diagonal(long p, long eps, const std::vector<int>& diag) {
  FinField f(p, eps);
  int d = static_cast<int>(diag.size());
  FMat g(d, FVec(d, f.zero()));
  for (int i = 0; i < d; ++i) g[i][i] = f.make(diag[i], 0);
  return FinHermSpace{f, d, g};
}

FinHermSpace FinHermSpace::hyperbolic(long p, long eps, int k) {
  FinField f(p, eps);
  int d = 2 * k;
  FMat g(d, FVec(d, f.zero()));
  for (int i = 0; i < k; ++i) {
    g[2 * i][2 * i + 1] = f.one();
    g[2 * i + 1][2 * i] = f.one();
  }
  return FinHermSpace{f, d, g};
}

long encode_vec(const FinField& f, const FVec& v) {
  long code = 0, base = f.q2();
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) code = code * base + f.encode(v[i]);
  return code;
}

FVec decode_vec(const FinField& f, long code, int dim) {
  FVec v(dim);
  long base = f.q2();
  for (int i = 0; i < dim; ++i) {
    v[i] = f.decode(code % base);
    code /= base;
  }
  return v;
}

FVec mat_apply(const FinField& f, const FMat& m, const FVec& v) {
  int n = static_cast<int>(m.size());
  FVec out(n, f.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!m[i][j].is_zero() && !v[j].is_zero()) out[i] = f.add(out[i], f.mul(m[i][j], v[j]));
  return out;
}

FMat mat_mul(const FinField& f, const FMat& a, const FMat& b) {
  int n = static_cast<int>(a.size());
  FMat c(n, FVec(n, f.zero()));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] = f.add(c[i][j], f.mul(a[i][k], b[k][j]));
    }
  return c;
}

FMat mat_identity(const FinField& f, int n) {
  FMat m(n, FVec(n, f.zero()));
  for (int i = 0; i < n; ++i) m[i][i] = f.one();
  return m;
}

namespace {

FMat mat_inverse(const FinField& f, FMat m) {
  int n = static_cast<int>(m.size());
  FMat inv = mat_identity(f, n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("mat_inverse: singular");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    FF d = f.inv(m[c][c]);
    for (int j = 0; j < n; ++j) {
      m[c][j] = f.mul(m[c][j], d);
      inv[c][j] = f.mul(inv[c][j], d);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      FF x = m[r][c];
      for (int j = 0; j < n; ++j) {
        m[r][j] = f.sub(m[r][j], f.mul(x, m[c][j]));
        inv[r][j] = f.sub(inv[r][j], f.mul(x, inv[c][j]));
      }
    }
  }
  return inv;
}

bool mat_equal(const FMat& a, const FMat& b) { return a == b; }

}  // namespace

bool mat_is_unitary(const FinHermSpace& V, const FMat& m) {
  const FinField& f = V.f;
  int n = V.dim;
  // m^T G conj(m) == G
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FF s = f.zero();
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          s = f.add(s, f.mul(f.mul(m[k][i], V.gram[k][l]), f.conj(m[l][j])));
      if (s != V.gram[i][j]) return false;
    }
  return true;
}

FinSubspace rref(const FinField& f, FMat rows) {
  int k = static_cast<int>(rows.size());
  if (k == 0) return FinSubspace{rows};
  int d = static_cast<int>(rows[0].size());
  int r = 0;
  for (int c = 0; c < d && r < k; ++c) {
    int piv = -1;
    for (int i = r; i < k; ++i)
      if (!rows[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[r]);
    FF inv = f.inv(rows[r][c]);
    for (int j = 0; j < d; ++j) rows[r][j] = f.mul(rows[r][j], inv);
    for (int i = 0; i < k; ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      FF x = rows[i][c];
      for (int j = 0; j < d; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(x, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return FinSubspace{rows};
}

std::string FinSubspace::key(const FinField& f) const {
  std::ostringstream os;
  for (const auto& row : rows) os << encode_vec(f, row) << ";";
  return os.str();
}

FinSubspace subspace_apply(const FinField& f, const FMat& g, const FinSubspace& s) {
  FMat rows;
  for (const auto& row : s.rows) rows.push_back(mat_apply(f, g, row));
  return rref(f, rows);
}

std::vector<FinSubspace> enumerate_subspaces(const FinHermSpace& V, int k, long budget) {
  const FinField& f = V.f;
  int d = V.dim;
  std::vector<FinSubspace> out;
  if (k == 0) {
    out.push_back(FinSubspace{});
    return out;
  }
  // enumerate RREF matrices: choose pivot columns, then free entries
  std::vector<int> piv(k);
  std::function<void(int, int)> choose = [&](int idx, int from) {
    if (idx == k) {
      // free positions: row i, column c > piv[i], c not a pivot column
      std::vector<std::pair<int, int>> free_pos;
      for (int i = 0; i < k; ++i)
        for (int c = piv[i] + 1; c < d; ++c)
          if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_pos.push_back({i, c});
      long count = 1;
      for (size_t t = 0; t < free_pos.size(); ++t) {
        count *= f.q2();
        if (count > budget) throw std::runtime_error("enumerate_subspaces: budget exceeded");
      }
      FMat rows(k, FVec(d, f.zero()));
      for (int i = 0; i < k; ++i) rows[i][piv[i]] = f.one();
      std::function<void(size_t)> fill = [&](size_t t) {
        if (t == free_pos.size()) {
          out.push_back(FinSubspace{rows});
          return;
        }
        for (long v = 0; v < f.q2(); ++v) {
          rows[free_pos[t].first][free_pos[t].second] = f.decode(v);
          fill(t + 1);
        }
      };
      fill(0);
      return;
    }
    for (int c = from; c <= d - (k - idx); ++c) {
      piv[idx] = c;
      choose(idx + 1, c + 1);
    }
  };
  choose(0, 0);
  return out;
}

std::vector<FinSubspace> enumerate_isotropic(const FinHermSpace& V, int k, long budget) {
  std::vector<FinSubspace> all = enumerate_subspaces(V, k, budget);
  std::vector<FinSubspace> out;
  for (auto& s : all) {
    bool iso = true;
    for (int i = 0; i < k && iso; ++i)
      for (int j = 0; j < k && iso; ++j)
        if (!V.pair(s.rows[i], s.rows[j]).is_zero()) iso = false;
    if (iso) out.push_back(s);
  }
  return out;
}

MatGroup::MatGroup(const FinField& f, int dim, std::vector<FMat> gens,
                   const std::vector<FVec>& base_prefix)
    : f_(f), dim_(dim), gens_(std::move(gens)), base_(base_prefix) {
  build();
}

void MatGroup::build() {
  const FMat id = mat_identity(f_, dim_);

  // Generators tagged with the deepest base prefix they are known to fix
  // pointwise; gens of the level-i group are those tagged >= i.
  std::vector<std::pair<FMat, size_t>> tagged;
  for (const FMat& g : gens_)
    if (!mat_equal(g, id)) tagged.push_back({g, 0});

  auto extend_base = [&](const FMat& g) {
    for (long code = 1;; ++code) {
      FVec v = decode_vec(f_, code, dim_);
      bool allzero = true;
      for (auto& x : v) allzero &= x.is_zero();
      if (allzero) continue;
      if (mat_apply(f_, g, v) != v) {
        for (auto& b : base_)
          if (b == v) throw std::logic_error("MatGroup: moved base point misordered");
        base_.push_back(v);
        return;
      }
    }
  };

  if (base_.empty()) {
    if (tagged.empty()) {
      order_ = 1;
      level_gens_.assign(1, {});
      return;
    }
    extend_base(tagged[0].first);
  }

  std::vector<std::unordered_map<long, FMat>> trans;

  auto rebuild = [&]() {
    trans.assign(base_.size(), {});
    for (size_t i = 0; i < base_.size(); ++i) {
      long b = encode_vec(f_, base_[i]);
      trans[i][b] = id;
      std::vector<long> queue{b};
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        FVec v = decode_vec(f_, queue[qi], dim_);
        FMat rep = trans[i][queue[qi]];
        for (auto& [g, lv] : tagged) {
          if (lv < i) continue;
          FVec w = mat_apply(f_, g, v);
          long wc = encode_vec(f_, w);
          if (!trans[i].count(wc)) {
            trans[i][wc] = mat_mul(f_, g, rep);
            queue.push_back(wc);
          }
        }
      }
    }
  };

  auto sift = [&](FMat g, size_t from) -> std::pair<FMat, size_t> {
    for (size_t j = from; j < base_.size(); ++j) {
      long vc = encode_vec(f_, mat_apply(f_, g, base_[j]));
      auto it = trans[j].find(vc);
      if (it == trans[j].end()) return {g, j};
      g = mat_mul(f_, mat_inverse(f_, it->second), g);
    }
    return {g, base_.size()};
  };

  for (int round = 0;; ++round) {
    if (round > 100000) throw std::logic_error("MatGroup: no fixpoint");
    rebuild();
    bool changed = false;
    for (size_t i = 0; i < base_.size() && !changed; ++i) {
      std::vector<std::pair<long, FMat>> pts(trans[i].begin(), trans[i].end());
      for (auto& [pc, rep] : pts) {
        if (changed) break;
        FVec v = decode_vec(f_, pc, dim_);
        for (auto& [g, lv] : tagged) {
          if (lv < i) continue;
          long wc = encode_vec(f_, mat_apply(f_, g, v));
          FMat schreier = mat_mul(f_, mat_inverse(f_, trans[i].at(wc)), mat_mul(f_, g, rep));
          if (mat_equal(schreier, id)) continue;
          auto [res, depth] = sift(schreier, i + 1);
          if (mat_equal(res, id)) continue;
          if (depth == base_.size()) extend_base(res);
          tagged.push_back({res, depth});
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }

  order_ = 1;
  for (auto& t : trans) order_ *= t.size();
  level_gens_.assign(base_.size() + 1, {});
  for (size_t i = 0; i <= base_.size(); ++i)
    for (auto& [g, lv] : tagged)
      if (lv >= i) level_gens_[i].push_back(g);
}

std::vector<FMat> MatGroup::stabilizer_gens(int k) const {
  if (k >= static_cast<int>(level_gens_.size())) return {};
  return level_gens_[k];
}

unsigned long long unitary_order_formula(int n, long q) {
  unsigned long long o = 1;
  for (int i = 0; i < n * (n - 1) / 2; ++i) o *= static_cast<unsigned long long>(q);
  unsigned long long f = 1;
  for (int i = 1; i <= n; ++i) {
    unsigned long long qi = 1;
    for (int j = 0; j < i; ++j) qi *= static_cast<unsigned long long>(q);
    f *= (i % 2 == 0) ? (qi - 1) : (qi + 1);
  }
  return o * f;
}

UnitaryGroup unitary_group(const FinHermSpace& V) {
  const FinField& f = V.f;
  int d = V.dim;
  unsigned long long target = unitary_order_formula(d, f.p());
  std::vector<FF> zetas = f.norm_one_scalars();

  std::vector<FMat> gens;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= f.q2();
  unsigned long long have = 0;
  for (long code = 1; code < total; ++code) {
    FVec v = decode_vec(f, code, d);
    FF nv = V.pair(v, v);
    if (nv.is_zero()) continue;
    FF nvi = f.inv(nv);
    // reflections x -> x + (zeta - 1) (x,v)/(v,v) v
    for (const FF& z : zetas) {
      if (z == f.one()) continue;
      FMat m = mat_identity(f, d);
      FF c = f.mul(f.sub(z, f.one()), nvi);
      for (int i = 0; i < d; ++i) {
        // (e_i, v)
        FVec ei(d, f.zero());
        ei[i] = f.one();
        FF pv = V.pair(ei, v);
        FF coef = f.mul(c, pv);
        for (int r = 0; r < d; ++r) m[r][i] = f.add(m[r][i], f.mul(coef, v[r]));
      }
      gens.push_back(m);
    }
    MatGroup g(f, d, gens);
    have = g.order();
    if (have == target) break;
    if (gens.size() > 200) break;
  }
  if (have != target) throw std::logic_error("unitary_group: generators do not reach full order");
  return UnitaryGroup{gens, target};
}

int orbit_count_subspaces(const FinField& f, const std::vector<FMat>& gens,
                          const std::vector<FinSubspace>& points) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < points.size(); ++i) index[points[i].key(f)] = static_cast<int>(i);
  std::vector<bool> seen(points.size(), false);
  int orbits = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    if (seen[i]) continue;
    ++orbits;
    std::vector<int> queue{static_cast<int>(i)};
    seen[i] = true;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      for (const FMat& g : gens) {
        FinSubspace img = subspace_apply(f, g, points[queue[qi]]);
        auto it = index.find(img.key(f));
        if (it == index.end())
          throw std::logic_error("orbit_count_subspaces: action leaves the point set");
        if (!seen[it->second]) {
          seen[it->second] = true;
          queue.push_back(it->second);
        }
      }
    }
  }
  return orbits;
}

int count_type0_over_type2(long p, long eps) {
  // self-dual overlattices of a type 2 lattice <-> lagrangian lines of the
  // 2-dimensional quotient hermitian space
  FinHermSpace V = FinHermSpace::diagonal(p, eps, {1, 1});
  return static_cast<int>(enumerate_isotropic(V, 1).size());
}

int count_isotropic_lines_in_perp(long p, long eps) {
  // anisotropic line l' in a 3-dimensional space; isotropic lines inside its perp
  FinHermSpace V = FinHermSpace::diagonal(p, eps, {1, 1, 1});
  FVec u(3, V.f.zero());
  u[2] = V.f.one();
  auto lines = enumerate_isotropic(V, 1);
  int cnt = 0;
  for (const auto& l : lines)
    if (V.pair(l.rows[0], u).is_zero()) ++cnt;
  return cnt;
}

long mirabolic_index(long p, long eps) {
  FinField f(p, eps);
  // orbit of (0,1)^t under GL_2(F_{q^2}) computed by closure
  std::vector<FMat> gens;
  FMat e12 = mat_identity(f, 2), e21 = mat_identity(f, 2), dg = mat_identity(f, 2);
  e12[0][1] = f.one();
  e21[1][0] = f.one();
  // a multiplicative generator of F_{q^2}^x
  for (long code = 2; code < f.q2(); ++code) {
    FF x = f.decode(code);
    if (x.is_zero()) continue;
    unsigned long long ord = 1;
    FF y = x;
    while (y != f.one()) {
      y = f.mul(y, x);
      ++ord;
    }
    if (ord == static_cast<unsigned long long>(f.q2() - 1)) {
      dg[0][0] = x;
      break;
    }
  }
  gens = {e12, e21, dg};
  std::unordered_set<long> orbit;
  FVec start(2, f.zero());
  start[1] = f.one();
  std::vector<FVec> queue{start};
  orbit.insert(encode_vec(f, start));
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    for (const FMat& g : gens) {
      FVec w = mat_apply(f, g, queue[qi]);
      if (orbit.insert(encode_vec(f, w)).second) queue.push_back(w);
    }
  }
  return static_cast<long>(orbit.size());
}

long mirabolic_index_bruteforce(long p, long eps) {
  FinField f(p, eps);
  long q2 = f.q2();
  long gl = 0, mir = 0;
  for (long a = 0; a < q2; ++a)
    for (long b = 0; b < q2; ++b)
      for (long c = 0; c < q2; ++c)
        for (long d = 0; d < q2; ++d) {
          FF A = f.decode(a), B = f.decode(b), C = f.decode(c), D = f.decode(d);
          FF det = f.sub(f.mul(A, D), f.mul(B, C));
          if (det.is_zero()) continue;
          ++gl;
          if (B.is_zero() && D == f.one()) ++mir;
        }
  if (gl % mir != 0) throw std::logic_error("mirabolic_index_bruteforce: index not integral");
  return gl / mir;
}

}  // namespace ht
