#ifndef HT_XLAURENT_HPP
#define HT_XLAURENT_HPP

#include "ht/field.hpp"
#include "ht/rational.hpp"

#include <map>
#include <sstream>
#include <string>

namespace ht {

/// Laurent polynomial in X = q^{-s} with rational coefficients. The value
/// type of every s-dependent orbital quantity; evaluation at X = 1 gives the
/// value at s = 0 and -sum(k a_k) the derivative coefficient (of log q).
class XLaurent {
public:
  XLaurent() = default;
  XLaurent(const Rat& c) {
    if (!c.is_zero()) c_[0] = c;
  }
  XLaurent(long c) : XLaurent(Rat(c)) {}

  static XLaurent monomial(const Rat& c, int k) {
    XLaurent r;
    if (!c.is_zero()) r.c_[k] = c;
    return r;
  }
  static XLaurent X(int k = 1) { return monomial(Rat(1), k); }

  bool is_zero() const { return c_.empty(); }
  const std::map<int, Rat>& coeffs() const { return c_; }

  Rat coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Rat(0) : it->second;
  }

  XLaurent& operator+=(const XLaurent& o) {
    for (auto& [k, v] : o.c_) add(k, v);
    return *this;
  }
  XLaurent& operator-=(const XLaurent& o) {
    for (auto& [k, v] : o.c_) add(k, -v);
    return *this;
  }
  XLaurent operator-() const {
    XLaurent r;
    for (auto& [k, v] : c_) r.c_[k] = -v;
    return r;
  }
  friend XLaurent operator+(XLaurent a, const XLaurent& b) { return a += b; }
  friend XLaurent operator-(XLaurent a, const XLaurent& b) { return a -= b; }
  friend XLaurent operator*(const XLaurent& a, const XLaurent& b) {
    XLaurent r;
    for (auto& [i, u] : a.c_)
      for (auto& [j, v] : b.c_) r.add(i + j, u * v);
    return r;
  }
  XLaurent& operator*=(const XLaurent& o) { return *this = *this * o; }
  friend bool operator==(const XLaurent& a, const XLaurent& b) { return a.c_ == b.c_; }
  friend bool operator!=(const XLaurent& a, const XLaurent& b) { return !(a == b); }

  /// Substitute X -> X^k (k may be negative, k != 0).
  XLaurent subst_power(int k) const {
    XLaurent r;
    for (auto& [i, v] : c_) r.c_[i * k] = v;
    return r;
  }

  /// P(1), the value at s = 0.
  Rat value_at_zero() const {
    Rat s(0);
    for (auto& [k, v] : c_) s += v;
    return s;
  }

  /// c with d/ds P(q^{-s})|_{s=0} = c log q, i.e. -sum k a_k.
  Rat d_at_zero() const {
    Rat s(0);
    for (auto& [k, v] : c_) s += Rat(-k) * v;
    return s;
  }

  Rat eval(const Rat& x) const {
    Rat s(0);
    for (auto& [k, v] : c_) s += v * pow_int(x, k);
    return s;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : c_) {
      if (!first) os << " + ";
      first = false;
      if (k == 0) {
        os << v.str();
      } else {
        if (!v.is_one()) os << v.str() << "*";
        os << "X";
        if (k != 1) os << "^" << k;
      }
    }
    return os.str();
  }

private:
  void add(int k, const Rat& v) {
    auto it = c_.find(k);
    if (it == c_.end()) {
      if (!v.is_zero()) c_[k] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  std::map<int, Rat> c_;
};

/// eta-tilde_s(z) = eta~(z) |z|_F^{s/2} encoded as (-1)^v X^v with v = val(z),
/// using |pi|_F = q^{-2}. The twist eta-tilde_{-s} is subst_power(-1) of this.
inline XLaurent eta_tilde_s(const FElem& z) {
  int v = z.val();
  return XLaurent::monomial(Rat(v % 2 == 0 ? 1 : -1), v);
}

}  // namespace ht

#endif
