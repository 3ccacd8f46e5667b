#ifndef HT_RATIONAL_HPP
#define HT_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ht {

/// Exact rational scalar. Thin value wrapper around GMP's mpq_class so the
/// rest of the library never touches GMP directly.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}
  Rat(long num, long den) : v_(num, den) { v_.canonicalize(); }
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rat(const std::string& s) : v_(s) { v_.canonicalize(); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

  Rat inverse() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(1 / v_));
  }

  /// p-adic valuation; precondition nonzero.
  int val(long p) const {
    if (is_zero()) throw std::domain_error("valuation of zero");
    mpz_class num = v_.get_num(), den = v_.get_den();
    mpz_class tmp;
    int vn = static_cast<int>(mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), mpz_class(p).get_mpz_t()));
    int vd = static_cast<int>(mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t()));
    return vn - vd;
  }

  /// True if v_p(x) >= 0 (or x = 0), i.e. x lies in Z_(p).
  bool is_p_integral(long p) const {
    if (is_zero()) return true;
    return mpz_divisible_ui_p(v_.get_den().get_mpz_t(), static_cast<unsigned long>(p)) == 0;
  }

  /// Canonical residue of a p-integral rational modulo p^k, as an integer in [0, p^k).
  mpz_class residue(long p, int k) const {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    mpz_class num = v_.get_num(), den = v_.get_den();
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()) == 0)
      throw std::domain_error("Rat::residue: denominator not invertible mod p^k");
    mpz_class r = (num * deninv) % pk;
    if (r < 0) r += pk;
    return r;
  }

  long to_long() const {
    if (v_.get_den() != 1) throw std::domain_error("Rat::to_long: not an integer");
    return v_.get_num().get_si();
  }

  std::string str() const { return v_.get_str(); }
  const mpq_class& raw() const { return v_; }

  friend std::size_t hash_value(const Rat& r) {
    std::size_t h = mpz_fdiv_ui(r.v_.get_num().get_mpz_t(), 0x7fffffffu);
    std::size_t h2 = mpz_fdiv_ui(r.v_.get_den().get_mpz_t(), 0x7fffffffu);
    return h * 1000003u + h2;
  }

private:
  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

inline Rat pow_int(const Rat& base, int e) {
  Rat r(1);
  Rat b = e < 0 ? base.inverse() : base;
  for (int i = 0, n = e < 0 ? -e : e; i < n; ++i) r *= b;
  return r;
}

/// p^k as an exact rational, k may be negative.
inline Rat p_power(long p, int k) { return pow_int(Rat(p), k); }

/// Unramified quadratic character of F0^x: eta(x) = (-1)^{v_p(x)}.
inline int eta(const Rat& x, long p) { return (x.val(p) % 2 == 0) ? 1 : -1; }

}  // namespace ht

#endif
