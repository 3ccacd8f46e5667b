#ifndef HT_FIELD_HPP
#define HT_FIELD_HPP

#include "ht/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace ht {

/// The unramified quadratic extension F = F0(delta) of F0 = Q_p, with
/// delta^2 = eps the least positive quadratic nonresidue mod p. The residue
/// field of F has q^2 = p^2 elements and p is a uniformizer of both fields.
struct FieldConfig {
  long p = 0;
  long eps = 0;

  static long least_nonresidue(long p) {
    for (long e = 2; e < p; ++e) {
      // Euler's criterion.
      long acc = 1, b = e % p, ex = (p - 1) / 2;
      while (ex) {
        if (ex & 1) acc = acc * b % p;
        b = b * b % p;
        ex >>= 1;
      }
      if (acc == p - 1) return e;
    }
    throw std::domain_error("FieldConfig: no nonresidue found (p must be an odd prime > 2)");
  }

  static FieldConfig make(long p) {
    if (p < 3 || p % 2 == 0) throw std::domain_error("FieldConfig: p must be an odd prime");
    return FieldConfig{p, least_nonresidue(p)};
  }
};

/// Element a + b*delta of F. Each value carries (p, eps) so that arithmetic
/// is self-contained; the zero-initialized element acts as a neutral literal
/// and adopts the field of its operand.
class FElem {
public:
  FElem() : a_(0), b_(0), p_(0), eps_(0) {}
  FElem(long n) : a_(n), b_(0), p_(0), eps_(0) {}
  FElem(const Rat& a, const Rat& b, const FieldConfig& cfg)
      : a_(a), b_(b), p_(cfg.p), eps_(cfg.eps) {}
  static FElem from_rat(const Rat& a, const FieldConfig& cfg) { return FElem(a, Rat(0), cfg); }

  const Rat& re() const { return a_; }
  const Rat& im() const { return b_; }
  long p() const { return p_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  FElem conj() const { return with(a_, -b_); }

  /// Norm to F0: Nm(a + b delta) = a^2 - eps b^2.
  Rat norm() const { return a_ * a_ - Rat(eps_) * b_ * b_; }
  Rat trace() const { return a_ + a_; }

  FElem operator-() const { return with(-a_, -b_); }
  FElem& operator+=(const FElem& o) { merge(o); a_ += o.a_; b_ += o.b_; return *this; }
  FElem& operator-=(const FElem& o) { merge(o); a_ -= o.a_; b_ -= o.b_; return *this; }
  FElem& operator*=(const FElem& o) {
    merge(o);
    Rat na = a_ * o.a_ + Rat(eps_) * b_ * o.b_;
    Rat nb = a_ * o.b_ + b_ * o.a_;
    a_ = na;
    b_ = nb;
    return *this;
  }
  FElem inverse() const {
    Rat n = norm();
    if (n.is_zero()) throw std::domain_error("FElem: inverse of zero");
    return with(a_ / n, -b_ / n);
  }
  FElem& operator/=(const FElem& o) { return *this *= o.inverse(); }

  friend FElem operator+(FElem x, const FElem& y) { return x += y; }
  friend FElem operator-(FElem x, const FElem& y) { return x -= y; }
  friend FElem operator*(FElem x, const FElem& y) { return x *= y; }
  friend FElem operator/(FElem x, const FElem& y) { return x /= y; }
  friend bool operator==(const FElem& x, const FElem& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const FElem& x, const FElem& y) { return !(x == y); }

  /// Valuation normalized with val(p) = 1. For the unramified extension this
  /// is min(v_p(a), v_p(b)) and always an integer.
  int val() const {
    if (is_zero()) throw std::domain_error("valuation of zero");
    if (p_ == 0) throw std::domain_error("FElem::val: field not set");
    if (a_.is_zero()) return b_.val(p_);
    if (b_.is_zero()) return a_.val(p_);
    return std::min(a_.val(p_), b_.val(p_));
  }

  bool is_integral() const {
    if (p_ == 0) return a_.raw().get_den() == 1 && b_.raw().get_den() == 1;
    return a_.is_p_integral(p_) && b_.is_p_integral(p_);
  }
  bool is_unit() const { return !is_zero() && val() == 0; }

  std::string str() const {
    if (b_.is_zero()) return a_.str();
    return a_.str() + "+" + b_.str() + "d";
  }

  friend std::size_t hash_value(const FElem& x) {
    return hash_value(x.a_) * 2654435761u + hash_value(x.b_);
  }

private:
  FElem with(const Rat& a, const Rat& b) const {
    FElem r;
    r.a_ = a;
    r.b_ = b;
    r.p_ = p_;
    r.eps_ = eps_;
    return r;
  }
  void merge(const FElem& o) {
    if (p_ == 0) {
      p_ = o.p_;
      eps_ = o.eps_;
    } else if (o.p_ != 0 && o.p_ != p_) {
      throw std::logic_error("FElem: mixing elements of different fields");
    }
  }

  Rat a_, b_;
  long p_, eps_;
};

inline FElem conj(const FElem& x) { return x.conj(); }

inline std::ostream& operator<<(std::ostream& os, const FElem& x) { return os << x.str(); }

/// eta extended to F^x through the valuation: (-1)^{val(z)}.
inline int eta_F(const FElem& z) { return (z.val() % 2 == 0) ? 1 : -1; }

}  // namespace ht

#endif
