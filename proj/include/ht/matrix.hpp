#ifndef HT_MATRIX_HPP
#define HT_MATRIX_HPP

#include "ht/field.hpp"
#include "ht/rational.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<ht::Rat> {
  typedef ht::Rat Real;
  typedef ht::Rat NonInteger;
  typedef ht::Rat Nested;
  typedef ht::Rat Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60
  };
  static inline Real epsilon() { return ht::Rat(0); }
  static inline Real dummy_precision() { return ht::Rat(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<ht::FElem> {
  typedef ht::FElem Real;
  typedef ht::FElem NonInteger;
  typedef ht::FElem Nested;
  typedef ht::FElem Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 120,
    MulCost = 120
  };
  static inline Real epsilon() { return ht::FElem(); }
  static inline Real dummy_precision() { return ht::FElem(); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace ht {

using MatF = Eigen::Matrix<FElem, Eigen::Dynamic, Eigen::Dynamic>;
using VecF = Eigen::Matrix<FElem, Eigen::Dynamic, 1>;
using RowF = Eigen::Matrix<FElem, 1, Eigen::Dynamic>;
using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

inline MatF conj(const MatF& m) {
  return m.unaryExpr([](const FElem& x) { return x.conj(); });
}
inline MatF conj_transpose(const MatF& m) {
  MatF r = conj(m).transpose();
  return r;
}

inline MatF embed(const MatQ& m, const FieldConfig& cfg) {
  MatF r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = FElem::from_rat(m(i, j), cfg);
  return r;
}

inline MatF identityF(int n, const FieldConfig& cfg) {
  MatF r = MatF::Zero(n, n);
  for (int i = 0; i < n; ++i) r(i, i) = FElem::from_rat(Rat(1), cfg);
  return r;
}

template <typename MatA, typename MatB>
bool mats_equal(const MatA& a, const MatB& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename Mat>
bool is_zero_mat(const Mat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

template <typename Mat>
bool is_integral(const Mat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integral()) return false;
  return true;
}

/// Exact determinant by fraction-full Gaussian elimination over the field.
template <typename Scalar>
Scalar det_exact(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det_exact: square matrix required");
  Scalar det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Scalar(0);
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    Scalar inv = m(c, c).inverse();
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      Scalar f = m(r, c) * inv;
      for (Eigen::Index j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Exact inverse via Gauss-Jordan; throws on singular input.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> inverse_exact(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse_exact: square matrix required");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> inv(n, n);
  inv.setConstant(Scalar(0));
  for (Eigen::Index i = 0; i < n; ++i) inv(i, i) = Scalar(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("inverse_exact: singular matrix");
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      inv.row(piv).swap(inv.row(c));
    }
    Scalar d = m(c, c).inverse();
    for (Eigen::Index j = 0; j < n; ++j) {
      m(c, j) *= d;
      inv(c, j) *= d;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      Scalar f = m(r, c);
      for (Eigen::Index j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Characteristic polynomial coefficients c_0..c_n with
/// det(T I - M) = sum c_k T^k, c_n = 1 (Faddeev-LeVerrier).
inline std::vector<FElem> charpoly(const MatF& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<FElem> c(n + 1);
  c[n] = FElem(1);
  MatF mk = MatF::Zero(n, n);
  FElem ck(1);
  for (int k = 1; k <= n; ++k) {
    // M_k = M (M_{k-1} + c_{n-k+1} I)
    MatF t = mk;
    for (int i = 0; i < n; ++i) t(i, i) += ck;
    mk = (m * t).eval();
    FElem tr(0);
    for (int i = 0; i < n; ++i) tr += mk(i, i);
    ck = -(tr / FElem(k));
    c[n - k] = ck;
  }
  return c;
}

}  // namespace ht

#endif
