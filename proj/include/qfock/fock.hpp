#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "qfock/errors.hpp"
#include "qfock/quaternion.hpp"
#include "qfock/summation.hpp"

namespace qfock {

using Index = Eigen::Index;

namespace detail {

struct HamiltonTerm {
  int lhs;
  int rhs;
  int sign;
};

// Output component c of a product collects kHamilton[c][*].
inline constexpr std::array<std::array<HamiltonTerm, 4>, 4> kHamilton{{
    {{{0, 0, +1}, {1, 1, -1}, {2, 2, -1}, {3, 3, -1}}},
    {{{0, 1, +1}, {1, 0, +1}, {2, 3, +1}, {3, 2, -1}}},
    {{{0, 2, +1}, {1, 3, -1}, {2, 0, +1}, {3, 1, +1}}},
    {{{0, 3, +1}, {1, 2, +1}, {2, 1, -1}, {3, 0, +1}}},
}};

inline void check_dims(Index a, Index b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

}  // namespace detail

/// Leading block 0..dim-margin-1 of a truncated space, where identities of
/// unbounded operators are asserted.
struct ProtectedBlock {
  Index dim{64};
  Index margin{32};

  ProtectedBlock() = default;
  ProtectedBlock(Index d, Index m) : dim(d), margin(m) {
    if (d <= 0 || m <= 0 || m >= d)
      throw ConfigError("protected block needs 0 < margin < dim");
  }
  Index size() const { return dim - margin; }
};

/// Truncated vector over the basis Phi_0..Phi_{dim-1}; coefficient k is the
/// right coefficient <Phi_k|f>.
template <typename Scalar>
class FockVector {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 4>;
  using Quat = Quaternion<Scalar>;

  explicit FockVector(Index dim) : c_(Coeffs::Zero(dim, 4)) {
    if (dim <= 0) throw ConfigError("FockVector dimension must be positive");
  }
  explicit FockVector(Coeffs c) : c_(std::move(c)) {}

  static FockVector basis(Index dim, Index k) {
    FockVector v(dim);
    v.set(k, Quat(1));
    return v;
  }

  Index dim() const { return c_.rows(); }
  Quat operator[](Index k) const { return {c_(k, 0), c_(k, 1), c_(k, 2), c_(k, 3)}; }
  void set(Index k, const Quat& q) {
    c_(k, 0) = q.w(); c_(k, 1) = q.x(); c_(k, 2) = q.y(); c_(k, 3) = q.z();
  }
  const Coeffs& coeffs() const { return c_; }
  Coeffs& coeffs() { return c_; }

  FockVector& operator+=(const FockVector& o) {
    detail::check_dims(dim(), o.dim(), "FockVector +");
    c_ += o.c_;
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    detail::check_dims(dim(), o.dim(), "FockVector -");
    c_ -= o.c_;
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }

 private:
  Coeffs c_;
};

/// Right-linear operator as a dim x dim matrix of quaternions,
/// A(j,k) = <Phi_j|A Phi_k>, stored as four real matrices (w, x, y, z parts).
template <typename Scalar>
class QOperator {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Quat = Quaternion<Scalar>;

  explicit QOperator(Index dim)
      : parts_{Matrix::Zero(dim, dim), Matrix::Zero(dim, dim), Matrix::Zero(dim, dim),
               Matrix::Zero(dim, dim)} {
    if (dim <= 0) throw ConfigError("QOperator dimension must be positive");
  }
  QOperator(Matrix w, Matrix x, Matrix y, Matrix z)
      : parts_{std::move(w), std::move(x), std::move(y), std::move(z)} {}

  static QOperator Zero(Index dim) { return QOperator(dim); }
  static QOperator Identity(Index dim) { return Real(Matrix::Identity(dim, dim)); }
  /// Operator whose entries are all real.
  static QOperator Real(const Matrix& m) {
    const Index d = m.rows();
    return QOperator(m, Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d));
  }

  Index dim() const { return parts_[0].rows(); }
  const Matrix& part(int c) const { return parts_[c]; }
  Matrix& part(int c) { return parts_[c]; }

  Quat operator()(Index j, Index k) const {
    return {parts_[0](j, k), parts_[1](j, k), parts_[2](j, k), parts_[3](j, k)};
  }
  void set(Index j, Index k, const Quat& q) {
    for (int c = 0; c < 4; ++c) parts_[c](j, k) = q[c];
  }

  /// Leading n x n block.
  QOperator topLeft(Index n) const {
    return QOperator(parts_[0].topLeftCorner(n, n), parts_[1].topLeftCorner(n, n),
                     parts_[2].topLeftCorner(n, n), parts_[3].topLeftCorner(n, n));
  }

  /// Entrywise quaternion modulus.
  Matrix moduli() const {
    return (parts_[0].array().square() + parts_[1].array().square() +
            parts_[2].array().square() + parts_[3].array().square())
        .sqrt()
        .matrix();
  }

  QOperator& operator+=(const QOperator& o) {
    detail::check_dims(dim(), o.dim(), "QOperator +");
    for (int c = 0; c < 4; ++c) parts_[c] += o.parts_[c];
    return *this;
  }
  QOperator& operator-=(const QOperator& o) {
    detail::check_dims(dim(), o.dim(), "QOperator -");
    for (int c = 0; c < 4; ++c) parts_[c] -= o.parts_[c];
    return *this;
  }
  QOperator& operator*=(Scalar s) {
    for (auto& p : parts_) p *= s;
    return *this;
  }
  QOperator operator-() const {
    QOperator out(*this);
    return out *= Scalar(-1);
  }
  friend QOperator operator+(QOperator a, const QOperator& b) { return a += b; }
  friend QOperator operator-(QOperator a, const QOperator& b) { return a -= b; }
  friend QOperator operator*(QOperator a, Scalar s) { return a *= s; }
  friend QOperator operator*(Scalar s, QOperator a) { return a *= s; }

  /// Composition (A B)(j,k) = sum_l A(j,l) B(l,k), quaternion order kept.
  friend QOperator operator*(const QOperator& a, const QOperator& b) {
    detail::check_dims(a.dim(), b.dim(), "compose");
    const Index d = a.dim();
    std::array<bool, 4> az{}, bz{};
    for (int c = 0; c < 4; ++c) {
      az[c] = a.parts_[c].isZero(0);
      bz[c] = b.parts_[c].isZero(0);
    }
    QOperator out(d);
    for (int c = 0; c < 4; ++c) {
      for (const auto& t : detail::kHamilton[c]) {
        if (az[t.lhs] || bz[t.rhs]) continue;
        if (t.sign > 0)
          out.parts_[c].noalias() += a.parts_[t.lhs] * b.parts_[t.rhs];
        else
          out.parts_[c].noalias() -= a.parts_[t.lhs] * b.parts_[t.rhs];
      }
    }
    return out;
  }

 private:
  std::array<Matrix, 4> parts_;
};

using FockVectord = FockVector<double>;
using QOperatord = QOperator<double>;

// ---------------------------------------------------------------- vectors

/// <f|g> = sum_k conj(f_k) g_k.
template <typename Scalar>
Quaternion<Scalar> inner(const FockVector<Scalar>& f, const FockVector<Scalar>& g) {
  detail::check_dims(f.dim(), g.dim(), "inner");
  return pairwise_sum<Quaternion<Scalar>>(f.dim(), [&](Index k) { return conj(f[k]) * g[k]; });
}

template <typename Scalar>
Scalar squared_norm(const FockVector<Scalar>& f) {
  return pairwise_sum<Scalar>(f.dim(), [&](Index k) { return f[k].squaredNorm(); });
}

template <typename Scalar>
Scalar norm(const FockVector<Scalar>& f) {
  return std::sqrt(squared_norm(f));
}

/// Probability mass on levels >= from.
template <typename Scalar>
Scalar tail_mass(const FockVector<Scalar>& f, Index from) {
  if (from >= f.dim()) return 0;
  return pairwise_sum<Scalar>(from, f.dim(), [&](Index k) { return f[k].squaredNorm(); });
}

/// f q (scalars act on the right).
template <typename Scalar>
FockVector<Scalar> right_scale(const FockVector<Scalar>& f, const Quaternion<Scalar>& q) {
  FockVector<Scalar> out(f.dim());
  for (Index k = 0; k < f.dim(); ++k) out.set(k, f[k] * q);
  return out;
}

/// q . f = sum_k Phi_k q <Phi_k|f>, a left product on each coefficient.
template <typename Scalar>
FockVector<Scalar> left_mul(const Quaternion<Scalar>& q, const FockVector<Scalar>& f) {
  FockVector<Scalar> out(f.dim());
  for (Index k = 0; k < f.dim(); ++k) out.set(k, q * f[k]);
  return out;
}

// -------------------------------------------------------------- operators

/// (q . A)(j,k) = q A(j,k).
template <typename Scalar>
QOperator<Scalar> left_mul_op(const Quaternion<Scalar>& q, const QOperator<Scalar>& a) {
  QOperator<Scalar> out(a.dim());
  for (int c = 0; c < 4; ++c)
    for (const auto& t : detail::kHamilton[c])
      if (q[t.lhs] != Scalar(0)) out.part(c) += (t.sign * q[t.lhs]) * a.part(t.rhs);
  return out;
}

/// (A . q)(j,k) = A(j,k) q.
template <typename Scalar>
QOperator<Scalar> right_mul_op(const QOperator<Scalar>& a, const Quaternion<Scalar>& q) {
  QOperator<Scalar> out(a.dim());
  for (int c = 0; c < 4; ++c)
    for (const auto& t : detail::kHamilton[c])
      if (q[t.rhs] != Scalar(0)) out.part(c) += (t.sign * q[t.rhs]) * a.part(t.lhs);
  return out;
}

/// (A f)_j = sum_k A(j,k) f_k.
template <typename Scalar>
FockVector<Scalar> apply(const QOperator<Scalar>& a, const FockVector<Scalar>& f) {
  detail::check_dims(a.dim(), f.dim(), "apply");
  typename FockVector<Scalar>::Coeffs out =
      FockVector<Scalar>::Coeffs::Zero(f.dim(), 4);
  for (int c = 0; c < 4; ++c)
    for (const auto& t : detail::kHamilton[c]) {
      if (t.sign > 0)
        out.col(c).noalias() += a.part(t.lhs) * f.coeffs().col(t.rhs);
      else
        out.col(c).noalias() -= a.part(t.lhs) * f.coeffs().col(t.rhs);
    }
  return FockVector<Scalar>(std::move(out));
}

template <typename Scalar>
QOperator<Scalar> compose(const QOperator<Scalar>& a, const QOperator<Scalar>& b) {
  return a * b;
}

/// A^dagger(j,k) = conj(A(k,j)).
template <typename Scalar>
QOperator<Scalar> adjoint(const QOperator<Scalar>& a) {
  return QOperator<Scalar>(a.part(0).transpose(), -a.part(1).transpose(),
                           -a.part(2).transpose(), -a.part(3).transpose());
}

template <typename Scalar>
QOperator<Scalar> commutator(const QOperator<Scalar>& a, const QOperator<Scalar>& b) {
  return a * b - b * a;
}

/// <f|A|f>.
template <typename Scalar>
Quaternion<Scalar> expectation(const FockVector<Scalar>& f, const QOperator<Scalar>& a) {
  return inner(f, apply(a, f));
}

/// Largest entry modulus of A on the leading n x n block (whole operator
/// when n <= 0).
template <typename Scalar>
Scalar max_abs(const QOperator<Scalar>& a, Index n = 0) {
  if (n <= 0 || n > a.dim()) n = a.dim();
  return a.topLeft(n).moduli().maxCoeff();
}

template <typename Scalar>
Scalar block_distance(const QOperator<Scalar>& a, const QOperator<Scalar>& b, Index n) {
  return max_abs<Scalar>(a - b, n);
}

/// Induced 1-norm bound max_k sum_j |A(j,k)| (submultiplicative).
template <typename Scalar>
Scalar one_norm(const QOperator<Scalar>& a) {
  return a.moduli().colwise().sum().maxCoeff();
}

/// Matrix exponential by scaling and squaring of a Taylor polynomial.
/// The scaled argument has 1-norm <= 1/2; the degree is the smallest one
/// whose remainder bound falls below tol.
template <typename Scalar>
QOperator<Scalar> op_exp(const QOperator<Scalar>& a, Scalar tol = Scalar(1e-17)) {
  constexpr int kMaxDegree = 40;
  constexpr int kMaxSquarings = 64;
  if (!(tol > 0)) throw ConfigError("op_exp tolerance must be positive");
  const Scalar nrm = one_norm(a);
  if (!std::isfinite(nrm)) throw ConvergenceError("op_exp: non-finite operator norm");
  const Index d = a.dim();
  if (nrm == Scalar(0)) return QOperator<Scalar>::Identity(d);

  int squarings = 0;
  if (nrm > Scalar(0.5)) squarings = static_cast<int>(std::ceil(std::log2(nrm / Scalar(0.5))));
  if (squarings > kMaxSquarings) throw ConvergenceError("op_exp: operator norm too large");
  const Scalar theta = nrm / std::ldexp(Scalar(1), squarings);

  // remainder of the degree-m Taylor polynomial: <= theta^{m+1}/(m+1)! / (1 - theta/(m+2))
  int degree = 0;
  Scalar term = 1;
  for (int m = 1; m <= kMaxDegree; ++m) {
    term *= theta / m;  // theta^m / m!
    const Scalar remainder = term * theta / (m + 1) / (1 - theta / (m + 2));
    if (remainder < tol) {
      degree = m;
      break;
    }
  }
  if (degree == 0) throw ConvergenceError("op_exp: Taylor degree cap reached");

  const QOperator<Scalar> scaled = a * std::ldexp(Scalar(1), -squarings);
  const QOperator<Scalar> id = QOperator<Scalar>::Identity(d);
  // Horner: I + B/1 (I + B/2 (I + ... (I + B/m)))
  QOperator<Scalar> acc = id + scaled * (Scalar(1) / degree);
  for (int m = degree - 1; m >= 1; --m) acc = id + (scaled * acc) * (Scalar(1) / m);
  for (int s = 0; s < squarings; ++s) acc = acc * acc;
  return acc;
}

/// Blockwise 2x2 complex embedding: block (j,k) is to_matrix(A(j,k)).
/// Multiplicative and adjoint-compatible; used as an independent oracle.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> embed_complex(
    const QOperator<Scalar>& a) {
  const Index d = a.dim();
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> m(2 * d, 2 * d);
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k) m.template block<2, 2>(2 * j, 2 * k) = to_matrix(a(j, k));
  return m;
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 2> embed_complex(const FockVector<Scalar>& f) {
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 2> m(2 * f.dim(), 2);
  for (Index k = 0; k < f.dim(); ++k) m.template block<2, 2>(2 * k, 0) = to_matrix(f[k]);
  return m;
}

}  // namespace qfock
