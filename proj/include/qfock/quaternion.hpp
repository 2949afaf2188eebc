#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>

#include "qfock/errors.hpp"

namespace qfock {

/// Real quaternion w + x i + y j + z k with Hamilton products
/// (ij = k, jk = i, ki = j).
template <typename Scalar>
class Quaternion {
 public:
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

  constexpr Quaternion() = default;
  constexpr Quaternion(Scalar w, Scalar x = 0, Scalar y = 0, Scalar z = 0)  // NOLINT
      : w_(w), x_(x), y_(y), z_(z) {}
  Quaternion(Scalar w, const Vector3& v) : w_(w), x_(v(0)), y_(v(1)), z_(v(2)) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr Scalar w() const { return w_; }
  constexpr Scalar x() const { return x_; }
  constexpr Scalar y() const { return y_; }
  constexpr Scalar z() const { return z_; }
  constexpr Scalar real() const { return w_; }
  Vector3 imag() const { return Vector3(x_, y_, z_); }
  constexpr Scalar operator[](int c) const {
    return c == 0 ? w_ : c == 1 ? x_ : c == 2 ? y_ : z_;
  }

  constexpr Quaternion conj() const { return {w_, -x_, -y_, -z_}; }
  constexpr Scalar squaredNorm() const { return w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_; }
  Scalar norm() const { return std::sqrt(squaredNorm()); }
  Scalar imagNorm() const { return std::sqrt(x_ * x_ + y_ * y_ + z_ * z_); }
  Quaternion inverse() const {
    const Scalar n2 = squaredNorm();
    if (n2 == Scalar(0)) throw ZeroInputError("inverse of the zero quaternion");
    return conj() / n2;
  }
  bool isReal() const { return x_ == 0 && y_ == 0 && z_ == 0; }

  constexpr Quaternion operator-() const { return {-w_, -x_, -y_, -z_}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w_ += o.w_; x_ += o.x_; y_ += o.y_; z_ += o.z_;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w_ -= o.w_; x_ -= o.x_; y_ -= o.y_; z_ -= o.z_;
    return *this;
  }
  constexpr Quaternion& operator*=(Scalar s) {
    w_ *= s; x_ *= s; y_ *= s; z_ *= s;
    return *this;
  }
  constexpr Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator*(Quaternion a, Scalar s) { return a *= s; }
  friend constexpr Quaternion operator*(Scalar s, Quaternion a) { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, Scalar s) { return a *= (Scalar(1) / s); }
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_,
            a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_,
            a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_,
            a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_};
  }
  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w_ << ", " << q.x_ << ", " << q.y_ << ", " << q.z_ << ')';
  }

 private:
  Scalar w_{0}, x_{0}, y_{0}, z_{0};
};

using Quaterniond = Quaternion<double>;

template <typename Scalar>
using Mat2C = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
constexpr Quaternion<Scalar> conj(const Quaternion<Scalar>& q) { return q.conj(); }

template <typename Scalar>
Scalar abs(const Quaternion<Scalar>& q) { return q.norm(); }

/// Euclidean distance |a - b|.
template <typename Scalar>
Scalar distance(const Quaternion<Scalar>& a, const Quaternion<Scalar>& b) {
  return (a - b).norm();
}

template <typename Scalar>
Quaternion<Scalar> pow(Quaternion<Scalar> q, int n) {
  Quaternion<Scalar> out(1);
  for (; n > 0; n >>= 1, q = q * q)
    if (n & 1) out = out * q;
  return out;
}

/// 2x2 complex representation
///   [ w + i z   -y + i x ]
///   [ y + i x    w - i z ]
/// so that i -> sqrt(-1) sigma_1, j -> -sqrt(-1) sigma_2, k -> sqrt(-1) sigma_3.
template <typename Scalar>
Mat2C<Scalar> to_matrix(const Quaternion<Scalar>& q) {
  using C = std::complex<Scalar>;
  Mat2C<Scalar> m;
  m << C(q.w(), q.z()), C(-q.y(), q.x()),
       C(q.y(), q.x()), C(q.w(), -q.z());
  return m;
}

/// Inverse of to_matrix. Throws RepresentationError when m is further than
/// `tol` (entrywise) from the quaternion pattern.
template <typename Scalar>
Quaternion<Scalar> from_matrix(const Mat2C<Scalar>& m, Scalar tol = Scalar(1e-12)) {
  const Quaternion<Scalar> q(m(0, 0).real(), m(0, 1).imag(), -m(0, 1).real(), m(0, 0).imag());
  const Scalar off = (to_matrix(q) - m).cwiseAbs().maxCoeff();
  if (!(off <= tol)) throw RepresentationError("matrix is not of quaternion form");
  return q;
}

/// Polar coordinates
///   w = r cos(theta), x = r sin(theta) sin(phi) cos(psi),
///   y = r sin(theta) sin(phi) sin(psi), z = r sin(theta) cos(phi).
/// polar() returns theta in [0, pi], phi in [0, pi], psi in [0, 2pi).
template <typename Scalar>
struct PolarForm {
  Scalar r{0};
  Scalar theta{0};
  Scalar phi{0};
  Scalar psi{0};
};

template <typename Scalar>
PolarForm<Scalar> polar(const Quaternion<Scalar>& q) {
  PolarForm<Scalar> pf;
  pf.r = q.norm();
  if (pf.r == Scalar(0)) return pf;
  const Scalar v = q.imagNorm();
  pf.theta = std::atan2(v, q.w());
  if (v == Scalar(0)) return pf;
  const Scalar nz = std::clamp(q.z() / v, Scalar(-1), Scalar(1));
  pf.phi = std::acos(nz);
  if (q.x() != Scalar(0) || q.y() != Scalar(0)) {
    Scalar psi = std::atan2(q.y(), q.x());
    if (psi < 0) psi += 2 * std::numbers::pi_v<Scalar>;
    if (psi >= 2 * std::numbers::pi_v<Scalar>) psi = 0;
    pf.psi = psi;
  }
  return pf;
}

template <typename Scalar>
Quaternion<Scalar> unpolar(const PolarForm<Scalar>& pf) {
  const Scalar st = std::sin(pf.theta), sp = std::sin(pf.phi);
  return {pf.r * std::cos(pf.theta), pf.r * st * sp * std::cos(pf.psi),
          pf.r * st * sp * std::sin(pf.psi), pf.r * st * std::cos(pf.phi)};
}

/// sigma(n) = [[cos phi, sin phi e^{i psi}], [sin phi e^{-i psi}, -cos phi]].
template <typename Scalar>
Mat2C<Scalar> sigma_n(Scalar phi, Scalar psi) {
  using C = std::complex<Scalar>;
  Mat2C<Scalar> m;
  m << C(std::cos(phi)), std::sin(phi) * std::polar(Scalar(1), psi),
       std::sin(phi) * std::polar(Scalar(1), -psi), C(-std::cos(phi));
  return m;
}

/// Unit pure quaternion I (I^2 = -1) spanning the slice C_I = R + I R.
template <typename Scalar>
class SliceAxis {
 public:
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

  SliceAxis() : dir_(1, 0, 0) {}
  /// Normalizes (ax, ay, az); throws ZeroInputError for the zero vector.
  SliceAxis(Scalar ax, Scalar ay, Scalar az) : dir_(ax, ay, az) {
    const Scalar n = dir_.norm();
    if (!(n > 0)) throw ZeroInputError("slice axis must be a nonzero vector");
    dir_ /= n;
  }
  explicit SliceAxis(const Vector3& v) : SliceAxis(v(0), v(1), v(2)) {}

  static SliceAxis i() { return {1, 0, 0}; }
  static SliceAxis j() { return {0, 1, 0}; }
  static SliceAxis k() { return {0, 0, 1}; }

  const Vector3& direction() const { return dir_; }
  Quaternion<Scalar> unit() const { return Quaternion<Scalar>(0, dir_); }
  /// x + I y.
  Quaternion<Scalar> point(Scalar x, Scalar y) const { return Quaternion<Scalar>(x, y * dir_); }
  /// e^{I angle}.
  Quaternion<Scalar> phase(Scalar angle) const { return point(std::cos(angle), std::sin(angle)); }
  /// Largest component of q orthogonal to the slice.
  Scalar off_slice(const Quaternion<Scalar>& q) const {
    const Vector3 v = q.imag();
    return (v - dir_.dot(v) * dir_).cwiseAbs().maxCoeff();
  }

 private:
  Vector3 dir_;
};

/// q = x + I y with y >= 0. For real q, `axis_defined` is false and `axis`
/// must not be used.
template <typename Scalar>
struct SliceDecomposition {
  Scalar x{0};
  Scalar y{0};
  SliceAxis<Scalar> axis;
  bool axis_defined{false};
};

template <typename Scalar>
SliceDecomposition<Scalar> slice_decompose(const Quaternion<Scalar>& q) {
  SliceDecomposition<Scalar> out;
  out.x = q.w();
  out.y = q.imagNorm();
  if (out.y > 0) {
    out.axis = SliceAxis<Scalar>(q.imag());
    out.axis_defined = true;
  }
  return out;
}

/// exp(x + I y) = e^x (cos y + I sin y).
template <typename Scalar>
Quaternion<Scalar> exp_q(const Quaternion<Scalar>& q) {
  const Scalar ex = std::exp(q.w());
  const Scalar y = q.imagNorm();
  if (y == Scalar(0)) return Quaternion<Scalar>(ex);
  const Scalar s = ex * std::sin(y) / y;
  return {ex * std::cos(y), s * q.x(), s * q.y(), s * q.z()};
}

/// q / |q|, the quaternion realizing e^{i theta sigma(n)} of the polar form.
template <typename Scalar>
Quaternion<Scalar> unit_phase(const Quaternion<Scalar>& q) {
  const Scalar n = q.norm();
  if (n == Scalar(0)) throw ZeroInputError("unit_phase of the zero quaternion");
  return q / n;
}

/// sum_m p^m q^m / m!, truncated once the majorant (|p||q|)^m / m! drops
/// below tol; at most 500 terms.
template <typename Scalar>
Quaternion<Scalar> star_exp(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q,
                            Scalar tol = Scalar(1e-17)) {
  if (!(tol > 0)) throw ConfigError("star_exp tolerance must be positive");
  const Scalar pq = p.norm() * q.norm();
  Quaternion<Scalar> sum(1), pm(1), qm(1);
  Scalar bound = 1, inv_fact = 1;
  for (int m = 1; m <= 500; ++m) {
    bound *= pq / m;
    if (bound < tol) break;
    pm = pm * p;
    qm = qm * q;
    inv_fact /= m;
    sum += (pm * qm) * inv_fact;
  }
  return sum;
}

/// Principal square root inside the slice of q: angle halved, so the result
/// has nonnegative real part. For negative real q the root points along
/// `fallback` (the +I direction of the caller's slice).
template <typename Scalar>
Quaternion<Scalar> slice_sqrt(const Quaternion<Scalar>& q,
                              const SliceAxis<Scalar>& fallback = SliceAxis<Scalar>::i()) {
  const auto sd = slice_decompose(q);
  const Scalar rho = q.norm();
  if (rho == Scalar(0)) return {};
  const SliceAxis<Scalar> axis = sd.axis_defined ? sd.axis : fallback;
  const Scalar angle = std::atan2(sd.y, sd.x);  // in [0, pi]
  return axis.point(std::sqrt(rho) * std::cos(angle / 2), std::sqrt(rho) * std::sin(angle / 2));
}

}  // namespace qfock
