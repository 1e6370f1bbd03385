#pragma once

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "sp2/errors.hpp"
#include "sp2/quaternion.hpp"

namespace sp2 {

inline constexpr int kAlgebraDim = 10;

/// Weights (r1, r2) of the left-invariant metric (r1/2)|x|^2 + |y|^2 + (r2/2)|z|^2.
template <typename Scalar>
struct MetricParams {
  Scalar r1;
  Scalar r2;

  MetricParams(Scalar r1_, Scalar r2_) : r1(r1_), r2(r2_) {
    if (!(r1 > 0) || !(r2 > 0)) throw GeometryError("metric weights r1, r2 must be positive");
  }

  /// r1 + r2 <= 2, the regime with nonnegative sectional curvature.
  bool nonneg_curved() const { return r1 + r2 <= Scalar(2); }
  bool bi_invariant() const { return r1 == Scalar(1) && r2 == Scalar(1); }
};

using Metricd = MetricParams<double>;

/// Element (x y; -conj(y) z) of sp(2) with x, z pure imaginary.
template <typename Scalar>
class AlgebraElement {
 public:
  using Quat = Quaternion<Scalar>;
  static constexpr double kRealPartTolerance = 1e-9;

  AlgebraElement() = default;

  /// Stray real parts of x and z are projected out; above tolerance the input is rejected.
  AlgebraElement(const Quat& x, const Quat& y, const Quat& z) : x_(im(x)), y_(y), z_(im(z)) {
    using std::abs;
    discarded_ = abs(re(x)) + abs(re(z));
    if (discarded_ > Scalar(kRealPartTolerance))
      throw InvalidElement("diagonal blocks of an sp(2) element must be pure imaginary");
  }

  static AlgebraElement zero() { return {}; }

  const Quat& x() const { return x_; }
  const Quat& y() const { return y_; }
  const Quat& z() const { return z_; }
  Scalar discarded_real_part() const { return discarded_; }

  AlgebraElement operator+(const AlgebraElement& o) const { return raw(x_ + o.x_, y_ + o.y_, z_ + o.z_); }
  AlgebraElement operator-(const AlgebraElement& o) const { return raw(x_ - o.x_, y_ - o.y_, z_ - o.z_); }
  AlgebraElement operator-() const { return raw(-x_, -y_, -z_); }
  AlgebraElement operator*(Scalar s) const { return raw(x_ * s, y_ * s, z_ * s); }
  AlgebraElement& operator+=(const AlgebraElement& o) { return *this = *this + o; }
  AlgebraElement& operator-=(const AlgebraElement& o) { return *this = *this - o; }

  /// Components as a plain 12-vector (x, y, z blocks in w,x,y,z order).
  Eigen::Matrix<Scalar, 12, 1> raw_coeffs() const {
    Eigen::Matrix<Scalar, 12, 1> v;
    v << x_.coeffs(), y_.coeffs(), z_.coeffs();
    return v;
  }

 private:
  static AlgebraElement raw(const Quat& x, const Quat& y, const Quat& z) {
    AlgebraElement e;
    e.x_ = x;
    e.y_ = y;
    e.z_ = z;
    return e;
  }

  Quat x_{}, y_{}, z_{};
  Scalar discarded_{0};
};

template <typename Scalar>
AlgebraElement<Scalar> operator*(Scalar s, const AlgebraElement<Scalar>& e) {
  return e * s;
}

using Elementd = AlgebraElement<double>;

/// Lie bracket of left-invariant fields, i.e. the matrix commutator.
template <typename Scalar>
AlgebraElement<Scalar> bracket(const AlgebraElement<Scalar>& a, const AlgebraElement<Scalar>& b) {
  const auto& x1 = a.x();
  const auto& y1 = a.y();
  const auto& z1 = a.z();
  const auto& x2 = b.x();
  const auto& y2 = b.y();
  const auto& z2 = b.z();
  return {x1 * x2 - x2 * x1 + y2 * conj(y1) - y1 * conj(y2),
          x1 * y2 - x2 * y1 + y1 * z2 - y2 * z1,
          z1 * z2 - z2 * z1 + conj(y2) * y1 - conj(y1) * y2};
}

/// Left-invariant metric g_r evaluated on two algebra elements.
template <typename Scalar>
Scalar inner_gr(const AlgebraElement<Scalar>& a, const AlgebraElement<Scalar>& b,
                const MetricParams<Scalar>& m) {
  return m.r1 / 2 * inner(a.x(), b.x()) + inner(a.y(), b.y()) + m.r2 / 2 * inner(a.z(), b.z());
}

template <typename Scalar>
Scalar squared_norm_gr(const AlgebraElement<Scalar>& a, const MetricParams<Scalar>& m) {
  return inner_gr(a, a, m);
}

/// Orthonormal frame e_1..e_10 of g_r: three x-directions, four y-directions, three z-directions.
template <typename Scalar>
std::array<AlgebraElement<Scalar>, kAlgebraDim> standard_basis(const MetricParams<Scalar>& m) {
  using std::sqrt;
  using Quat = Quaternion<Scalar>;
  std::array<AlgebraElement<Scalar>, kAlgebraDim> e;
  const Scalar sx = sqrt(Scalar(2) / m.r1);
  const Scalar sz = sqrt(Scalar(2) / m.r2);
  for (int p = 0; p < 3; ++p) e[p] = {Quat::unit(p + 1) * sx, Quat{}, Quat{}};
  for (int p = 0; p < 4; ++p) e[3 + p] = {Quat{}, Quat::unit(p), Quat{}};
  for (int p = 0; p < 3; ++p) e[7 + p] = {Quat{}, Quat{}, Quat::unit(p + 1) * sz};
  return e;
}

/// Coefficients of an element in the standard orthonormal frame.
template <typename Scalar>
Eigen::Matrix<Scalar, kAlgebraDim, 1> frame_coords(const AlgebraElement<Scalar>& a,
                                                   const MetricParams<Scalar>& m) {
  using std::sqrt;
  const Scalar sx = sqrt(m.r1 / 2);
  const Scalar sz = sqrt(m.r2 / 2);
  Eigen::Matrix<Scalar, kAlgebraDim, 1> c;
  c << a.x().x() * sx, a.x().y() * sx, a.x().z() * sx, a.y().w(), a.y().x(), a.y().y(), a.y().z(),
      a.z().x() * sz, a.z().y() * sz, a.z().z() * sz;
  return c;
}

template <typename Scalar, typename Derived>
AlgebraElement<Scalar> from_frame_coords(const Eigen::MatrixBase<Derived>& c,
                                         const MetricParams<Scalar>& m) {
  using std::sqrt;
  using Quat = Quaternion<Scalar>;
  const Scalar sx = sqrt(Scalar(2) / m.r1);
  const Scalar sz = sqrt(Scalar(2) / m.r2);
  return {Quat(0, c(0) * sx, c(1) * sx, c(2) * sx), Quat(c(3), c(4), c(5), c(6)),
          Quat(0, c(7) * sz, c(8) * sz, c(9) * sz)};
}

/// The six quaternions in which the bracket and the curvature numerator are expressed.
template <typename Scalar>
struct BracketInvariants {
  Quaternion<Scalar> alpha1, beta1, gamma1;
  Quaternion<Scalar> alpha2, beta2, gamma2;

  /// Reassembles the bracket: (alpha1 + beta1, gamma1 + gamma2, alpha2 + beta2).
  AlgebraElement<Scalar> bracket() const {
    return {alpha1 + beta1, gamma1 + gamma2, alpha2 + beta2};
  }
};

template <typename Scalar>
BracketInvariants<Scalar> abg(const AlgebraElement<Scalar>& a, const AlgebraElement<Scalar>& b) {
  const auto& x1 = a.x();
  const auto& y1 = a.y();
  const auto& z1 = a.z();
  const auto& x2 = b.x();
  const auto& y2 = b.y();
  const auto& z2 = b.z();
  BracketInvariants<Scalar> r;
  r.alpha1 = y2 * conj(y1) - y1 * conj(y2);
  r.beta1 = x1 * x2 - x2 * x1;
  r.gamma1 = x1 * y2 - x2 * y1;
  r.alpha2 = conj(y2) * y1 - conj(y1) * y2;
  r.beta2 = z1 * z2 - z2 * z1;
  r.gamma2 = y1 * z2 - y2 * z1;
  return r;
}

/// Quaternionic 2x2 matrix (a b; c d).
template <typename Scalar>
struct QuatMatrix {
  using Quat = Quaternion<Scalar>;
  Quat a, b, c, d;

  static QuatMatrix identity() { return {Quat::one(), Quat{}, Quat{}, Quat::one()}; }
  static QuatMatrix diag(const Quat& p, const Quat& q) { return {p, Quat{}, Quat{}, q}; }
  static QuatMatrix from_algebra(const AlgebraElement<Scalar>& e) {
    return {e.x(), e.y(), -conj(e.y()), e.z()};
  }

  QuatMatrix operator*(const QuatMatrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  QuatMatrix operator+(const QuatMatrix& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  QuatMatrix operator-(const QuatMatrix& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  QuatMatrix operator*(Scalar s) const { return {a * s, b * s, c * s, d * s}; }

  /// Conjugate transpose.
  QuatMatrix adjoint() const { return {conj(a), conj(c), conj(b), conj(d)}; }

  Scalar frobenius_norm() const {
    using std::sqrt;
    return sqrt(squared_norm(a) + squared_norm(b) + squared_norm(c) + squared_norm(d));
  }

  /// Reads (x, y, z) = (a, b, d); meaningful when the matrix lies in sp(2).
  AlgebraElement<Scalar> to_algebra() const { return {a, b, d}; }
};

/// Element of Sp(2): Q Q^* = I.
template <typename Scalar>
class Sp2Matrix {
 public:
  using Quat = Quaternion<Scalar>;
  static constexpr double kUnitaryTolerance = 1e-9;

  Sp2Matrix() : q_(QuatMatrix<Scalar>::identity()) {}

  explicit Sp2Matrix(const QuatMatrix<Scalar>& q) : q_(q) {
    if (unitary_defect(q_) > Scalar(kUnitaryTolerance))
      throw GeometryError("matrix is not in Sp(2): Q Q^* differs from I");
  }

  static Sp2Matrix identity() { return {}; }
  static Sp2Matrix diag(const Quat& p, const Quat& q) { return Sp2Matrix(QuatMatrix<Scalar>::diag(p, q)); }

  /// Gram-Schmidt on the columns under the quaternionic Hermitian form.
  static Sp2Matrix reorthonormalized(const QuatMatrix<Scalar>& m) {
    using std::sqrt;
    Quat a = m.a, c = m.c;
    const Scalar n1 = sqrt(squared_norm(a) + squared_norm(c));
    if (!(n1 > 0)) throw DegenerateFrame("first column vanishes");
    a = a / n1;
    c = c / n1;
    const Quat h = conj(a) * m.b + conj(c) * m.d;
    Quat b = m.b - a * h;
    Quat d = m.d - c * h;
    const Scalar n2 = sqrt(squared_norm(b) + squared_norm(d));
    if (!(n2 > 0)) throw DegenerateFrame("columns are quaternionic-linearly dependent");
    return Sp2Matrix(QuatMatrix<Scalar>{a, b / n2, c, d / n2});
  }

  static Scalar unitary_defect(const QuatMatrix<Scalar>& q) {
    return (q * q.adjoint() - QuatMatrix<Scalar>::identity()).frobenius_norm();
  }

  const QuatMatrix<Scalar>& matrix() const { return q_; }
  Sp2Matrix adjoint() const { return Sp2Matrix(q_.adjoint()); }
  Sp2Matrix operator*(const Sp2Matrix& o) const { return Sp2Matrix(q_ * o.q_); }

 private:
  QuatMatrix<Scalar> q_;
};

using Sp2d = Sp2Matrix<double>;

}  // namespace sp2
