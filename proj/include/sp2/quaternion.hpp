#pragma once

#include <cmath>
#include <ostream>

#include <Eigen/Core>

namespace sp2 {

/// Real quaternion w + x i + y j + z k with the Hamilton convention ij = k.
template <typename Scalar>
class Quaternion {
 public:
  using Coeffs = Eigen::Matrix<Scalar, 4, 1>;

  constexpr Quaternion() : w_(0), x_(0), y_(0), z_(0) {}
  constexpr Quaternion(Scalar w, Scalar x, Scalar y, Scalar z) : w_(w), x_(x), y_(y), z_(z) {}
  explicit Quaternion(const Coeffs& c) : w_(c(0)), x_(c(1)), y_(c(2)), z_(c(3)) {}

  static constexpr Quaternion real(Scalar w) { return {w, 0, 0, 0}; }
  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  /// Unit basis element 1, i, j, k for index 0..3.
  static constexpr Quaternion unit(int index) {
    return {index == 0 ? Scalar(1) : Scalar(0), index == 1 ? Scalar(1) : Scalar(0),
            index == 2 ? Scalar(1) : Scalar(0), index == 3 ? Scalar(1) : Scalar(0)};
  }

  constexpr Scalar w() const { return w_; }
  constexpr Scalar x() const { return x_; }
  constexpr Scalar y() const { return y_; }
  constexpr Scalar z() const { return z_; }

  Coeffs coeffs() const { return Coeffs(w_, x_, y_, z_); }

  constexpr Scalar operator[](int index) const {
    return index == 0 ? w_ : index == 1 ? x_ : index == 2 ? y_ : z_;
  }

  constexpr Quaternion operator+(const Quaternion& o) const {
    return {w_ + o.w_, x_ + o.x_, y_ + o.y_, z_ + o.z_};
  }
  constexpr Quaternion operator-(const Quaternion& o) const {
    return {w_ - o.w_, x_ - o.x_, y_ - o.y_, z_ - o.z_};
  }
  constexpr Quaternion operator-() const { return {-w_, -x_, -y_, -z_}; }

  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w_ * o.w_ - x_ * o.x_ - y_ * o.y_ - z_ * o.z_,
            w_ * o.x_ + x_ * o.w_ + y_ * o.z_ - z_ * o.y_,
            w_ * o.y_ - x_ * o.z_ + y_ * o.w_ + z_ * o.x_,
            w_ * o.z_ + x_ * o.y_ - y_ * o.x_ + z_ * o.w_};
  }
  constexpr Quaternion operator*(Scalar s) const { return {w_ * s, x_ * s, y_ * s, z_ * s}; }
  constexpr Quaternion operator/(Scalar s) const { return {w_ / s, x_ / s, y_ / s, z_ / s}; }

  Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
  Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
  Quaternion& operator*=(Scalar s) { return *this = *this * s; }

  constexpr bool operator==(const Quaternion&) const = default;

 private:
  Scalar w_, x_, y_, z_;
};

template <typename Scalar>
constexpr Quaternion<Scalar> operator*(Scalar s, const Quaternion<Scalar>& q) {
  return q * s;
}

template <typename Scalar>
constexpr Quaternion<Scalar> conj(const Quaternion<Scalar>& q) {
  return {q.w(), -q.x(), -q.y(), -q.z()};
}

template <typename Scalar>
constexpr Scalar re(const Quaternion<Scalar>& q) {
  return q.w();
}

template <typename Scalar>
constexpr Quaternion<Scalar> im(const Quaternion<Scalar>& q) {
  return {0, q.x(), q.y(), q.z()};
}

/// Euclidean inner product on R^4, equal to Re(p conj(q)).
template <typename Scalar>
constexpr Scalar inner(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return p.w() * q.w() + p.x() * q.x() + p.y() * q.y() + p.z() * q.z();
}

template <typename Scalar>
constexpr Scalar squared_norm(const Quaternion<Scalar>& q) {
  return inner(q, q);
}

template <typename Scalar>
Scalar norm(const Quaternion<Scalar>& q) {
  using std::sqrt;
  return sqrt(squared_norm(q));
}

/// Commutator pq - qp.
template <typename Scalar>
constexpr Quaternion<Scalar> commutator(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return p * q - q * p;
}

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const Quaternion<Scalar>& q) {
  return os << '(' << q.w() << ", " << q.x() << ", " << q.y() << ", " << q.z() << ')';
}

using Quatd = Quaternion<double>;

}  // namespace sp2
