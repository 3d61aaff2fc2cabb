#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>

#include "grassact/errors.hpp"

namespace grassact {

/// Arbitrary-precision signed integer.
///
/// Thin value wrapper around boost::multiprecision::cpp_int exposing only
/// plain operators.  The wrapper exists so the type can serve as an Eigen
/// scalar: cpp_int's own expression-template operators collide with Eigen's
/// during overload resolution, a plain class with non-template operators
/// does not.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v) : v_(v) {}  // NOLINT: implicit by design, Scalar(0) etc.
  explicit BigInt(const std::string& decimal) : v_(decimal) {}

  friend BigInt operator+(const BigInt& a, const BigInt& b) { return BigInt(a.v_ + b.v_); }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return BigInt(a.v_ - b.v_); }
  friend BigInt operator*(const BigInt& a, const BigInt& b) { return BigInt(a.v_ * b.v_); }
  /// Integer division, truncating toward zero.  Division by zero throws.
  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    if (b.v_.is_zero()) throw SemanticError("division by zero");
    return BigInt(a.v_ / b.v_);
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    if (b.v_.is_zero()) throw SemanticError("division by zero");
    return BigInt(a.v_ % b.v_);
  }
  BigInt operator-() const { return BigInt(-v_); }
  BigInt operator+() const { return *this; }

  BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
  BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
  BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }
  BigInt& operator/=(const BigInt& o) { return *this = *this / o; }

  friend bool operator==(const BigInt& a, const BigInt& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  bool is_zero() const { return v_.is_zero(); }
  /// -1, 0 or +1.
  int sign() const { return v_.sign(); }
  BigInt abs() const { return v_ < 0 ? BigInt(-v_) : *this; }

  bool fits_int64() const {
    return v_ >= (std::numeric_limits<std::int64_t>::min)() &&
           v_ <= (std::numeric_limits<std::int64_t>::max)();
  }
  std::int64_t to_int64() const {
    if (!fits_int64()) throw SemanticError("value does not fit in 64 bits: " + to_string());
    return static_cast<std::int64_t>(v_);
  }

  std::string to_string() const { return v_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const BigInt& x) { return os << x.v_; }

 private:
  explicit BigInt(boost::multiprecision::cpp_int v) : v_(std::move(v)) {}
  boost::multiprecision::cpp_int v_;
};

inline BigInt abs(const BigInt& x) { return x.abs(); }

inline std::string scalar_to_string(const BigInt& x) { return x.to_string(); }

template <typename T>
  requires std::is_integral_v<T>
std::string scalar_to_string(T x) {
  return std::to_string(x);
}

/// x^e by repeated squaring, e >= 0.
inline BigInt ipow(BigInt x, unsigned e) {
  BigInt acc(1);
  while (e) {
    if (e & 1U) acc *= x;
    x *= x;
    e >>= 1U;
  }
  return acc;
}

/// Parses a decimal integer with optional leading sign.  Throws ParseError.
inline BigInt bigint_from_decimal(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer literal");
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size()) throw ParseError("integer literal '" + s + "' has no digits");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw ParseError("invalid character '" + std::string(1, s[i]) + "' in integer literal '" +
                       s + "'");
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Exact determinant by the Bareiss fraction-free algorithm.
///
/// Works over any commutative ring with exact division (interior divisions
/// are always exact); O(n^3) ring operations, intermediate entries stay the
/// size of minors.  Eigen's built-in LU determinant divides inexactly over
/// integer scalars, so it cannot be used here.
template <typename Scalar>
Scalar exact_determinant(MatrixX<Scalar> m) {
  if (m.rows() != m.cols()) throw SemanticError("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == Scalar(0)) {
      Eigen::Index pivot = -1;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        if (!(m(i, k) == Scalar(0))) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) return Scalar(0);
      m.row(k).swap(m.row(pivot));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

template <typename Scalar>
bool is_identity_matrix(const MatrixX<Scalar>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!(m(i, j) == (i == j ? Scalar(1) : Scalar(0)))) return false;
  return true;
}

template <typename Scalar>
bool matrices_equal(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

}  // namespace grassact

namespace Eigen {

template <>
struct NumTraits<grassact::BigInt> : GenericNumTraits<grassact::BigInt> {
  using Real = grassact::BigInt;
  using NonInteger = grassact::BigInt;
  using Nested = grassact::BigInt;
  using Literal = grassact::BigInt;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 60,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
