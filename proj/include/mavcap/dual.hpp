#ifndef MAVCAP_DUAL_HPP_
#define MAVCAP_DUAL_HPP_

#include <cmath>
#include <iosfwd>
#include <ostream>

#include <Eigen/Core>

namespace mavcap {

// Forward-mode scalar: carries one directional derivative alongside the
// value. Used to differentiate the planner's shooting rollout exactly,
// one seed direction per pass.
struct Dual {
  double val = 0.0;
  double dot = 0.0;

  Dual() = default;
  Dual(double v) : val(v) {}  // NOLINT: implicit by design
  Dual(double v, double d) : val(v), dot(d) {}

  Dual& operator+=(const Dual& r) {
    val += r.val;
    dot += r.dot;
    return *this;
  }
  Dual& operator-=(const Dual& r) {
    val -= r.val;
    dot -= r.dot;
    return *this;
  }
  Dual& operator*=(const Dual& r) {
    dot = dot * r.val + val * r.dot;
    val *= r.val;
    return *this;
  }
  Dual& operator/=(const Dual& r) {
    dot = (dot * r.val - val * r.dot) / (r.val * r.val);
    val /= r.val;
    return *this;
  }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.val, -a.dot}; }
inline Dual operator+(const Dual& a) { return a; }

inline bool operator<(const Dual& a, const Dual& b) { return a.val < b.val; }
inline bool operator>(const Dual& a, const Dual& b) { return a.val > b.val; }
inline bool operator<=(const Dual& a, const Dual& b) { return a.val <= b.val; }
inline bool operator>=(const Dual& a, const Dual& b) { return a.val >= b.val; }
inline bool operator==(const Dual& a, const Dual& b) { return a.val == b.val; }
inline bool operator!=(const Dual& a, const Dual& b) { return a.val != b.val; }

inline Dual sqrt(const Dual& x) {
  const double s = std::sqrt(x.val);
  return {s, x.dot / (2.0 * s)};
}
inline Dual abs(const Dual& x) { return x.val < 0.0 ? -x : x; }
inline Dual sin(const Dual& x) { return {std::sin(x.val), x.dot * std::cos(x.val)}; }
inline Dual cos(const Dual& x) { return {std::cos(x.val), -x.dot * std::sin(x.val)}; }
inline Dual exp(const Dual& x) {
  const double e = std::exp(x.val);
  return {e, x.dot * e};
}
inline Dual log(const Dual& x) { return {std::log(x.val), x.dot / x.val}; }

inline bool isfinite(const Dual& x) { return std::isfinite(x.val) && std::isfinite(x.dot); }

inline std::ostream& operator<<(std::ostream& os, const Dual& x) {
  return os << x.val << "+" << x.dot << "e";
}

// Uniform accessors so templated code can extract plain doubles.
inline double value(double x) { return x; }
inline double value(const Dual& x) { return x.val; }

}  // namespace mavcap

namespace Eigen {

template <>
struct NumTraits<mavcap::Dual> : NumTraits<double> {
  typedef mavcap::Dual Real;
  typedef mavcap::Dual NonInteger;
  typedef mavcap::Dual Nested;
  typedef mavcap::Dual Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<mavcap::Dual, double, BinaryOp> {
  typedef mavcap::Dual ReturnType;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<double, mavcap::Dual, BinaryOp> {
  typedef mavcap::Dual ReturnType;
};

}  // namespace Eigen

#endif  // MAVCAP_DUAL_HPP_
